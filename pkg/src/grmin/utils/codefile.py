# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""GRCODE/1 generator files and function-table JSON files.

A GRCODE file is line oriented::

    GRCODE 1
    GR p=2 n=2 ell=1
    m=2 k=6
    col: 1|0
    ...

Each ``col:`` line holds the m entries of one generator column separated by
``|``; an entry is its ell coefficients separated by commas, constant first.
Serialization is canonical, so writing a parsed file reproduces its bytes.
"""

import json
import re
from pathlib import Path
from typing import Any, Optional, Union

from loguru import logger

from ..config.constants import DEFAULT_RING_TABLE_CAP, GRCODE_MAGIC, RING_DESCRIPTOR_PREFIX
from ..core.codes import CodeError, GeneratorMultiset
from ..core.functions import FunctionTable, FunctionTableError
from ..core.linalg import LinalgError
from ..core.ring import RingContext, RingError, make_ring


class CodeFileError(Exception):
    """Base exception for code and function files."""

    pass


class CodeFileFormatError(CodeFileError):
    """Raised when a file does not follow its format."""

    pass


class RingHeaderMismatchError(CodeFileError):
    """Raised when a file's ring differs from the expected ring."""

    pass


_DESCRIPTOR = re.compile(
    rf"^{RING_DESCRIPTOR_PREFIX} p=(\d+) n=(\d+) ell=(\d+)(?: h=(\d+(?:,\d+)*))?$"
)
_SHAPE = re.compile(r"^m=(\d+) k=(\d+)$")
_COLUMN_PREFIX = "col: "


def parse_ring_descriptor(line: str) -> tuple[int, int, int, Optional[list[int]]]:
    """Split ``GR p=.. n=.. ell=.. [h=..]`` into (p, n, ell, h).

    Raises:
        CodeFileFormatError: If the line is not a descriptor
    """
    match = _DESCRIPTOR.match(line.strip())
    if not match:
        raise CodeFileFormatError(f"Invalid ring descriptor: {line!r}")
    p, n, ell = (int(g) for g in match.groups()[:3])
    h = [int(c) for c in match.group(4).split(",")] if match.group(4) else None
    return p, n, ell, h


def ring_from_descriptor(line: str, table_cap: int = DEFAULT_RING_TABLE_CAP) -> RingContext:
    """Build the ring named by a descriptor line.

    Raises:
        CodeFileFormatError: If the line is malformed or names an invalid ring
    """
    p, n, ell, h = parse_ring_descriptor(line)
    try:
        return make_ring(p, n, ell, h, table_cap=table_cap)
    except RingError as e:
        raise CodeFileFormatError(f"Descriptor names an invalid ring: {e}") from e


def dumps_code(generators: GeneratorMultiset) -> str:
    """Serialize generator columns in GRCODE/1."""
    ctx = generators.ctx
    lines = [GRCODE_MAGIC, ctx.descriptor(), f"m={generators.m} k={generators.k}"]
    for col in generators.values:
        lines.append(_COLUMN_PREFIX + "|".join(ctx.format_index(int(x)) for x in col))
    return "\n".join(lines) + "\n"


def loads_code(
    text: str,
    expected: Optional[RingContext] = None,
    table_cap: int = DEFAULT_RING_TABLE_CAP,
) -> GeneratorMultiset:
    """Parse GRCODE/1 text.

    Args:
        text: File contents
        expected: Ring the header must name, if any
        table_cap: Ring table cap used when building the header's ring

    Raises:
        CodeFileFormatError: On any deviation from the format
        RingHeaderMismatchError: If the header ring differs from ``expected``
    """
    if not text.endswith("\n"):
        raise CodeFileFormatError("File must end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) < 3 or lines[0] != GRCODE_MAGIC:
        raise CodeFileFormatError(f"Missing {GRCODE_MAGIC!r} header")

    ctx = ring_from_descriptor(lines[1], table_cap)
    if expected is not None and ctx != expected:
        raise RingHeaderMismatchError(
            f"File ring {ctx.descriptor()} differs from {expected.descriptor()}"
        )

    shape = _SHAPE.match(lines[2])
    if not shape:
        raise CodeFileFormatError(f"Invalid shape line: {lines[2]!r}")
    m, k = int(shape.group(1)), int(shape.group(2))
    body = lines[3:]
    if len(body) != k:
        raise CodeFileFormatError(f"Header announces k={k} columns, found {len(body)}")

    columns = []
    for number, line in enumerate(body, start=4):
        if not line.startswith(_COLUMN_PREFIX):
            raise CodeFileFormatError(f"Line {number}: expected 'col: ...'")
        entries = line[len(_COLUMN_PREFIX) :].split("|")
        if len(entries) != m:
            raise CodeFileFormatError(f"Line {number}: expected {m} entries, got {len(entries)}")
        try:
            columns.append([ctx.from_coeffs([int(c) for c in e.split(",")]) for e in entries])
        except (RingError, ValueError) as e:
            raise CodeFileFormatError(f"Line {number}: {e}") from e

    try:
        generators = GeneratorMultiset(ctx, columns)
    except (CodeError, LinalgError) as e:
        raise CodeFileFormatError(str(e)) from e
    if dumps_code(generators) != text:
        raise CodeFileFormatError("File is not in canonical form")
    return generators


def dump_code(generators: GeneratorMultiset, file_path: Union[str, Path]) -> Path:
    """Write a GRCODE/1 file, creating parent directories."""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_code(generators), encoding="utf-8", newline="\n")
    logger.debug(f"Wrote [{generators.k},{generators.m}] code to {path}")
    return path


def load_code(
    file_path: Union[str, Path],
    expected: Optional[RingContext] = None,
    table_cap: int = DEFAULT_RING_TABLE_CAP,
) -> GeneratorMultiset:
    """Read a GRCODE/1 file.

    Raises:
        CodeFileError: If the file cannot be read or parsed
    """
    path = Path(file_path)
    try:
        with open(path, encoding="utf-8", newline="") as f:
            text = f.read()
    except OSError as e:
        raise CodeFileError(f"Cannot read {path}: {e}") from e
    generators = loads_code(text, expected, table_cap)
    logger.debug(f"Read [{generators.k},{generators.m}] code from {path}")
    return generators


def dump_function(f: FunctionTable, file_path: Union[str, Path]) -> Path:
    """Write a function table as JSON."""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(f.to_dict(), indent=2) + "\n", encoding="utf-8")
    return path


def load_function(
    file_path: Union[str, Path],
    expected: Optional[RingContext] = None,
    table_cap: int = DEFAULT_RING_TABLE_CAP,
) -> FunctionTable:
    """Read a function table written by :func:`dump_function`.

    Raises:
        CodeFileFormatError: If the JSON or the table description is invalid
        RingHeaderMismatchError: If the ring differs from ``expected``
    """
    path = Path(file_path)
    try:
        data: Any = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CodeFileFormatError(f"Cannot read function file {path}: {e}") from e
    if not isinstance(data, dict) or "ring" not in data:
        raise CodeFileFormatError("Function file without a ring descriptor")

    ctx = ring_from_descriptor(str(data["ring"]), table_cap)
    if expected is not None and ctx != expected:
        raise RingHeaderMismatchError(
            f"Function ring {ctx.descriptor()} differs from {expected.descriptor()}"
        )
    try:
        return FunctionTable.from_dict(ctx, data)
    except FunctionTableError as e:
        raise CodeFileFormatError(str(e)) from e
