# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Tests for GRCODE files and function-table files."""

import json

import numpy as np
import pytest

from grmin.core.codes import GeneratorMultiset
from grmin.core.constructions import lambda0
from grmin.core.functions import FunctionTable, canonical_f
from grmin.core.ring import make_ring
from grmin.utils.codefile import (
    CodeFileError,
    CodeFileFormatError,
    RingHeaderMismatchError,
    dump_code,
    dump_function,
    dumps_code,
    load_code,
    load_function,
    loads_code,
    parse_ring_descriptor,
)

Z4_LAMBDA0 = (
    "GRCODE 1\n"
    "GR p=2 n=2 ell=1\n"
    "m=2 k=6\n"
    "col: 1|0\n"
    "col: 0|1\n"
    "col: 1|1\n"
    "col: 1|3\n"
    "col: 1|2\n"
    "col: 2|1\n"
)


@pytest.fixture
def z4():
    return make_ring(2, 2, 1)


@pytest.fixture
def gr42():
    return make_ring(2, 2, 2)


class TestDescriptor:
    """Test ring descriptor lines."""

    def test_integer_ring(self):
        assert parse_ring_descriptor("GR p=3 n=2 ell=1") == (3, 2, 1, None)

    def test_extension(self):
        assert parse_ring_descriptor("GR p=2 n=2 ell=2 h=1,1,1") == (2, 2, 2, [1, 1, 1])

    @pytest.mark.parametrize("line", ["GR p=2", "ring p=2 n=2 ell=1", "GR p=2 n=2 ell=1 h="])
    def test_invalid(self, line):
        with pytest.raises(CodeFileFormatError):
            parse_ring_descriptor(line)


class TestGrcode:
    """Test GRCODE/1 serialization."""

    def test_dumps_lambda0(self, z4):
        assert dumps_code(lambda0(z4, 2)) == Z4_LAMBDA0

    def test_loads_lambda0(self, z4):
        generators = loads_code(Z4_LAMBDA0)
        assert generators == lambda0(z4, 2)

    def test_extension_entries(self, gr42):
        generators = GeneratorMultiset.of(gr42, [[[1, 0], [0, 1]], [[2, 3], [1, 1]]])
        text = dumps_code(generators)
        assert text.splitlines()[1] == "GR p=2 n=2 ell=2 h=1,1,1"
        assert text.splitlines()[3] == "col: 1,0|0,1"
        assert loads_code(text) == generators

    def test_file_round_trip_preserves_bytes(self, tmp_path, z4):
        path = dump_code(lambda0(z4, 3), tmp_path / "codes" / "z4.grcode")
        assert path.exists()
        loaded = load_code(path)
        assert dumps_code(loaded).encode() == path.read_bytes()

    def test_expected_ring(self, z4):
        assert loads_code(Z4_LAMBDA0, expected=z4).ctx == z4
        with pytest.raises(RingHeaderMismatchError):
            loads_code(Z4_LAMBDA0, expected=make_ring(3, 2, 1))

    @pytest.mark.parametrize(
        "text",
        [
            Z4_LAMBDA0.rstrip("\n"),
            Z4_LAMBDA0.replace("GRCODE 1", "GRCODE 2"),
            Z4_LAMBDA0.replace("m=2 k=6", "m=2 k=7"),
            Z4_LAMBDA0.replace("col: 2|1", "col: 2|1|0"),
            Z4_LAMBDA0.replace("col: 2|1", "col: 2|4"),
            Z4_LAMBDA0.replace("col: 2|1", "column: 2|1"),
            Z4_LAMBDA0.replace("col: 2|1", "col:  2|1"),
            Z4_LAMBDA0.replace("\n", "\r\n"),
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(CodeFileFormatError):
            loads_code(text)

    def test_invalid_ring(self):
        with pytest.raises(CodeFileFormatError):
            loads_code(Z4_LAMBDA0.replace("p=2", "p=4"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(CodeFileError):
            load_code(tmp_path / "missing.grcode")


class TestFunctionFiles:
    """Test function-table JSON files."""

    def test_named_family(self, tmp_path, z4):
        f = canonical_f(z4, "thm46", 4)
        path = dump_function(f, tmp_path / "f.json")
        data = json.loads(path.read_text())
        assert data["ring"] == "GR p=2 n=2 ell=1"
        loaded = load_function(path, expected=z4)
        assert loaded.family == "thm46"
        assert np.array_equal(loaded.values, f.values)

    def test_explicit_table(self, tmp_path, gr42):
        f = FunctionTable.explicit(gr42, 1, np.arange(16)[::-1])
        loaded = load_function(dump_function(f, tmp_path / "f.json"))
        assert np.array_equal(loaded.values, f.values)

    def test_ring_mismatch(self, tmp_path, z4):
        path = dump_function(canonical_f(z4, "thm46", 4), tmp_path / "f.json")
        with pytest.raises(RingHeaderMismatchError):
            load_function(path, expected=make_ring(3, 2, 1))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "f.json"
        path.write_text("{not json")
        with pytest.raises(CodeFileFormatError):
            load_function(path)

    def test_missing_ring(self, tmp_path):
        path = tmp_path / "f.json"
        path.write_text(json.dumps({"format": "grmin-function/1"}))
        with pytest.raises(CodeFileFormatError):
            load_function(path)
