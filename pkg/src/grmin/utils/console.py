# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Rich Console instances for reports (stdout) and diagnostics (stderr).

Reports and JSON go to stdout; progress bars, errors and logs go to stderr so
that ``grmin ... --json | jq`` always sees clean data.
"""

import os
import platform
import sys
import threading
from typing import Any, Optional

from rich.console import Console

_consoles: dict[str, Console] = {}
_console_lock = threading.Lock()


def create_console(stderr: bool = False, **kwargs: Any) -> Console:
    """Create a Rich Console with UTF-8 output on Windows terminals.

    Args:
        stderr: Write to standard error instead of standard output
        **kwargs: Additional arguments passed to the Console constructor

    Returns:
        Rich Console instance
    """
    if platform.system().lower() == "windows":
        os.environ["PYTHONIOENCODING"] = "utf-8"
        stream = sys.stderr if stderr else sys.stdout
        try:
            if hasattr(stream, "reconfigure"):
                stream.reconfigure(encoding="utf-8", errors="replace")
        except (AttributeError, OSError):
            pass

    return Console(stderr=stderr, legacy_windows=False, **kwargs)


def _get(name: str, stderr: bool) -> Console:
    if name not in _consoles:
        with _console_lock:
            if name not in _consoles:
                _consoles[name] = create_console(stderr=stderr)
    return _consoles[name]


def get_console() -> Console:
    """Get the process-wide stdout console."""
    return _get("stdout", stderr=False)


def get_error_console() -> Console:
    """Get the process-wide stderr console."""
    return _get("stderr", stderr=True)


def set_console(console: Optional[Console], stderr: bool = False) -> None:
    """Replace (or with None, reset) one of the global consoles."""
    name = "stderr" if stderr else "stdout"
    with _console_lock:
        if console is None:
            _consoles.pop(name, None)
        else:
            _consoles[name] = console
