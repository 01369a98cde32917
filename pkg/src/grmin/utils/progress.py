# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Rich progress bars for long sweeps and searches."""

from typing import Any, Callable, Optional

from loguru import logger
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TaskID,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
    TimeRemainingColumn,
)

from .console import get_error_console


class SweepProgress:
    """Progress bar on stderr for one sweep; does nothing when disabled."""

    def __init__(
        self,
        description: str,
        total: int,
        enabled: bool = True,
        console: Optional[Console] = None,
    ):
        """Initialize sweep progress.

        Args:
            description: Label shown next to the bar
            total: Number of units (messages, column sets) in the sweep
            enabled: False for quiet or JSON runs
            console: Console to draw on (the stderr console when None)
        """
        self.description = description
        self.total = total
        self.enabled = enabled
        self.console = console or get_error_console()
        self.completed = 0
        self._progress: Optional[Progress] = None
        self._task: Optional[TaskID] = None

    def __enter__(self) -> "SweepProgress":
        self.start()
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self.stop()

    def start(self) -> None:
        """Start the progress display."""
        if not self.enabled or not self.console.is_terminal or self._progress is not None:
            return
        self._progress = Progress(
            SpinnerColumn(),
            TextColumn("[bold blue]{task.description}"),
            BarColumn(bar_width=None),
            TaskProgressColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
            TimeRemainingColumn(),
            console=self.console,
            transient=True,
        )
        self._progress.start()
        self._task = self._progress.add_task(self.description, total=self.total)
        logger.debug(f"Progress started: {self.description} (total: {self.total})")

    def stop(self) -> None:
        """Stop the progress display."""
        if self._progress is not None:
            self._progress.stop()
            self._progress = None
            self._task = None

    def advance(self, amount: int) -> None:
        """Record ``amount`` finished units."""
        self.completed += amount
        if self._progress is not None and self._task is not None:
            self._progress.update(self._task, advance=amount)

    @property
    def callback(self) -> Callable[[int], None]:
        """Callable suitable for the ``progress`` argument of sweeps."""
        return self.advance
