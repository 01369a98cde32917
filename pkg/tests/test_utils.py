# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Tests for utility modules."""

import io

import pytest
from rich.console import Console

from grmin.utils.console import get_console, get_error_console, set_console
from grmin.utils.progress import SweepProgress
from grmin.utils.sweep import map_tasks, partition_range


class TestPartitionRange:
    """Test range chunking."""

    def test_even_split(self):
        assert partition_range(0, 6, 2) == [(0, 2), (2, 4), (4, 6)]

    def test_last_chunk_is_short(self):
        assert partition_range(1, 8, 3) == [(1, 4), (4, 7), (7, 8)]

    def test_empty_range(self):
        assert partition_range(5, 5, 4) == []

    def test_chunk_below_one(self):
        assert partition_range(0, 3, 0) == [(0, 1), (1, 2), (2, 3)]


class TestMapTasks:
    """Test serial and pooled task mapping."""

    def test_serial_order_and_callback(self):
        seen = []
        results = map_tasks(pow, [(2, 3), (3, 2), (5, 1)], on_done=seen.append)
        assert results == [8, 9, 5]
        assert seen == [8, 9, 5]

    def test_pool_preserves_order(self):
        tasks = [(base, 2) for base in range(10)]
        assert map_tasks(pow, tasks, threads=2) == [b * b for b in range(10)]

    def test_no_tasks(self):
        assert map_tasks(pow, [], threads=4) == []


class TestConsoles:
    """Test the process-wide consoles."""

    @pytest.fixture(autouse=True)
    def reset_consoles(self):
        yield
        set_console(None)
        set_console(None, stderr=True)

    def test_stdout_and_stderr_differ(self):
        assert get_console() is get_console()
        assert get_error_console().stderr
        assert not get_console().stderr

    def test_replace_and_reset(self):
        custom = Console(file=io.StringIO())
        set_console(custom)
        assert get_console() is custom
        set_console(None)
        assert get_console() is not custom


class TestSweepProgress:
    """Test the sweep progress bar."""

    def test_disabled_counts_only(self):
        with SweepProgress("Sweep", 10, enabled=False) as progress:
            progress.callback(4)
            progress.advance(6)
        assert progress.completed == 10

    def test_non_terminal_draws_nothing(self):
        buffer = io.StringIO()
        with SweepProgress("Sweep", 3, console=Console(file=buffer)) as progress:
            progress.advance(3)
        assert progress.completed == 3
        assert buffer.getvalue() == ""

    def test_terminal_lifecycle(self):
        console = Console(file=io.StringIO(), force_terminal=True)
        progress = SweepProgress("Sweep", 2, console=console)
        progress.start()
        progress.advance(2)
        progress.stop()
        progress.stop()
        assert progress.completed == 2
