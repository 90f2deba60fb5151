import os
import subprocess
import sys
from pathlib import Path

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def birkhoff_cmd(*args):
    return [sys.executable, "-m", "birkhoff.cli", *map(str, args)]


@pytest.fixture
def cli(tmp_path):
    """Run the CLI in a subprocess inside tmp_path."""

    def run(*args, check=True, timeout=120, env=None):
        proc = subprocess.run(
            birkhoff_cmd(*args), cwd=tmp_path, capture_output=True, text=True, timeout=timeout,
            env={**os.environ, **(env or {})},
        )
        if check and proc.returncode != 0:
            raise AssertionError(f"birkhoff {' '.join(map(str, args))} -> {proc.returncode}\n{proc.stderr}")
        return proc

    return run


@pytest.fixture
def workdir(tmp_path) -> Path:
    return tmp_path
