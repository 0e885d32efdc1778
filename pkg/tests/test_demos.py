"""The demo scripts must stay runnable."""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos"
DEMOS = sorted(p.name for p in DEMO_DIR.glob("0*.py"))


@pytest.mark.parametrize("script", DEMOS)
def test_demo_runs_clean(script):
    result = subprocess.run([sys.executable, script], cwd=DEMO_DIR,
                            capture_output=True, text=True, timeout=300)
    assert result.returncode == 0, result.stderr
    assert result.stdout.strip()
