"""Shared test utilities: fixture paths and CLI invocation."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def run_cli(*args, env=None) -> subprocess.CompletedProcess:
    """Run the command in a fresh interpreter."""
    return subprocess.run([sys.executable, "-m", "superomni.cli", *map(str, args)],
                          capture_output=True, text=True, env=env)


def cli_json(*args) -> tuple[int, dict]:
    proc = run_cli(*args, "--json")
    assert proc.stdout, proc.stderr
    return proc.returncode, json.loads(proc.stdout)


def write_json(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))
