"""Rewrite expected/*.json from the current CLI.  Only run this after the
new outputs have been checked by hand; the tests replay these files."""

from __future__ import annotations

import contextlib
import io
import json
import os
from pathlib import Path

from linpowers.cli import main

HERE = Path(__file__).resolve().parent


def run_case(case: dict) -> tuple[int, str]:
    buf = io.StringIO()
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        with contextlib.redirect_stdout(buf):
            code = main(case["args"] + ["--json"])
    finally:
        os.chdir(cwd)
    return code, buf.getvalue()


if __name__ == "__main__":
    out = HERE / "expected"
    out.mkdir(exist_ok=True)
    for case in json.loads((HERE / "cases.json").read_text()):
        code, text = run_case(case)
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (out / f"{case['name']}.json").write_text(text)
        print(case["name"], code)
