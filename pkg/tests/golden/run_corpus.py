"""Run every golden case in one process and print {name: [exit, stdout]}."""
import contextlib
import io
import json
import sys
from pathlib import Path

from wqolang.cli import run

HERE = Path(__file__).parent


def run_case(case: dict) -> tuple[int, str]:
    argv = case["argv"] + (["--json"] if case["exit"] != 2 else [])
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue()


def main() -> None:
    cases = json.loads((HERE / "cases.json").read_text(encoding="utf-8"))
    result = {c["name"]: list(run_case(c)) for c in cases}
    sys.stdout.write(json.dumps(result, ensure_ascii=False, sort_keys=True))


if __name__ == "__main__":
    main()
