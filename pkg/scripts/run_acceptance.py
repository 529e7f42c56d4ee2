#!/usr/bin/env python3
"""Run the acceptance criteria outside pytest and print one line per criterion.

Exit status is 1 if any criterion fails.
"""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path[:0] = [str(ROOT / "tests"), str(ROOT / "src")]

import test_acceptance  # noqa: E402


def main() -> int:
    failed = 0
    for crit in test_acceptance.CRITERIA:
        with tempfile.TemporaryDirectory() as d:
            result = crit(Path(d))
        print(result.line())
        failed += bool(result.failed)
    print(f"{len(test_acceptance.CRITERIA) - failed}/{len(test_acceptance.CRITERIA)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
