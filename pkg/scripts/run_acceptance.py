"""Run acceptance criteria 1-9 and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py [N ...]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

import test_acceptance as acc  # noqa: E402


def main(argv):
    which = [int(a) for a in argv] or [c[0] for c in acc.CRITERIA]
    results = [acc.run_criterion(n) for n in which]
    print(f"{sum(results)}/{len(results)} criteria passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
