"""Run every registered worked case and print a per-check table."""
import sys

from k3dream import cases


def main() -> int:
    failures = 0
    for report in cases.run_all():
        status = "pass" if report.passed else "FAIL"
        print(f"== {report.name}: {status}")
        for c in report.checks:
            mark = " " if c.passed else "!"
            print(f"  {mark} {c.name:<40} expected {c.expected:<22} computed {c.computed}")
        failures += not report.passed
    print(f"\n{failures} failing case(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
