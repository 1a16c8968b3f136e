"""The Wagner graph V8 and its minors never map oddly onto K5.

Every minor of V8 is enumerated up to isomorphism and every homomorphism to
K5 is classified. Odd vertices do occur, but only at vertices of degree at
least four, and no map makes each fibre hold an odd number of them.

    python demos/wagner_k5.py      (about a minute and a half)
"""

from __future__ import annotations

from homind.suites import suite_v8_k5


def main() -> None:
    report = suite_v8_k5()
    print(report.line())
    for key, value in sorted(report.counts.items()):
        print(f"  {key:>15}: {value}")


if __name__ == "__main__":
    main()
