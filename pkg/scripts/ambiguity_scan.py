"""Scan A_n chains for pairs of dual classes whose norms both fall in (-4, 0).

Usage: python3 scripts/ambiguity_scan.py [N_MAX]   (default 60)
"""
import sys

from k3dream import an
from k3dream.cases import fmt


def main(n_max: int = 60) -> None:
    rows = an.ambiguity_scan(n_max)
    print(f"{'n':>3} {'k':>3} {'k2':>3} {'norm k':>10} {'norm k2':>10}")
    for r in rows:
        print(f"{r.n:>3} {r.k:>3} {r.k2:>3} {fmt(r.norm_k):>10} {fmt(r.norm_k2):>10}")
    ns = sorted({r.n for r in rows})
    print(f"\n{len(rows)} rows over n <= {n_max}; chains affected: {ns}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 60)
