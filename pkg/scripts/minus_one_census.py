"""Census of indefinite forms representing -1.

For every form with |a|, |b|, |c| <= BOX and positive non-square discriminant,
decide representability of -1 exactly and report how many witnesses lie
outside the square |x|, |y| <= 100, i.e. where a naive box search would miss.

Usage: python3 scripts/minus_one_census.py [BOX]   (default 6)
"""
import sys
from collections import Counter

from k3dream import qform


def main(box: int = 6) -> None:
    total = yes = 0
    far = []
    by_disc = Counter()
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            for c in range(-box, box + 1):
                f = qform.QForm(a, b, c)
                if f.disc <= 0 or qform.is_square(f.disc):
                    continue
                total += 1
                w = qform.represents_minus_one(f)
                if w is None:
                    continue
                yes += 1
                by_disc[f.disc] += 1
                small = [v for v in qform.represent(f, -1) if max(map(abs, v)) <= 100]
                if not small:
                    far.append((f, w))
    print(f"{total} forms, {yes} represent -1, {len(far)} only outside |x|,|y| <= 100")
    for f, w in far:
        print(f"  ({f.a}, {f.b}, {f.c})  disc {f.disc}  witness {w}")
    print("discriminants represented:", sorted(by_disc))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
