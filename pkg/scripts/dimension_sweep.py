#!/usr/bin/env python3
"""Verify the multilinear dimension formulas over a degree range.

Usage: dimension_sweep.py [max_star] [max_prime]   (defaults 6 and 5)
"""

import sys
import time

from permdiff import verify_dimension


def main() -> int:
    max_star = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    max_prime = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    bad = 0
    for variant, hi in (("star", max_star), ("prime", max_prime)):
        for n in range(2, hi + 1):
            t0 = time.time()
            r = verify_dimension(n, variant)
            mark = "ok " if r.ok else "BAD"
            print(f"{mark} n={n} variant={variant}: dim={r.rank_closure} "
                  f"formula={r.formula} |family|={r.size_S} "
                  f"({time.time() - t0:.1f}s)")
            if not r.ok:
                bad += 1
                for w in r.missing_from_closure[:3]:
                    print(f"    family element outside the closure span: {w}")
                for w in r.missing_from_S[:3]:
                    print(f"    closure element outside the family span: {w}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
