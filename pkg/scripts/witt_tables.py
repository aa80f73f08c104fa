#!/usr/bin/env python3
"""Print the Witt-type bracket tables in a readable layout and verify every
entry against the embedded coefficient rules."""

import sys

from permdiff import structure_table, verify_tables


def fmt_basis(b) -> str:
    return f"E[{','.join(str(k) for k in b['e'])};{b['alpha']},{b['i']}]"


def main() -> int:
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    for n, kind in ((1, "lie"), (2, "lie"), (2, "leibniz")):
        doc = structure_table(n, kind, bound)
        print(f"== W({n}) {kind} bracket, exponents 0..{bound} ==")
        for e in doc["entries"]:
            rhs = " + ".join(f"{t['coeff']}*{fmt_basis(t['basis'])}"
                             for t in e["result"]) or "0"
            print(f"  [{fmt_basis(e['left'])}, {fmt_basis(e['right'])}] = {rhs}")
    ver = verify_tables(3)
    print(f"verification over exponents 0..3: {ver.total_checks} "
          f"instantiations of {len(ver.rules)} rules -> "
          f"{'all match' if ver.ok else 'MISMATCHES'}")
    for r in ver.rules:
        if not r.ok:
            print(f"  MISMATCH {r.table}/{r.block} {r.left},{r.right}: "
                  f"{r.mismatches[:2]}")
    return 0 if ver.ok else 1


if __name__ == "__main__":
    sys.exit(main())
