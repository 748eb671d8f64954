"""Print dim X -> dim psi(X) for constructed inner ideals of split A over GF(q).

    python3 scripts/psi_table.py [q] [seed]
"""

import random
import sys

from albert_e6.albert import AlbertAlgebra
from albert_e6.fieldcore import parse_field
from albert_e6.idealgeom import psi_table_check
from albert_e6.octonion import ZornAlgebra


def main(argv):
    q = int(argv[0]) if argv else 3
    seed = int(argv[1]) if len(argv) > 1 else 0
    F = parse_field(f"GF({q})")
    A = AlbertAlgebra(ZornAlgebra(F), (F.one, F.one, F.one))
    res = psi_table_check(A, random.Random(seed))
    print(f"{'kind':>5} {'dim X':>6} {'dim psi':>8} {'expected':>9}  tag")
    for r in res["rows"]:
        print(f"{r['kind']:>5} {r['dim']:>6} {r['psi_dim']:>8} {r['expected']:>9}  {r['tag']}")
    print("ok" if res["ok"] else "MISMATCH")
    return 0 if res["ok"] else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
