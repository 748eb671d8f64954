"""Tits index labels over Q for split and definite octonions, several Gamma and K.

    python3 scripts/index_table.py
"""

from albert_e6.wittforms import QQ_TOWER, AlbertData, EtaleData, tits_index

OCTONIONS = {"split": "split", "definite": ("-1", "-1", "-1"), "mixed": ("-1", "-1", "3")}
GAMMAS = [("1", "1", "1"), ("1", "1", "-1"), ("3", "1", "-2"), ("1", "2", "5")]
DELTAS = ["split", "-1", "2", "-7"]


def main():
    print(f"{'C':>9} {'Gamma':>14} {'d':>6}  {'label':<18} gamma")
    for cname, c in OCTONIONS.items():
        for g in GAMMAS:
            for d in DELTAS:
                A = AlbertData.make(QQ_TOWER, c, g)
                rep = tits_index(A, EtaleData.make(QQ_TOWER, d))
                gam = "-" if rep.gamma is None else "<<" + ", ".join(QQ_TOWER.fmt_entry(x) for x in rep.gamma) + ">>"
                print(f"{cname:>9} {','.join(g):>14} {d:>6}  {rep.label:<18} {gam}")


if __name__ == "__main__":
    main()
