#!/usr/bin/env python3
"""Generate QEXP basis fixtures for S_2(Gamma0(N)) using PARI/GP (via cypari).

The basis written is the reduced row echelon basis of the q-expansion
coefficient space (the canonical "Miller" basis f_i = q^(i+1) + O(q^(g+1))),
which is what Sage's CuspForms(Gamma0(N), 2).basis() returns.

usage: gen_fixtures.py OUTDIR [N:PREC ...]
"""
import sys
from fractions import Fraction

import cypari

pari = cypari.pari
DEFAULT = {34: 100, 35: 100, 37: 100, 38: 100, 44: 100, 54: 100, 55: 100, 60: 100}


def rref(rows):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    lead = 0
    out = []
    for c in range(ncols):
        piv = next((i for i, r in enumerate(rows) if r[c] != 0), None)
        if piv is None:
            continue
        p = rows.pop(piv)
        p = [x / p[c] for x in p]
        rows = [[x - r[c] * y for x, y in zip(r, p)] for r in rows]
        out = [[x - o[c] * y for x, y in zip(o, p)] for o in out]
        out.append(p)
        lead += 1
    return out


def basis(level, prec):
    mf = pari(f"mfinit([{level},2],1)")
    vecs = pari.mfbasis(mf)
    rows = []
    for f in vecs:
        coeffs = pari.mfcoefs(f, prec - 1)
        rows.append([Fraction(int(pari.numerator(c)), int(pari.denominator(c))) for c in coeffs])
    return rref(rows)


def fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def main():
    outdir = sys.argv[1]
    targets = DEFAULT
    if len(sys.argv) > 2:
        targets = {int(a.split(":")[0]): int(a.split(":")[1]) for a in sys.argv[2:]}
    for level, prec in targets.items():
        forms = basis(level, prec)
        lines = [
            "QEXP 1",
            f"# S_2(Gamma0({level})) reduced echelon basis (f_i = q^(i+1) + O(q^(g+1))).",
            f"# Generated by tools/gen_fixtures.py with PARI/GP {pari.version()} (mfinit/mfbasis/mfcoefs).",
            f"LEVEL {level}",
            "WEIGHT 2",
            f"PREC {prec}",
            f"FORMS {len(forms)}",
        ]
        for i, f in enumerate(forms):
            lines.append(f"FORM f{i}")
            lines.append(" ".join(fmt(c) for c in f))
        with open(f"{outdir}/g0n{level}_s2.qexp", "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(level, len(forms))


if __name__ == "__main__":
    main()
