"""Solve for the order-3 Gauss-counting coefficients and freeze them.

The order-3 invariant has an expression as a weighted count of 2- and
3-chord based arrow patterns.  This script builds a large training set
of diagrams (sample knots, mirrors, connected sums, random-move
rediagrams, every basepoint of each), sets the target value from the
Jones h-expansion (v3 = j3 / 6 on this codebase's conventions), solves
the resulting linear system exactly over the rationals, validates the
solution on held-out diagrams, and writes src/ckbands/_v3data.py.

Run from the repository root:  python3 tools/discover_v3.py
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ckbands.diagram import (
    UNKNOT,
    canonical,
    connected_sum,
    gauss_diagram,
    mirror,
    parse_pd,
    random_move,
)
from ckbands.invariants import (
    J3_PER_V2,
    J3_PER_V3,
    _signature,
    jones_expansion,
    v2,
)

PRIMES = {
    "3_1": "PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "4_1": "PD: X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
    "5_1": "PD: X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
    "5_2": "PD: X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
    "6_1": "PD: X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)",
    "6_2": "PD: X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) X(11,6,12,7)",
    "6_3": "PD: X(4,2,5,1) X(8,4,9,3) X(12,9,1,10) X(10,5,11,6) X(6,11,7,12) X(2,8,3,7)",
    "7_1": "PD: X(1,8,2,9) X(3,10,4,11) X(5,12,6,13) X(7,14,8,1) X(9,2,10,3) X(11,4,12,5) X(13,6,14,7)",
}


def matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1 :]
        for m in matchings(rest):
            yield [(a, points[i])] + m


def all_signatures(n_chords):
    sigs = set()
    pts = list(range(2 * n_chords))
    for m in matchings(pts):
        for mask in range(2**n_chords):
            eps = []
            for ci, (p, q) in enumerate(m):
                over_at_p = bool(mask >> ci & 1)
                eps.append((p, ci, over_at_p))
                eps.append((q, ci, not over_at_p))
            sigs.add(_signature(eps))
    return sorted(sigs)


PAIR_SIGS = all_signatures(2)
TRIPLE_SIGS = all_signatures(3)
COL = {s: i for i, s in enumerate(PAIR_SIGS)}
for s in TRIPLE_SIGS:
    COL[s] = len(COL)
NCOLS = len(COL)


def count_vector(chords, rot, length):
    row = [0] * NCOLS
    ch = [
        (s, (o - 1 - rot) % length, (u - 1 - rot) % length)
        for s, o, u in chords
    ]
    n = len(ch)
    for i in range(n):
        si, oi, ui = ch[i]
        for j in range(i + 1, n):
            sj, oj, uj = ch[j]
            sig = _signature([(oi, 0, True), (ui, 0, False), (oj, 1, True), (uj, 1, False)])
            row[COL[sig]] += si * sj
            for k in range(j + 1, n):
                sk, ok, uk = ch[k]
                sig = _signature(
                    [(oi, 0, True), (ui, 0, False), (oj, 1, True),
                     (uj, 1, False), (ok, 2, True), (uk, 2, False)]
                )
                row[COL[sig]] += si * sj * sk
    return row


def target(d) -> Fraction:
    j3 = jones_expansion(d, 3)[3]
    t = Fraction(j3 - J3_PER_V2 * v2(d), J3_PER_V3)
    assert t.denominator == 1, "order-3 target must be an integer"
    return t


def rows_for(d, rows):
    t = target(d)
    chords = gauss_diagram(canonical(d)).chords
    length = 2 * len(chords)
    for rot in range(max(length, 1)):
        key = tuple(count_vector(chords, rot, max(length, 1)))
        prev = rows.get(key)
        if prev is not None and prev != t:
            raise SystemExit("contradictory training rows; conventions broken")
        rows[key] = t


def fuzzed(d, rng, steps=10, max_crossings=12):
    cur = d
    for _ in range(steps):
        _, _, cur = random_move(cur, rng, max_crossings=max_crossings)
    return cur


def build_training():
    rng = random.Random(20260814)
    rows = {}
    bases = [UNKNOT] + [parse_pd(s) for s in PRIMES.values()]
    bases += [mirror(d) for d in bases[1:]]
    k3 = parse_pd(PRIMES["3_1"])
    k4 = parse_pd(PRIMES["4_1"])
    k52 = parse_pd(PRIMES["5_2"])
    bases += [
        connected_sum(k3, k3),
        connected_sum(k3, mirror(k3)),
        connected_sum(k3, k4),
        connected_sum(k4, k52),
    ]
    for d in bases:
        rows_for(d, rows)
        for _ in range(2):
            rows_for(fuzzed(d, rng), rows)
    return rows


def solve(rows):
    aug = [[Fraction(v) for v in key] + [val] for key, val in rows.items()]
    pivots = []
    r = 0
    for c in range(NCOLS):
        p = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][NCOLS] != 0:
            raise SystemExit("training system is inconsistent")
    x = [Fraction(0)] * NCOLS
    for i, c in enumerate(pivots):
        x[c] = aug[i][NCOLS]
    print(f"rows={len(aug)} rank={r} free={NCOLS - r} nonzero={sum(1 for v in x if v)}")
    return x


def formula_value(x, d) -> Fraction:
    chords = gauss_diagram(canonical(d)).chords
    length = max(2 * len(chords), 1)
    vals = set()
    for rot in range(length):
        row = count_vector(chords, rot, length)
        vals.add(sum(c * v for c, v in zip(row, x) if c))
    if len(vals) != 1:
        raise SystemExit(f"basepoint dependence detected: {sorted(vals)}")
    return vals.pop()


def validate(x):
    rng = random.Random(977113)
    k = {n: parse_pd(s) for n, s in PRIMES.items()}
    held_out = [
        connected_sum(k["5_1"], mirror(k["3_1"])),
        connected_sum(k["6_1"], k["3_1"]),
        connected_sum(k["6_2"], mirror(k["4_1"])),
        connected_sum(connected_sum(k["3_1"], k["3_1"]), k["3_1"]),
    ]
    checked = 0
    for d in list(k.values()) + [mirror(v) for v in k.values()] + held_out + [UNKNOT]:
        want = target(d)
        for cand in (d, fuzzed(d, rng), fuzzed(d, rng, steps=14)):
            got = formula_value(x, cand)
            if got != want:
                raise SystemExit(
                    f"validation failed: got {got}, want {want} on a "
                    f"{cand.n_crossings}-crossing diagram"
                )
            checked += 1
    print(f"validation passed on {checked} diagrams (all basepoints each)")


def emit(x):
    def fmt(table):
        lines = []
        for sig, col in table:
            val = x[col]
            if not val:
                continue
            if val.denominator == 1:
                lit = f"Fraction({val.numerator})"
            else:
                lit = f"Fraction({val.numerator}, {val.denominator})"
            lines.append(f"    {sig!r}: {lit},")
        return "\n".join(lines)

    pair_rows = fmt((s, COL[s]) for s in PAIR_SIGS)
    triple_rows = fmt((s, COL[s]) for s in TRIPLE_SIGS)
    body = f'''"""Frozen counting coefficients for the order-3 invariant.

Generated by tools/discover_v3.py; do not edit by hand.
"""

from fractions import Fraction

V3_PAIR_COEFFS = {{
{pair_rows}
}}

V3_TRIPLE_COEFFS = {{
{triple_rows}
}}
'''
    out = Path(__file__).resolve().parent.parent / "src" / "ckbands" / "_v3data.py"
    out.write_text(body)
    print(f"wrote {out}")


def main():
    assert len(PAIR_SIGS) == 12 and len(TRIPLE_SIGS) == 120, (
        len(PAIR_SIGS),
        len(TRIPLE_SIGS),
    )
    rows = build_training()
    x = solve(rows)
    validate(x)
    emit(x)


if __name__ == "__main__":
    main()
