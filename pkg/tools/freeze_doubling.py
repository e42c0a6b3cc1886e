"""Sweep the doubling weave and layout constants; report survivors.

The doubling pattern has two kinds of frozen choices: the gate weave
(whether the short hairpin's gate passes over or under the long
hairpin's arms, and which gate crossing is positive) and the layout
bits (which side of each crossing the lanes run on, which split slot
each hairpin leaves first, and which arm runs nearer the gate's
base).  That is two binary weave choices times sixteen layouts; the
mirror image of any candidate is again a candidate, so the overall
sign stays +1.

A candidate survives when, for every tree of class <= 4, the generated
template closes planar in all ways, passes the Brunnian deletion
check, every model of class >= 2 has pairwise linking number zero, and
the class hierarchy is sharp where it must be: some closure of the
class-2 move changes v2, every closure of the class-3 move preserves
v2, and every closure of the class-4 move preserves both v2 and v3.
A band-level gate then replays the class-2 chord over the unknot with
every small combination of edge hops: every built full/empty pair must
change v2 by exactly one.  Preferred survivors additionally show a v3
change at class 3 and any fingerprint change at class 4, so the moves
stay visibly nontrivial.

Run from the repo root:  python tools/freeze_doubling.py
"""

import itertools
import sys
import time
from dataclasses import replace

sys.path.insert(0, "src")

from ckbands import moves
from ckbands.diagram import UNKNOT, DiagramError
from ckbands.invariants import fingerprint, v2
from ckbands.moves import (
    TangleArc,
    TangleDiagram,
    brunnian_check,
    c1_template,
    close_tangle,
    double_template,
    enumerate_closures,
    enumerate_trees,
    move_from_tree,
)

LAYOUTS = (
    "_LANE_OUT_ON_LEFT",
    "_U_SLOT_OUT_FIRST",
    "_V_SLOT_IN_FIRST",
    "_V_FIRST_ARM_LOW",
)

WEAVES = (
    "_GATE_U_OVER",
)

SIGNS = (
    "_GATE_SIGN",
)


def set_candidate(bits, uovers, signs):
    for name, bit in zip(LAYOUTS, bits):
        setattr(moves, name, bit)
    moves._CLASP_SIGN = 1
    for name, flag in zip(WEAVES, uovers):
        setattr(moves, name, flag)
    for name, sgn in zip(SIGNS, signs):
        setattr(moves, name, sgn)


def closure_rows(m):
    rows = []
    for closure in enumerate_closures(m.t1):
        k1 = close_tangle(m.t1, closure)
        k2 = close_tangle(m.t2, closure)
        f1 = fingerprint(k1, allow_partial=True)
        f2 = fingerprint(k2, allow_partial=True)
        rows.append((f1, f2))
    return rows


def pairwise_lk_zero(t):
    """Closure circles of a model tangle must be pairwise unlinked."""
    holder = {}
    for ai, arc in enumerate(t.arcs):
        for cid, _ in arc.passages:
            holder.setdefault(cid, []).append(ai)
    sums = {}
    for cid, sgn in t.sign_map.items():
        a, b = sorted(holder[cid])
        if a != b:
            sums[(a, b)] = sums.get((a, b), 0) + sgn
    return all(s == 0 for s in sums.values())


def class2_screen():
    """Cheap first gate: the class-2 template built from the clasp must
    admit closures, close planar both ways, change v2 under some
    closure, and keep its circles pairwise unlinked."""
    m = double_template(c1_template(), 0)
    if not pairwise_lk_zero(m.t1):
        return None
    try:
        rows = closure_rows(m)
    except DiagramError:
        return None
    if not rows:
        return None
    if not any(f1.v2 != f2.v2 for f1, f2 in rows):
        return None
    return rows


def hop_matrix_gate():
    """Class-2 chord over the unknot with small edge-hop routes: every
    built full/empty pair changes v2 by exactly one."""
    from ckbands.bands import (BandRoute, Hop, attach_chord, double_link_model,
                               link_model_c1, realize)

    c2 = double_link_model(link_model_c1(), 0)
    empty = replace(
        c2,
        alpha=TangleDiagram(
            c2.alpha.n_endpoints,
            tuple(TangleArc(a.start, a.end) for a in c2.alpha.arcs),
            {},
        ),
    )
    built = 0
    for n0, n1, n2 in itertools.product((0, 1), repeat=3):
        for ball in (0, 1):
            sides = [1 if (ball + n) % 2 == 0 else -1 for n in (n0, n1, n2)]
            for overs in itertools.product((True, False), repeat=n0 + n1 + n2):
                ov = [overs[:n0], overs[n0:n0 + n1], overs[n0 + n1:]]
                routes = tuple(
                    BandRoute(1, b, sides[b],
                              tuple(Hop("edge", 1, o) for o in ov[b]))
                    for b in range(3)
                )
                try:
                    full = realize(attach_chord(UNKNOT, c2, ball, routes))
                except DiagramError:
                    continue
                emptyd = realize(attach_chord(UNKNOT, empty, ball, routes))
                if v2(full) - v2(emptyd) not in (-1, 1):
                    return False, built
                built += 1
    return built > 0, built


def evaluate():
    """Full gate battery; assumes the candidate already passed the
    class-2 screen.  Returns a report dict with a ``fail`` key on the
    first broken gate."""
    report = {}
    try:
        temps = {}
        for k in (1, 2, 3, 4):
            for g in enumerate_trees(k):
                temps.setdefault(k, []).append(move_from_tree(g))
        rows = {k: [closure_rows(m) for m in ms] for k, ms in temps.items()}
    except DiagramError as e:
        report["fail"] = f"build/closure: {e}"
        return report

    # the class-1 clasp is legitimately linked; from class 2 up the
    # doubled circles must be pairwise unlinked
    for k, ms in temps.items():
        if k == 1:
            continue
        for m in ms:
            if not pairwise_lk_zero(m.t1):
                report["fail"] = f"class-{k} model circles are linked"
                return report

    for k, per_move in rows.items():
        if any(not r for r in per_move):
            report["fail"] = f"class-{k} template has no closures"
            return report
    c2 = rows[2][0]
    if not any(f1.v2 != f2.v2 for f1, f2 in c2):
        report["fail"] = "class-2 move never changes v2"
        return report
    c3 = rows[3][0]
    if any(f1.v2 != f2.v2 for f1, f2 in c3):
        report["fail"] = "class-3 move changes v2"
        return report
    c4 = rows[4][0]
    if any(f1.v2 != f2.v2 or f1.v3 != f2.v3 for f1, f2 in c4):
        report["fail"] = "class-4 move changes v2 or v3"
        return report

    for k, ms in temps.items():
        for m in ms:
            if not brunnian_check(m):
                report["fail"] = f"brunnian fails at class {k}"
                return report

    ok, built = hop_matrix_gate()
    if not ok:
        report["fail"] = f"hop matrix breaks the unit v2 step (built={built})"
        return report

    report["c2_dv2"] = sorted({f1.v2 - f2.v2 for f1, f2 in c2})
    report["c3_dv3"] = sorted({f1.v3 - f2.v3 for f1, f2 in c3})
    report["c4_diff"] = any(f1 != f2 for f1, f2 in c4)
    report["hop_built"] = built
    report["xings"] = {
        k: [len(m.t1.sign_map) for m in ms] for k, ms in temps.items()
    }
    return report


def main():
    t0 = time.time()
    screened = []
    tried = 0
    for bits in itertools.product((True, False), repeat=len(LAYOUTS)):
        for uovers in itertools.product((True, False), repeat=len(WEAVES)):
            for signs in itertools.product((1, -1), repeat=len(SIGNS)):
                tried += 1
                set_candidate(bits, uovers, signs)
                rows = class2_screen()
                if rows is not None:
                    sig = tuple(
                        (f1.serialize(), f2.serialize()) for f1, f2 in rows
                    )
                    screened.append((bits, uovers, signs, sig))
    print(
        f"stage 1: {len(screened)} of {tried} candidates pass the class-2 "
        f"screen ({time.time() - t0:.1f}s)"
    )
    by_sig = {}
    for cand in screened:
        by_sig.setdefault(cand[3], []).append(cand[:3])
    print(f"stage 1: {len(by_sig)} distinct class-2 closure signatures")

    survivors = []
    for cand in screened:
        bits, uovers, signs, _ = cand
        set_candidate(bits, uovers, signs)
        rep = evaluate()
        tag = (
            " ".join(f"{n.strip('_')}={int(b)}" for n, b in zip(LAYOUTS, bits))
            + " " + " ".join(
                f"{n.strip('_')}={int(f)}" for n, f in zip(WEAVES, uovers)
            )
            + " " + " ".join(
                f"{n.strip('_')}={s:+d}" for n, s in zip(SIGNS, signs)
            )
        )
        if "fail" in rep:
            print(f"[fail] {tag}: {rep['fail']}")
        else:
            print(
                f"[PASS] {tag}: c2_dv2={rep['c2_dv2']} c3_dv3={rep['c3_dv3']} "
                f"c4_diff={rep['c4_diff']} hop_built={rep['hop_built']} "
                f"xings={rep['xings']}"
            )
            survivors.append((cand, rep))
    print(f"\n{len(survivors)} survivors in {time.time() - t0:.1f}s")
    for (bits, uovers, signs, _), rep in survivors:
        pref = rep["c3_dv3"] != [0] and rep["c4_diff"]
        print(
            ("preferred " if pref else "          ")
            + f"bits={tuple(int(b) for b in bits)} "
            + f"uovers={tuple(int(f) for f in uovers)} signs={signs}"
        )


if __name__ == "__main__":
    main()
