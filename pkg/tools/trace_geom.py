"""Ground-truth geometric tracer for single-chord band layouts on the unknot.

Lays out corridors with real coordinates, finds rail intersections
numerically, and emits the event sequence mechanically. Used to validate
the combinatorial emitter in ckbands.bands, never shipped.
"""
import math
from ckbands.diagram import _Events, DiagramError, canonical, simplify
from ckbands.invariants import v2, v3


def seg_int(p1, p2, q1, q2):
    # proper intersection of open segments, returns (t, u) params or None
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-12:
        return None
    dx, dy = q1[0] - p1[0], q1[1] - p1[1]
    t = (dx * d2[1] - dy * d2[0]) / den
    u = (dx * d1[1] - dy * d1[0]) / den
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return t, u
    return None


def trace(model, face, offsets, flags, verbose=False, mirror=False, slots_desc=False, det_flip=False):
    """offsets: dict band->offset (distinct). face: 0 above line, 1 below.
    flags: dict frozenset({i,j}) -> bool meaning 'band min(i,j) passes over'.
    Returns (diagram, event_seq) or raises DiagramError."""
    k1 = model.k + 1
    feet = {b: 1.0 + offsets[b] for b in range(k1)}
    ball_y = 4.0 if face == 0 else -4.0
    cx = sum(feet.values()) / k1
    R = 1.0
    # walk order: face0 ascending x, face1 descending x
    walk = sorted(range(k1), key=lambda b: feet[b], reverse=(face == 1))
    ranks = {b: min(model.beta[b]) // 2 for b in range(k1)}
    # choose rotation s so inversion set == declared flag key set
    want = set(flags)
    chosen = None
    for s in range(k1):
        tr = [(ranks[b] + s) % k1 for b in walk]
        inv = set()
        for i in range(k1):
            for j in range(i + 1, k1):
                if tr[i] > tr[j]:
                    inv.add(frozenset({walk[i], walk[j]}))
        if inv == want:
            chosen = s
            break
    if chosen is None:
        raise DiagramError("declared crossing set matches no rotation")
    s = chosen
    # slot positions: 2*k1 slots in walk order along the facing arc, CCW
    # face0: bottom arc angles 215deg -> 325deg (CCW ascending, l-to-r)
    # face1: top arc angles 35deg -> 145deg (CCW ascending, r-to-l = walk order)
    n_slots = 2 * k1
    if face == 0:
        a0, a1 = math.radians(215), math.radians(325)
    else:
        a0, a1 = math.radians(35), math.radians(145)
    angs = [a0 + (a1 - a0) * (i + 0.5) / n_slots for i in range(n_slots)]
    spos = {}
    # walk position w holds pair p where (p + s) % k1 == w; its slots in CCW
    # order are (2p, 2p+1)
    for w in range(k1):
        p = (w - s) % k1
        if slots_desc:
            p = (k1 - 1 - w - s) % k1
        spos[2 * p] = (cx + R * math.cos(angs[2 * w]), ball_y + R * math.sin(angs[2 * w]))
        spos[2 * p + 1] = (cx + R * math.cos(angs[2 * w + 1]), ball_y + R * math.sin(angs[2 * w + 1]))
    # rails: flat corridor, no twist: the out rail lands on the join
    # endpoint lying on the same side of the directed core as the out foot
    delta = 0.04
    rails = {}  # band -> dict(out=(p_from,p_to), back=(p_from,p_to), out_slot, back_slot)
    for b in range(k1):
        lo, hi = model.beta[b]
        f_out = (feet[b], 0.0)
        f_back = (feet[b] + delta, 0.0)
        foot_mid = (feet[b] + delta / 2, 0.0)
        slot_mid = ((spos[lo][0] + spos[hi][0]) / 2, (spos[lo][1] + spos[hi][1]) / 2)
        v = (slot_mid[0] - foot_mid[0], slot_mid[1] - foot_mid[1])

        def side(p, base):
            w = (p[0] - base[0], p[1] - base[1])
            return 1 if v[0] * w[1] - v[1] * w[0] > 0 else -1

        s_foot = side(f_out, foot_mid)
        so, sb = (lo, hi) if side(spos[lo], slot_mid) == s_foot else (hi, lo)
        if seg_int(f_out, spos[so], f_back, spos[sb]) is not None:
            raise DiagramError("corridor rails cross each other")
        rails[b] = {"out": (f_out, spos[so]), "back": (spos[sb], f_back),
                    "out_slot": so, "back_slot": sb}
    # check no rail clips the ball disk (endpoints on circle excepted)
    for b in range(k1):
        for rr in ("out", "back"):
            p1, p2 = rails[b][rr]
            # sample interior points
            for t in (0.25, 0.5, 0.75, 0.9, 0.95):
                x = p1[0] + (p2[0] - p1[0]) * t
                y = p1[1] + (p2[1] - p1[1]) * t
                if (x - cx) ** 2 + (y - ball_y) ** 2 < (R - 0.02) ** 2:
                    raise DiagramError("rail clips the ball disk")
    # intersections between rails of different bands
    events = {b: {"out": [], "back": []} for b in range(k1)}
    signs = {}
    nextkey = [0]
    for i in range(k1):
        for j in range(i + 1, k1):
            hits = []
            for ri in ("out", "back"):
                for rj in ("out", "back"):
                    p1, p2 = rails[i][ri]
                    q1, q2 = rails[j][rj]
                    r = seg_int(p1, p2, q1, q2)
                    if r is not None:
                        hits.append((ri, rj, r[0], r[1]))
            if not hits:
                if frozenset({i, j}) in want:
                    raise DiagramError("declared crossing absent in layout")
                continue
            if len(hits) != 4 or frozenset({i, j}) not in want:
                raise DiagramError(f"unexpected hit count {len(hits)} for pair {(i,j)}")
            over_is_i = flags[frozenset({i, j})] == (i == min(i, j))
            for (ri, rj, t, u) in hits:
                key = ("x", nextkey[0]); nextkey[0] += 1
                p1, p2 = rails[i][ri]
                q1, q2 = rails[j][rj]
                di = (p2[0] - p1[0], p2[1] - p1[1])
                dj = (q2[0] - q1[0], q2[1] - q1[1])
                over_d, under_d = (di, dj) if over_is_i else (dj, di)
                det = over_d[0] * under_d[1] - over_d[1] * under_d[0]
                s_val = 1 if det < 0 else -1
                signs[key] = -s_val if det_flip else s_val
                events[i][ri].append((t, key, over_is_i))
                events[j][rj].append((u, key, not over_is_i))
    # splices: model passages with reversal bookkeeping
    rev = {b: rails[b]["out_slot"] != model.alpha.arcs[b].start for b in range(k1)}
    arc_of = {}
    for b, arc in enumerate(model.alpha.arcs):
        for (c, o) in arc.passages:
            arc_of.setdefault(c, []).append(b)
    msigns = {}
    for c, sgn in model.alpha.sign_map.items():
        if mirror:
            sgn = -sgn
        bs = arc_of[c]
        flip = rev[bs[0]] != rev[bs[1]] if len(bs) == 2 else False
        msigns[("m", c)] = -sgn if flip else sgn
    # assemble knot travel: feet ascending x always
    seq = []
    for b in sorted(range(k1), key=lambda b: feet[b]):
        for (t, key, over) in sorted(events[b]["out"]):
            seq.append((key, over))
        pas = list(model.alpha.arcs[b].passages)
        if rev[b]:
            pas = [(c, o) for (c, o) in reversed(pas)]
        for (c, o) in pas:
            seq.append((("m", c), (not o) if mirror else o))
        for (t, key, over) in sorted(events[b]["back"]):
            seq.append((key, over))
    allsigns = dict(signs); allsigns.update(msigns)
    if verbose:
        for i, ev in enumerate(seq):
            print(" ", i, ev, allsigns[ev[0]])
    # relabel keys to ints
    remap = {}
    for (key, _o) in seq:
        if key not in remap:
            remap[key] = len(remap)
    seq2 = [(remap[k], o) for (k, o) in seq]
    signs2 = {remap[k]: v for k, v in allsigns.items()}
    d = _Events(seq2, signs2).to_diagram(check=True)
    return d, seq, allsigns
