"""Ground-truth tracer for corridors with edge hops on the unknot.

Real 2D layout mirroring the combinatorial emitter's conventions (feet
by offset, hop lanes east of all feet, fan slot layout), events and
signs read mechanically from segment intersections.  Diagnostic only.
"""
import math
from ckbands.diagram import _Events, DiagramError

DELTA = 0.05


def seg_int(p1, p2, q1, q2):
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


def offset_polyline(core, side):
    """Offset a polyline by DELTA to one side (+1 left of travel)."""
    segs = []
    for (x1, y1), (x2, y2) in zip(core, core[1:]):
        dx, dy = x2 - x1, y2 - y1
        ln = math.hypot(dx, dy)
        nx, ny = -dy / ln * DELTA * side, dx / ln * DELTA * side
        segs.append(((x1 + nx, y1 + ny), (x2 + nx, y2 + ny)))
    # miter join consecutive segments
    pts = [segs[0][0]]
    for (a1, a2), (b1, b2) in zip(segs, segs[1:]):
        d1 = (a2[0] - a1[0], a2[1] - a1[1])
        d2 = (b2[0] - b1[0], b2[1] - b1[1])
        den = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(den) < 1e-12:
            pts.append(a2)
        else:
            dx, dy = b1[0] - a1[0], b1[1] - a1[1]
            t = (dx * d2[1] - dy * d2[0]) / den
            pts.append((a1[0] + d1[0] * t, a1[1] + d1[1] * t))
    pts.append(segs[-1][1])
    return pts


def polyline_segments(pts):
    return list(zip(pts, pts[1:]))


def arclen_params(pts):
    acc = [0.0]
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        acc.append(acc[-1] + math.hypot(x2 - x1, y2 - y1))
    return acc


def trace_hops(model, ball_face, routes):
    """routes: list of (attach_offset, side, hops) with hops a list of
    over flags, all hops crossing the single unknot edge.  Returns the
    validated PlanarDiagram built mechanically from the layout."""
    k1 = model.n_circles
    assert len(routes) == k1
    feet = {b: 0.5 + routes[b][0] for b in range(k1)}
    # lane x positions: east of all feet, in (band, hop) order
    lane_x = {}
    x = max(feet.values()) + 1.5
    for b in range(k1):
        for hi in range(len(routes[b][2])):
            lane_x[(b, hi)] = x
            x += 0.7
    bx = x + 2.0
    by = 3.5 if ball_face == 0 else -3.5
    R = 1.0

    # detour intervals per face; depth by length rank so nested
    # intervals get nested boxes (containers deeper than contents)
    visits = []
    for b, (off, side, hops) in enumerate(routes):
        cur_face = 0 if side == 1 else 1
        prev_x = feet[b]
        for hi in range(len(hops)):
            lx = lane_x[(b, hi)]
            visits.append((b, hi, cur_face, prev_x, lx))
            cur_face = 1 - cur_face
            prev_x = lx
    depth_of = {}
    for f in (0, 1):
        vs = sorted((v for v in visits if v[2] == f),
                    key=lambda v: (abs(v[4] - v[3]), v[0], v[1]))
        for rank, v in enumerate(vs):
            depth_of[(v[0], v[1])] = 0.45 + 0.10 * rank

    # corridor cores: foot -> detour per face visit -> last line point,
    # then final approach to the slot pair midpoint (set after fan)
    cores = {}
    for b, (off, side, hops) in enumerate(routes):
        pts = [(feet[b], 0.0)]
        cur_face = 0 if side == 1 else 1
        prev_x = feet[b]
        for hi, over in enumerate(hops):
            lx = lane_x[(b, hi)]
            d = (1 if cur_face == 0 else -1) * depth_of[(b, hi)]
            pts.append((prev_x, d))
            pts.append((lx, d))
            pts.append((lx, 0.0))
            cur_face = 1 - cur_face
            prev_x = lx
        # leave the line perpendicular so foot geometry is exact
        stub = 1 if cur_face == 0 else -1
        pts.append((prev_x, stub * 0.45))
        cores[b] = (pts, cur_face)
        if cur_face != ball_face:
            raise DiagramError("route does not end in the ball face")

    # fan: door order along the face walk; walk dir +x on face0, -x on face1
    ends = {b: cores[b][0][-1] for b in range(k1)}
    walk = sorted(range(k1), key=lambda b: ends[b][0], reverse=(ball_face == 1))
    ranks = {b: min(model.beta[b]) // 2 for b in range(k1)}
    rot = None
    for s in range(k1):
        if all(ranks[walk[i]] == (ranks[walk[0]] + i) % k1 for i in range(k1)) and (
            ranks[walk[0]] + 0) % k1 == (ranks[walk[0]]) % k1:
            pass
        tr = [(ranks[b] + s) % k1 for b in walk]
        if all(tr[i] == i for i in range(k1)):
            rot = s
            break
    if rot is None:
        raise DiagramError("door order is no rotation of the join order")
    n_slots = 2 * k1
    if ball_face == 0:
        a0, a1 = math.radians(215), math.radians(325)
    else:
        a0, a1 = math.radians(35), math.radians(145)
    angs = [a0 + (a1 - a0) * (i + 0.5) / n_slots for i in range(n_slots)]
    spos = {}
    for w in range(k1):
        p = (w - rot) % k1
        for j in (0, 1):
            ang = angs[2 * w + j]
            spos[2 * p + j] = (bx + R * math.cos(ang), by + R * math.sin(ang))

    # rails: offset cores; extend with final approach to slots (no twist).
    # Approaches are L-shaped at nested clearance depths so they pass
    # clear of every detour box (depths < 1.0) and of each other.
    rails = {}
    sgn = 1 if ball_face == 0 else -1
    for b in range(k1):
        pts, _ = cores[b]
        lo, hi = model.beta[b]
        end = pts[-1]
        slot_mid = ((spos[lo][0] + spos[hi][0]) / 2, (spos[lo][1] + spos[hi][1]) / 2)
        r = walk.index(b)
        depth = 2.30 - 0.13 * (r if ball_face == 0 else k1 - 1 - r)
        core_full = pts + [(end[0], sgn * depth), (slot_mid[0], sgn * depth), slot_mid]
        # out rail on corridor-left iff side h=+1; at the foot the out
        # rail leaves the line first (west), fixing the offset side
        h = routes[b][1]
        left = offset_polyline(core_full, +1)
        right = offset_polyline(core_full, -1)
        out_pts, back_pts = (left, right) if h == 1 else (right, left)
        # no-twist slot assignment: out rail takes the join endpoint on
        # the same side of the directed core's last leg as the out rail
        vx = slot_mid[0] - core_full[-2][0]
        vy = slot_mid[1] - core_full[-2][1]

        def side_of(p):
            wx, wy = p[0] - slot_mid[0], p[1] - slot_mid[1]
            return 1 if vx * wy - vy * wx > 0 else -1

        out_side = 1 if h == 1 else -1
        so, sb = (lo, hi) if side_of(spos[lo]) == out_side else (hi, lo)
        out_pts[-1] = spos[so]
        back_pts[-1] = spos[sb]
        rails[b] = {
            "out": out_pts,
            "back": list(reversed(back_pts)),
            "out_slot": so,
            "back_slot": sb,
        }
        if abs(out_pts[0][0] - (feet[b] - DELTA)) > 1e-6:
            raise DiagramError("out rail does not leave the line first")

    # intersections: rails x line, rails x rails (different bands)
    line_events = []  # (x, key, line_is_over)
    rail_events = {b: {"out": [], "back": []} for b in range(k1)}
    signs = {}
    keyc = [0]

    def fresh():
        keyc[0] += 1
        return ("x", keyc[0])

    for b in range(k1):
        over_flags = routes[b][2]
        for rr in ("out", "back"):
            pts = rails[b][rr]
            segs = polyline_segments(pts)
            acc = arclen_params(pts)
            for si, (p1, p2) in enumerate(segs):
                if abs(p1[1]) < 1e-9 and abs(p2[1]) < 1e-9:
                    continue
                if (p1[1] > 0) != (p2[1] > 0):
                    # crosses the line: which hop?  x position tells
                    t = p1[1] / (p1[1] - p2[1])
                    xx = p1[0] + (p2[0] - p1[0]) * t
                    if abs(xx - pts[0][0]) < 1e-9 or abs(xx - pts[-1][0]) < 1e-9:
                        continue
                    hi = min(
                        range(len(over_flags)),
                        key=lambda h: abs(lane_x[(b, h)] - xx),
                    ) if over_flags else None
                    if hi is None:
                        raise DiagramError("rail crosses the line with no hop")
                    over = over_flags[hi]
                    key = fresh()
                    rail_dir = (p2[0] - p1[0], p2[1] - p1[1])
                    line_dir = (1.0, 0.0)
                    od, ud = (rail_dir, line_dir) if over else (line_dir, rail_dir)
                    det = od[0] * ud[1] - od[1] * ud[0]
                    signs[key] = 1 if det > 0 else -1
                    line_events.append((xx, key, not over))
                    rail_events[b][rr].append((acc[si] + t * (acc[si + 1] - acc[si]), key, over))

    for i in range(k1):
        for j in range(i + 1, k1):
            for ri in ("out", "back"):
                for rj in ("out", "back"):
                    si_ = polyline_segments(rails[i][ri])
                    ai = arclen_params(rails[i][ri])
                    sj_ = polyline_segments(rails[j][rj])
                    for m, (p1, p2) in enumerate(si_):
                        for nn, (q1, q2) in enumerate(sj_):
                            if seg_int(p1, p2, q1, q2):
                                raise DiagramError(
                                    f"undeclared corridor crossing bands {i},{j}"
                                )

    # splices
    rev = {b: rails[b]["out_slot"] != model.alpha.arcs[b].start for b in range(k1)}
    holder = {}
    for b, arc in enumerate(model.alpha.arcs):
        for cid, _ in arc.passages:
            holder.setdefault(cid, []).append(b)
    msigns = {}
    for cid, sgn in model.alpha.sign_map.items():
        a1, a2 = holder[cid]
        msigns[("m", cid)] = -sgn if rev[a1] != rev[a2] else sgn

    stations = []
    for b in range(k1):
        block = []
        for (t, key, over) in sorted(rail_events[b]["out"]):
            block.append((key, over))
        pas = list(model.alpha.arcs[b].passages)
        if rev[b]:
            pas.reverse()
        for cid, o in pas:
            block.append((("m", cid), o))
        for (t, key, over) in sorted(rail_events[b]["back"]):
            block.append((key, over))
        stations.append((feet[b], block))
    for (xx, key, line_over) in line_events:
        stations.append((xx, [(key, line_over)]))
    seq = []
    for xx, block in sorted(stations, key=lambda kv: kv[0]):
        seq.extend(block)
    allsigns = dict(signs)
    allsigns.update(msigns)
    remap = {}
    for key, _o in seq:
        if key not in remap:
            remap[key] = len(remap)
    d = _Events([(remap[k], o) for k, o in seq],
                {remap[k]: v for k, v in allsigns.items()}).to_diagram(check=True)
    return d
