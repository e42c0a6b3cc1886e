"""Local moves on knots built from uni-trivalent trees.

A local move is a pair of tangles in a ball with matching boundary
data; the class-k moves here are produced by repeatedly doubling one
component of the crossing-change template.  Doubling replaces an arc
by two hooked fingers: one runs the old course out and back from the
old start point, the other dips in from the old end point, and the
two clasp each other at the turnaround (two crossings of equal sign).
Deleting either finger frees the other to retract, which is what
makes the doubled move Brunnian, and each doubling raises the move
class by one.

Each tree with k+1 leaves embedded in the disk determines such a
doubling recipe, and the move it generates is a class-k move whose
tangle components correspond to the tree's leaves in boundary order.

Templates cannot be applied to knots directly from this module; that
goes through band descriptions (see bands.py).  What this module can
do is close templates into knots in every planar way and compare the
resulting fingerprints, which is how template equivalences and the
Brunnian property are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
import re
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import (
    DiagramError,
    PlanarDiagram,
    UNKNOT,
    _adjacent_pairs,
    _Events,
    canonical,
    validate,
)
from .invariants import fingerprint

__all__ = [
    "UniTrivalentTree",
    "parse_tree",
    "serialize_tree",
    "diameter",
    "enumerate_trees",
    "TangleArc",
    "TangleDiagram",
    "LocalMoveTemplate",
    "c1_template",
    "double_template",
    "inverse",
    "move_from_tree",
    "is_one_branched",
    "enumerate_closures",
    "close_tangle",
    "template_signature",
    "templates_equivalent",
    "brunnian_check",
    "serialize_template",
]


# -- uni-trivalent trees -------------------------------------------------------------


@dataclass(frozen=True)
class UniTrivalentTree:
    """A tree with all vertices of degree 1 or 3, embedded in the disk.

    ``leaves`` lists the degree-1 vertices in their cyclic boundary
    order; ``spec_edge`` marks the distinguished edge the recursion
    keeps fixed.
    """

    edges: Tuple[Tuple[int, int], ...]
    leaves: Tuple[int, ...]
    spec_edge: Tuple[int, int]

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "spec_edge", tuple(sorted(self.spec_edge)))
        object.__setattr__(self, "leaves", tuple(self.leaves))
        adj: Dict[int, List[int]] = {}
        for u, v in edges:
            if u == v:
                raise DiagramError("tree has a self-loop")
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        if len(set(edges)) != len(edges):
            raise DiagramError("duplicate tree edge")
        verts = set(adj)
        if not verts:
            raise DiagramError("empty tree")
        if len(edges) != len(verts) - 1:
            raise DiagramError("edge count does not match a tree")
        seen = set()
        stack = [next(iter(verts))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        if seen != verts:
            raise DiagramError("tree is not connected")
        for v, nb in adj.items():
            if len(nb) not in (1, 3):
                raise DiagramError(f"vertex {v} has degree {len(nb)}")
        if sorted(self.leaves) != sorted(v for v, nb in adj.items() if len(nb) == 1):
            raise DiagramError("leaf list must be the degree-1 vertices")
        if self.spec_edge not in edges:
            raise DiagramError("specified edge is not a tree edge")

    @property
    def k(self) -> int:
        return len(self.leaves) - 1

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {}
        for u, v in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj


def diameter(g: UniTrivalentTree) -> int:
    """Edge count of the longest path."""

    def far(src):
        dist = {src: 0}
        adj = g.adjacency()
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        v = max(dist, key=lambda x: (dist[x], -x))
        return v, dist[v]

    a, _ = far(g.leaves[0])
    _, d = far(a)
    return d


def serialize_tree(g: UniTrivalentTree) -> str:
    """Canonical one-line form (edges sorted, leaf cycle rotated to its
    lexicographic minimum)."""
    rots = [g.leaves[i:] + g.leaves[:i] for i in range(len(g.leaves))]
    leaves = min(rots)
    edges = ",".join(f"{u}-{v}" for u, v in g.edges)
    return (
        f"TREE: edges={edges}; leaves={','.join(map(str, leaves))}; "
        f"spec={g.spec_edge[0]}-{g.spec_edge[1]}"
    )


_TREE_RE = re.compile(
    r"TREE:\s*edges=([-0-9,]+);\s*leaves=([0-9,]+);\s*spec=(\d+)-(\d+)\Z"
)


def parse_tree(text: str) -> UniTrivalentTree:
    m = _TREE_RE.match(text.strip())
    if not m:
        raise DiagramError(f"malformed tree description {text!r}")
    edges = []
    for part in m.group(1).split(","):
        u, v = part.split("-")
        edges.append((int(u), int(v)))
    leaves = tuple(int(x) for x in m.group(2).split(","))
    return UniTrivalentTree(tuple(edges), leaves, (int(m.group(3)), int(m.group(4))))


def enumerate_trees(k: int) -> List[UniTrivalentTree]:
    """All trees with k+1 leaves up to abstract isomorphism, each with
    one canonical embedding and specified edge.  Supported for k <= 5."""
    if not 1 <= k <= 5:
        raise DiagramError(f"tree enumeration supports 1 <= k <= 5, got {k}")
    shapes = {
        1: [(((0, 1),), (0, 1))],
        2: [(((0, 3), (1, 3), (2, 3)), (0, 1, 2))],
        3: [(((0, 4), (1, 4), (2, 5), (3, 5), (4, 5)), (0, 1, 2, 3))],
        4: [
            (
                ((0, 5), (1, 5), (2, 6), (3, 7), (4, 7), (5, 6), (6, 7)),
                (0, 1, 2, 3, 4),
            )
        ],
        5: [
            (
                ((0, 6), (1, 6), (2, 7), (3, 8), (4, 9), (5, 9),
                 (6, 7), (7, 8), (8, 9)),
                (0, 1, 2, 3, 4, 5),
            ),
            (
                ((0, 7), (1, 7), (2, 8), (3, 8), (4, 9), (5, 9),
                 (6, 7), (6, 8), (6, 9)),
                (0, 1, 2, 3, 4, 5),
            ),
        ],
    }
    out = []
    for edges, leaves in shapes[k]:
        spec = tuple(sorted(sorted(e) for e in edges))[0]
        out.append(UniTrivalentTree(edges, leaves, tuple(spec)))
    return out


# -- tangles ------------------------------------------------------------------------


@dataclass(frozen=True)
class TangleArc:
    """One oriented strand: boundary start, boundary end, and the
    ordered crossings it passes through as (crossing id, is_over)."""

    start: int
    end: int
    passages: Tuple[Tuple[int, bool], ...] = ()


@dataclass(frozen=True)
class TangleDiagram:
    """Arcs properly embedded in a disk, crossings between distinct arcs.

    Boundary positions 0..n_endpoints-1 run counterclockwise.  Signs map
    crossing id to +1/-1 (stored sorted for value equality).
    """

    n_endpoints: int
    arcs: Tuple[TangleArc, ...]
    signs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if isinstance(self.signs, dict):
            object.__setattr__(self, "signs", tuple(sorted(self.signs.items())))
        else:
            object.__setattr__(self, "signs", tuple(sorted(self.signs)))
        ends = [a.start for a in self.arcs] + [a.end for a in self.arcs]
        if sorted(ends) != list(range(self.n_endpoints)):
            raise DiagramError("arc endpoints must partition the boundary")
        holders: Dict[int, List[Tuple[int, bool]]] = {}
        for ai, arc in enumerate(self.arcs):
            for cid, over in arc.passages:
                holders.setdefault(cid, []).append((ai, over))
        smap = self.sign_map
        if set(holders) != set(smap):
            raise DiagramError("crossing ids and signs disagree")
        for cid, hs in holders.items():
            if len(hs) != 2:
                raise DiagramError(f"crossing {cid} must appear exactly twice")
            (a1, o1), (a2, o2) = hs
            if a1 == a2:
                raise DiagramError(f"crossing {cid} is a self-crossing")
            if o1 == o2:
                raise DiagramError(f"crossing {cid} needs one over and one under")
            if smap[cid] not in (1, -1):
                raise DiagramError(f"crossing {cid} has sign {smap[cid]}")

    @property
    def sign_map(self) -> Dict[int, int]:
        return dict(self.signs)

    def boundary(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((a.start, a.end) for a in self.arcs)


# -- move templates -------------------------------------------------------------------


@dataclass(frozen=True)
class LocalMoveTemplate:
    """A pair of tangles over the same boundary; arcs correspond by index.

    A class-k template has k+1 corresponding pairs.  ``genealogy``
    records which pair was doubled at each step up from the
    crossing-change template.
    """

    t1: TangleDiagram
    t2: TangleDiagram
    k: int
    source_tree: Optional[UniTrivalentTree] = None
    genealogy: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.t1.boundary() != self.t2.boundary():
            raise DiagramError("template tangles must share boundary data")
        if len(self.t1.arcs) != self.k + 1:
            raise DiagramError(
                f"class-{self.k} template needs {self.k + 1} components, "
                f"got {len(self.t1.arcs)}"
            )

    @property
    def n_components(self) -> int:
        return len(self.t1.arcs)


def c1_template() -> LocalMoveTemplate:
    """The crossing change: two arcs crossing once, opposite signs."""
    arcs = lambda top_over: (
        TangleArc(0, 2, ((0, top_over),)),
        TangleArc(1, 3, ((0, not top_over),)),
    )
    t1 = TangleDiagram(4, arcs(True), {0: 1})
    t2 = TangleDiagram(4, arcs(False), {0: -1})
    tree = enumerate_trees(1)[0]
    return LocalMoveTemplate(t1, t2, 1, source_tree=tree)


def inverse(m: LocalMoveTemplate) -> LocalMoveTemplate:
    """Swap the two tangles; the class is unchanged."""
    return replace(m, t1=m.t2, t2=m.t1)


# Frozen layout choices for the doubling pattern.  They pin one planar
# picture out of its mirror and rotation variants: which side of the
# course the gate opens to, which split boundary slot each new strand
# leaves first, which of the ring's arms runs nearer the gate's base,
# and the over/under and sign pattern of the two new gate crossings.
# The battery in tools/freeze_doubling.py sweeps every combination and
# keeps one whose models close to pairwise-unlinked circles, stay
# Brunnian through class 4, and leave the class-2 move sharp (able to
# change v2 by exactly one).
_LANE_OUT_ON_LEFT = True
_CLASP_SIGN = 1
_U_SLOT_OUT_FIRST = False
_V_SLOT_IN_FIRST = True
_V_FIRST_ARM_LOW = True
_GATE_U_OVER = True
_GATE_SIGN = 1


def _double_tangle(t: TangleDiagram, pair: int, clasp_sign: int) -> TangleDiagram:
    """Replace arc ``pair`` by two facing hairpins that grab each other.

    Hairpin u keeps both endpoints at the old start and covers only
    the first old crossing: it crosses that strand on the way out,
    turns, and crosses it again on the way back, so the pair cancels.
    Its turn is a gate standing just past that strand.  Hairpin v
    keeps both endpoints at the old end and covers the whole course
    from the other side: its two arms run parallel, cross each
    remaining old strand twice (once per arm, opposite signs), then
    poke through u's gate, cross the first strand, and close in a tip
    just beyond it.  The two gate crossings also cancel, so every
    pairwise linking number stays zero.  Nothing slides apart, though:
    the gate pair, the first strand's pair with u, and its pair with v
    each bound a pocket pierced by one of the other two strands, the
    same mutual grab that holds the three-circle chain-mail pattern
    together.
    """
    old = t.arcs[pair]
    if not old.passages:
        raise DiagramError("cannot double an arc with no crossings")
    smap = t.sign_map
    # the old start splits into u's two slots, the old end into v's
    new_of: Dict[int, int] = {}
    specials: Dict[str, int] = {}
    nxt = 0
    for p in range(t.n_endpoints):
        if p == old.start:
            specials["u_a"] = nxt
            specials["u_b"] = nxt + 1
            nxt += 2
        elif p == old.end:
            specials["v_a"] = nxt
            specials["v_b"] = nxt + 1
            nxt += 2
        else:
            new_of[p] = nxt
            nxt += 1

    fresh = max(smap, default=-1) + 1
    first_cid, first_over = old.passages[0]
    rest = old.passages[1:]
    new_signs: Dict[int, int] = {}
    out_c, back_c = fresh, fresh + 1
    new_signs[out_c] = smap[first_cid]
    new_signs[back_c] = -smap[first_cid]
    fresh += 2
    va_id: Dict[int, int] = {}
    vb_id: Dict[int, int] = {}
    for cid, _ in old.passages:
        # arm a travels against the course, so its sign flips
        va_id[cid], vb_id[cid] = fresh, fresh + 1
        new_signs[fresh] = -smap[cid]
        new_signs[fresh + 1] = smap[cid]
        fresh += 2
    gate_a, gate_b = fresh, fresh + 1
    new_signs[gate_a] = _GATE_SIGN * clasp_sign
    new_signs[gate_b] = -_GATE_SIGN * clasp_sign

    u_start, u_end = specials["u_a"], specials["u_b"]
    if not _U_SLOT_OUT_FIRST:
        u_start, u_end = u_end, u_start
    v_start, v_end = specials["v_a"], specials["v_b"]
    if not _V_SLOT_IN_FIRST:
        v_start, v_end = v_end, v_start

    gates = ((gate_a, _GATE_U_OVER), (gate_b, _GATE_U_OVER))
    if not _V_FIRST_ARM_LOW:
        gates = (gates[1], gates[0])
    u = TangleArc(
        u_start,
        u_end,
        ((out_c, first_over),) + gates + ((back_c, first_over),),
    )
    v = TangleArc(
        v_start,
        v_end,
        tuple((va_id[c], o) for c, o in reversed(rest))
        + ((gate_a, not _GATE_U_OVER), (va_id[first_cid], first_over),
           (vb_id[first_cid], first_over), (gate_b, not _GATE_U_OVER))
        + tuple((vb_id[c], o) for c, o in rest),
    )

    new_arcs: List[TangleArc] = []
    for ai, arc in enumerate(t.arcs):
        if ai == pair:
            new_arcs.append(u)
            new_arcs.append(v)
            continue
        passages: List[Tuple[int, bool]] = []
        for cid, over in arc.passages:
            if cid not in va_id:
                passages.append((cid, over))
                new_signs[cid] = smap[cid]
                continue
            # this strand crosses the two parallel arms (at the first
            # old crossing also u's out and back runs); which lane it
            # meets first depends on the side it enters from, read off
            # the crossing sign and roles
            course_over = not over
            from_left = course_over == (smap[cid] > 0)
            out_side_first = from_left == _LANE_OUT_ON_LEFT
            arms = (va_id[cid], vb_id[cid])
            if not _V_FIRST_ARM_LOW:
                arms = (arms[1], arms[0])
            if cid == first_cid:
                lanes = (out_c,) + arms + (back_c,)
            else:
                lanes = arms
            if not out_side_first:
                lanes = tuple(reversed(lanes))
            passages.extend((lane, over) for lane in lanes)
        new_arcs.append(
            TangleArc(new_of[arc.start], new_of[arc.end], tuple(passages))
        )
    return TangleDiagram(t.n_endpoints + 2, tuple(new_arcs), new_signs)


def double_template(
    m: LocalMoveTemplate, pair: int, clasp_sign: int = _CLASP_SIGN
) -> LocalMoveTemplate:
    """Double one corresponding pair; the result is a class-(k+1) move.

    The doubled pair occupies indices ``pair`` and ``pair + 1`` of the
    result.
    """
    if not 0 <= pair < m.n_components:
        raise DiagramError(f"no corresponding pair {pair}")
    return LocalMoveTemplate(
        _double_tangle(m.t1, pair, clasp_sign),
        _double_tangle(m.t2, pair, clasp_sign),
        m.k + 1,
        source_tree=None,
        genealogy=m.genealogy + (pair,),
    )


# -- tree -> template ------------------------------------------------------------------


def _cherry(g: UniTrivalentTree):
    """A cyclically adjacent leaf pair on one trivalent vertex, avoiding
    the specified edge; returns (i, u, v, w) with i the cyclic index."""
    adj = g.adjacency()
    n = len(g.leaves)
    for i in range(n):
        u, v = g.leaves[i], g.leaves[(i + 1) % n]
        (wu,) = adj[u]
        (wv,) = adj[v]
        if wu != wv:
            continue
        if g.spec_edge in (tuple(sorted((u, wu))), tuple(sorted((v, wv)))):
            continue
        return i, u, v, wu
    raise DiagramError("no reducible leaf pair; tree or specified edge invalid")


def move_from_tree(g: UniTrivalentTree) -> LocalMoveTemplate:
    """Build the class-k move a (k+1)-leaf tree generates.

    Peels cyclically adjacent leaf pairs down to the single edge, then
    re-doubles on the way up, so the genealogy mirrors the tree shape
    and the template's components match the leaf order.
    """
    if g.k == 1:
        return replace(c1_template(), source_tree=g)
    i, u, v, w = _cherry(g)
    n = len(g.leaves)
    reduced_leaves = []
    for j in range(n):
        if g.leaves[j] == v:
            continue
        reduced_leaves.append(w if g.leaves[j] == u else g.leaves[j])
    drop = {tuple(sorted((u, w))), tuple(sorted((v, w)))}
    reduced = UniTrivalentTree(
        tuple(e for e in g.edges if e not in drop),
        tuple(reduced_leaves),
        g.spec_edge,
    )
    inner = move_from_tree(reduced)
    out = double_template(inner, reduced_leaves.index(w))
    return replace(out, source_tree=g)


def is_one_branched(m: LocalMoveTemplate) -> bool:
    """Whether the template's tree is a path between its farthest leaves
    in the strong sense: tree diameter equals the move class."""
    if m.source_tree is None:
        raise DiagramError("template carries no source tree")
    return diameter(m.source_tree) == m.k


# -- closures and template comparison ---------------------------------------------------


def _noncrossing_matchings(points: Sequence[int]):
    if not points:
        yield ()
        return
    first = points[0]
    for i in range(1, len(points), 2):
        for inner in _noncrossing_matchings(points[1:i]):
            for outer in _noncrossing_matchings(points[i + 1 :]):
                yield ((first, points[i]),) + inner + outer


def enumerate_closures(t: TangleDiagram) -> List[Tuple[Tuple[int, int], ...]]:
    """All ways to join boundary points in pairs outside the disk, with
    no two joins crossing, so that arcs plus joins form a single
    circle.  The circle may run along an arc in either direction.

    Each closure is a sorted tuple of position pairs.
    """
    out = []
    for chords in _noncrossing_matchings(tuple(range(t.n_endpoints))):
        try:
            _closure_walk(t, {a: b for p in chords for a, b in (p, p[::-1])})
        except DiagramError:
            continue
        out.append(tuple(sorted(tuple(sorted(p)) for p in chords)))
    return sorted(set(out))


def _closure_walk(t: TangleDiagram, partner: Dict[int, int]):
    """Traverse arcs and joins from arc 0 forward; returns the visit
    order as (arc index, reversed) pairs or raises if the walk misses
    an arc or a join is absent."""
    at_point = {}
    for i, a in enumerate(t.arcs):
        at_point[a.start] = (i, False)
        at_point[a.end] = (i, True)
    order = []
    seen = set()
    ai, rev = 0, False
    while True:
        if ai in seen:
            raise DiagramError("closure does not form a single circle")
        seen.add(ai)
        order.append((ai, rev))
        arc = t.arcs[ai]
        exit_point = arc.start if rev else arc.end
        if exit_point not in partner:
            raise DiagramError(f"closure leaves position {exit_point} open")
        entry = partner[exit_point]
        ai, entered_at_end = at_point[entry]
        rev = entered_at_end
        if (ai, rev) == (0, False):
            break
    if len(seen) != len(t.arcs):
        raise DiagramError("closure does not form a single circle")
    return order


def close_tangle(
    t: TangleDiagram, closure: Sequence[Tuple[int, int]]
) -> PlanarDiagram:
    """Close the tangle along one closure into a knot diagram.

    Arcs the circle runs backward along contribute their passages in
    reverse, and a crossing's sign flips when exactly one of its two
    strands is reversed.
    """
    partner: Dict[int, int] = {}
    for a, b in closure:
        partner[a] = b
        partner[b] = a
    order = _closure_walk(t, partner)
    flipped = {ai: rev for ai, rev in order}
    seq: List[Tuple[int, bool]] = []
    for ai, rev in order:
        passages = t.arcs[ai].passages
        seq.extend(reversed(passages) if rev else passages)
    holder: Dict[int, List[int]] = {}
    for i, a in enumerate(t.arcs):
        for cid, _ in a.passages:
            holder.setdefault(cid, []).append(i)
    signs = {
        cid: s if flipped[holder[cid][0]] == flipped[holder[cid][1]] else -s
        for cid, s in t.sign_map.items()
    }
    ev = _Events(seq, signs)
    # strip kinks while the sequence may lack a diagram encoding
    while True:
        adj = _adjacent_pairs(ev)
        if not adj:
            break
        ev.remove_keys([adj[0][0]])
    if not ev.seq:
        return UNKNOT
    d = ev.to_diagram()
    errs = validate(d)
    if errs:
        raise DiagramError("closure is not planar: " + "; ".join(errs))
    return canonical(d)


def template_signature(m: LocalMoveTemplate) -> Tuple[Tuple[str, str], ...]:
    """Fingerprints of both tangles under every closure, in a fixed
    order.  Equal signatures are necessary for equivalent moves."""
    rows = []
    for closure in enumerate_closures(m.t1):
        f1 = fingerprint(close_tangle(m.t1, closure), allow_partial=True)
        f2 = fingerprint(close_tangle(m.t2, closure), allow_partial=True)
        rows.append((f1.serialize(), f2.serialize()))
    return tuple(rows)


def templates_equivalent(a: LocalMoveTemplate, b: LocalMoveTemplate) -> bool:
    """Necessary-condition test: same boundary arity and class, and the
    same set of (before, after) closure fingerprint pairs.

    Compared as sets: two presentations of one move need not admit the
    same number of closures (a re-embedding can trade boundary joins
    for spanning arcs), but every knot pair one presentation realizes
    under some closure the other must realize as well.
    """
    if a.t1.n_endpoints != b.t1.n_endpoints or a.k != b.k:
        return False
    return set(template_signature(a)) == set(template_signature(b))


def _delete_arc(t: TangleDiagram, idx: int) -> TangleDiagram:
    gone = {cid for cid, _ in t.arcs[idx].passages}
    old_positions = sorted(
        p
        for i, a in enumerate(t.arcs)
        if i != idx
        for p in (a.start, a.end)
    )
    renum = {p: i for i, p in enumerate(old_positions)}
    arcs = tuple(
        TangleArc(
            renum[a.start],
            renum[a.end],
            tuple((c, o) for c, o in a.passages if c not in gone),
        )
        for i, a in enumerate(t.arcs)
        if i != idx
    )
    signs = {c: s for c, s in t.sign_map.items() if c not in gone}
    return TangleDiagram(t.n_endpoints - 2, arcs, signs)


def brunnian_check(m: LocalMoveTemplate) -> bool:
    """Deleting any corresponding pair must leave both sides identical
    under every closure fingerprint."""
    for idx in range(m.n_components):
        r1 = _delete_arc(m.t1, idx)
        r2 = _delete_arc(m.t2, idx)
        for closure in enumerate_closures(r1):
            f1 = fingerprint(close_tangle(r1, closure), allow_partial=True)
            f2 = fingerprint(close_tangle(r2, closure), allow_partial=True)
            if f1 != f2:
                return False
    return True


def serialize_template(m: LocalMoveTemplate) -> str:
    """Readable one-way dump of a template (trees round-trip; this does
    not)."""
    lines = [f"TEMPLATE k={m.k} components={m.n_components}"]
    if m.source_tree is not None:
        lines.append(serialize_tree(m.source_tree))
    if m.genealogy:
        lines.append("doubled pairs: " + ",".join(map(str, m.genealogy)))
    for tag, t in (("T1", m.t1), ("T2", m.t2)):
        smap = t.sign_map
        for arc in t.arcs:
            body = " ".join(
                f"c{cid}{'o' if over else 'u'}{'+' if smap[cid] > 0 else '-'}"
                for cid, over in arc.passages
            )
            lines.append(f"{tag} arc {arc.start}->{arc.end}: {body}".rstrip())
    return "\n".join(lines) + "\n"
