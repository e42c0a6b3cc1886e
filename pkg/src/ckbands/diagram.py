"""Planar diagram core for oriented knots.

A diagram is a PD code: one 4-tuple of edge labels per crossing.  Edge
labels run 1..2n consecutively along the knot from a basepoint.  Tuple
convention: the under-strand enters at the first slot and exits at the
third; the over-strand occupies the second and fourth slots, entering
at the second exactly when the fourth is its successor label.  The four
slots list the four ports in their cyclic order around the crossing.
Crossing sign is +1 exactly when the over-strand enters at the second
slot.

The empty code is the unknot.  All rewriting is done on an internal
passage-sequence view (the knot as a cyclic word of crossing visits)
and converted back to PD tuples at the end; the conversion validates
the result, including an Euler-characteristic planarity check, so any
internal inconsistency surfaces immediately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

__all__ = [
    "Crossing",
    "Dart",
    "DiagramError",
    "UnrepresentableDiagramError",
    "PlanarDiagram",
    "GaussDiagram",
    "UNKNOT",
    "parse_pd",
    "serialize",
    "validate",
    "canonical",
    "faces",
    "mirror",
    "switch_crossing",
    "connected_sum",
    "gauss_diagram",
    "reidemeister",
    "reidemeister_sites",
    "simplify",
    "random_move",
]

Crossing = Tuple[int, int, int, int]
Dart = Tuple[int, int]  # (crossing index, slot 0..3)

R_KINDS = ("R1+", "R1-", "R2+", "R2-", "R3")


class DiagramError(ValueError):
    """Malformed or inconsistent diagram data."""


class UnrepresentableDiagramError(DiagramError):
    """The requested rewrite result has no PD encoding.

    The one problem case is a single-crossing diagram whose kink is
    negative: the successor rule then reads the over entry off the
    second slot and the code collides with the under transition.
    Callers treat this as "site not admissible" and pick another site.
    """


def _succ(label: int, m: int) -> int:
    return label % m + 1


def _token(c: Sequence[int]) -> str:
    return "X(" + ",".join(str(x) for x in c) + ")"


@dataclass(frozen=True)
class _Analysis:
    errors: Tuple[str, ...]
    over_ins: Tuple[int, ...]
    signs: Tuple[int, ...]


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented knot diagram, immutable.

    ``crossings`` is a tuple of 4-tuples of edge labels.  Equality and
    hashing are structural; use :func:`canonical` before comparing
    diagrams that may differ only by basepoint choice.
    """

    crossings: Tuple[Crossing, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "crossings",
            tuple(tuple(int(x) for x in c) for c in self.crossings),
        )

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def _analysis(self) -> _Analysis:
        return _analyze(self)

    @property
    def signs(self) -> Tuple[int, ...]:
        self._require_valid()
        return self._analysis.signs

    @property
    def over_ins(self) -> Tuple[int, ...]:
        """Edge label entering the over-strand, per crossing."""
        self._require_valid()
        return self._analysis.over_ins

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def _require_valid(self):
        if self._analysis.errors:
            raise DiagramError("; ".join(self._analysis.errors))

    def __str__(self) -> str:
        return serialize(self, canonicalize=False)


UNKNOT = PlanarDiagram()


def _analyze(d: PlanarDiagram) -> _Analysis:
    n = len(d.crossings)
    m = 2 * n
    errors: List[str] = []
    for c in d.crossings:
        if len(c) != 4:
            errors.append(f"token {_token(c)}: expected 4 edge labels")
    if errors:
        return _Analysis(tuple(errors), (), ())

    counts: Dict[int, int] = {}
    for c in d.crossings:
        for x in c:
            if not 1 <= x <= m:
                errors.append(f"token {_token(c)}: edge label {x} out of range 1..{m}")
            counts[x] = counts.get(x, 0) + 1
    for lab in sorted(counts):
        if 1 <= lab <= m and counts[lab] != 2:
            errors.append(f"edge label {lab} appears {counts[lab]} times (expected 2)")
    if errors:
        return _Analysis(tuple(errors), (), ())

    over_ins: List[int] = []
    signs: List[int] = []
    for c in d.crossings:
        a, b, cc, dd = c
        if cc != _succ(a, m):
            errors.append(
                f"token {_token(c)}: under-strand exit {cc} does not follow entry {a}"
            )
            over_ins.append(0)
            signs.append(0)
            continue
        if _succ(b, m) == dd:
            over_ins.append(b)
            signs.append(1)
        elif _succ(dd, m) == b:
            over_ins.append(dd)
            signs.append(-1)
        else:
            errors.append(f"token {_token(c)}: inconsistent traversal at over-strand")
            over_ins.append(0)
            signs.append(0)
    if errors:
        return _Analysis(tuple(errors), tuple(over_ins), tuple(signs))

    # The 2n strand transitions must be pairwise distinct, which forces a
    # single closed component.
    sources = [c[0] for c in d.crossings] + list(over_ins)
    if len(set(sources)) != m:
        dup = sorted(x for x in set(sources) if sources.count(x) > 1)
        errors.append(
            f"inconsistent traversal: transition from edge {dup[0]} used twice "
            "(multiple components or bad over-strand slots)"
        )
        return _Analysis(tuple(errors), tuple(over_ins), tuple(signs))

    if n and len(_faces_of(d)) != n + 2:
        errors.append("diagram is not planar (Euler face count mismatch)")
    return _Analysis(tuple(errors), tuple(over_ins), tuple(signs))


# -- parsing / serialization ------------------------------------------------

_TOKEN_RE = re.compile(r"X\((\d+),(\d+),(\d+),(\d+)\)\Z")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse one ``PD:`` line into a validated diagram."""
    body = text.strip()
    if not body.startswith("PD:"):
        raise DiagramError(f"line must start with 'PD:': {body[:40]!r}")
    crossings = []
    for tok in body[3:].split():
        mt = _TOKEN_RE.match(tok)
        if not mt:
            raise DiagramError(f"malformed token {tok!r}")
        crossings.append(tuple(int(g) for g in mt.groups()))
    d = PlanarDiagram(tuple(crossings))
    errs = validate(d)
    if errs:
        raise DiagramError("; ".join(errs))
    return d


def serialize(d: PlanarDiagram, canonicalize: bool = True) -> str:
    """Render a diagram as a ``PD:`` line, canonically renumbered by default."""
    if canonicalize:
        d = canonical(d)
    if not d.crossings:
        return "PD:"
    return "PD: " + " ".join(_token(c) for c in d.crossings)


def validate(d: PlanarDiagram) -> List[str]:
    """Return all invariant violations (empty list means the diagram is valid)."""
    return list(d._analysis.errors)


def canonical(d: PlanarDiagram) -> PlanarDiagram:
    """Renumber edges canonically.

    Among the rotations of the labeling that place label 1 on an
    under-strand entry, pick the one whose sorted tuple list is
    lexicographically least.  Equal diagrams up to basepoint choice get
    identical canonical forms, which makes serialization stable.
    """
    d._require_valid()
    n = d.n_crossings
    if n == 0:
        return d
    m = 2 * n
    best: Optional[Tuple[Crossing, ...]] = None
    for c in d.crossings:
        shift = c[0] - 1
        relabeled = sorted(
            tuple((x - 1 - shift) % m + 1 for x in cr) for cr in d.crossings
        )
        cand = tuple(relabeled)
        if best is None or cand < best:
            best = cand
    return PlanarDiagram(best)


# -- faces -------------------------------------------------------------------


def _faces_of(d: PlanarDiagram) -> Tuple[Tuple[Dart, ...], ...]:
    slots: Dict[int, List[Dart]] = {}
    for i, c in enumerate(d.crossings):
        for p, lab in enumerate(c):
            slots.setdefault(lab, []).append((i, p))
    theta: Dict[Dart, Dart] = {}
    for ds in slots.values():
        a, b = ds
        theta[a] = b
        theta[b] = a
    seen = set()
    out = []
    for i in range(len(d.crossings)):
        for p in range(4):
            start = (i, p)
            if start in seen:
                continue
            face = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                k, q = theta[cur]
                cur = (k, (q + 1) % 4)
            out.append(tuple(face))
    return tuple(out)


def faces(d: PlanarDiagram) -> Tuple[Tuple[Dart, ...], ...]:
    """All faces as dart cycles.

    A dart ``(i, p)`` stands for the boundary walk traversing the edge
    at slot p of crossing i away from that crossing; walks keep the
    face interior on their left.  A valid n-crossing diagram has n+2
    faces.
    """
    d._require_valid()
    return _faces_of(d)


def dart_edge(d: PlanarDiagram, dart: Dart) -> int:
    i, p = dart
    return d.crossings[i][p]


def _dart_is_out(d: PlanarDiagram, dart: Dart) -> bool:
    """True when the edge at this dart leaves the crossing here."""
    i, p = dart
    if p == 2:
        return True
    if p == 0:
        return False
    s = d._analysis.signs[i]
    return (p == 3) == (s > 0)


# -- passage-sequence view ----------------------------------------------------


class _Events:
    """The knot as a cyclic passage list plus a sign per crossing.

    ``seq[i]`` is the (key, is_over) passage consuming edge i+1; keys are
    arbitrary hashables local to one rewrite.  Rewrites edit the list and
    convert back, so intermediate states that have no PD encoding (the
    negative single kink) never need tuples.
    """

    __slots__ = ("seq", "signs")

    def __init__(self, seq, signs):
        self.seq: List[Tuple[object, bool]] = list(seq)
        self.signs: Dict[object, int] = dict(signs)

    @classmethod
    def from_diagram(cls, d: PlanarDiagram) -> "_Events":
        d._require_valid()
        n = d.n_crossings
        seq: List[Optional[Tuple[object, bool]]] = [None] * (2 * n)
        an = d._analysis
        for i, c in enumerate(d.crossings):
            seq[c[0] - 1] = (i, False)
            seq[an.over_ins[i] - 1] = (i, True)
        return cls(seq, {i: s for i, s in enumerate(an.signs)})

    def positions(self) -> Dict[object, Dict[bool, int]]:
        pos: Dict[object, Dict[bool, int]] = {}
        for idx, (k, o) in enumerate(self.seq):
            pos.setdefault(k, {})[o] = idx
        return pos

    def to_diagram(self, check: bool = True) -> PlanarDiagram:
        n = len(self.seq) // 2
        if n == 0:
            return PlanarDiagram()
        m = 2 * n
        rows = []
        for key, pp in self.positions().items():
            s = self.signs[key]
            if n == 1 and s < 0:
                raise UnrepresentableDiagramError(
                    "negative single kink has no PD encoding"
                )
            a = pp[False] + 1
            c = _succ(a, m)
            oi = pp[True] + 1
            oo = _succ(oi, m)
            b, dd = (oi, oo) if s > 0 else (oo, oi)
            rows.append((a, b, c, dd))
        rows.sort()
        d = PlanarDiagram(tuple(rows))
        if check:
            errs = validate(d)
            if errs:
                raise DiagramError(
                    "rewrite produced an invalid diagram: " + "; ".join(errs)
                )
        return d

    def insert(self, index: int, items) -> None:
        self.seq[index:index] = list(items)

    def remove_keys(self, keys) -> None:
        drop = set(keys)
        self.seq = [ev for ev in self.seq if ev[0] not in drop]
        for k in drop:
            self.signs.pop(k, None)

    def fresh_key(self) -> int:
        k = 0
        while k in self.signs:
            k += 1
        return k


# -- elementary rewrites -------------------------------------------------------


def _adjacent_pairs(ev: _Events):
    """Crossing keys whose two passages are cyclically adjacent, with
    the smaller position first (wrap pairs report position len-1)."""
    m = len(ev.seq)
    out = []
    pos = ev.positions()
    for key, pp in pos.items():
        i, j = sorted(pp.values())
        if j - i == 1:
            out.append((key, i))
        elif i == 0 and j == m - 1:
            out.append((key, j))
    return out


def _apply_r1_plus(ev: _Events, edge: int, sign: int, over_first: bool) -> None:
    m = len(ev.seq)
    if m == 0:
        if edge != 1:
            raise DiagramError("unknot has a single edge; use edge=1")
    elif not 1 <= edge <= m:
        raise DiagramError(f"edge {edge} out of range 1..{m}")
    if sign not in (1, -1):
        raise DiagramError("kink sign must be +1 or -1")
    k = ev.fresh_key()
    ev.signs[k] = sign
    ev.insert(edge - 1 if m else 0, [(k, over_first), (k, not over_first)])


def _apply_r1_minus(ev: _Events, key) -> None:
    pos = ev.positions()[key]
    i, j = sorted(pos.values())
    m = len(ev.seq)
    if not (j - i == 1 or (i == 0 and j == m - 1)):
        raise DiagramError("site does not admit R1-: passages not adjacent")
    ev.remove_keys([key])


def _apply_r2_minus(ev: _Events, key_a, key_b) -> None:
    ev.remove_keys([key_a, key_b])


def _apply_r2_plus(
    ev: _Events,
    edge_e: int,
    edge_f: int,
    s_e: int,
    s_f: int,
    e_over: bool,
) -> None:
    """Push edge e across edge f through a shared face.

    ``s_e``/``s_f`` say whether the face boundary runs along each edge
    with (+1) or against (-1) the knot orientation; they fix both the
    insertion order and the two new crossing signs.
    """
    x = ev.fresh_key()
    ev.signs[x] = 0  # placeholder, set below
    y = ev.fresh_key()
    base = s_e * s_f * (1 if e_over else -1)
    ev.signs[x] = base
    ev.signs[y] = -base
    on_e = [(x, e_over), (y, e_over)] if s_e > 0 else [(y, e_over), (x, e_over)]
    on_f = [(y, not e_over), (x, not e_over)] if s_f > 0 else [(x, not e_over), (y, not e_over)]
    first, second = sorted(
        [(edge_e, on_e), (edge_f, on_f)], key=lambda t: t[0], reverse=True
    )
    ev.insert(first[0] - 1, first[1])
    ev.insert(second[0] - 1, second[1])


def _apply_r3(ev: _Events, edge_labels) -> None:
    # Swap the flanking passage pair of each triangle edge; signs ride
    # along with their keys.
    m = len(ev.seq)
    for lab in edge_labels:
        i = (lab - 2) % m
        j = (lab - 1) % m
        ev.seq[i], ev.seq[j] = ev.seq[j], ev.seq[i]


# -- site discovery -------------------------------------------------------------


def _r1_minus_sites(d: PlanarDiagram):
    ev = _Events.from_diagram(d)
    return [key for key, _ in _adjacent_pairs(ev)]


def _edge_flank_roles(d: PlanarDiagram, lab: int):
    """(events, roles) flanking edge lab in the passage sequence."""
    ev = _Events.from_diagram(d)
    m = len(ev.seq)
    i = (lab - 2) % m
    j = (lab - 1) % m
    return (ev.seq[i], ev.seq[j])


def _r2_minus_sites(d: PlanarDiagram):
    sites = []
    for face in _faces_of(d):
        if len(face) != 2:
            continue
        (i1, p1), (i2, p2) = face
        if i1 == i2:
            continue
        lab1 = d.crossings[i1][p1]
        ev_a, ev_b = _edge_flank_roles(d, lab1)
        if ev_a[1] != ev_b[1]:
            continue
        if {ev_a[0], ev_b[0]} != {i1, i2}:
            continue
        an = d._analysis
        if an.signs[i1] == an.signs[i2]:
            # a uniform bigon always has opposite signs; anything else
            # means the face data is broken
            raise DiagramError("bigon with equal signs; invalid diagram state")
        sites.append(tuple(sorted((i1, i2))))
    return sorted(set(sites))


def _r2_plus_sites(d: PlanarDiagram):
    if d.n_crossings == 0:
        # poke the lone strand across itself
        return [(None, None, True), (None, None, False)]
    sites = []
    for face in _faces_of(d):
        for ai in range(len(face)):
            for bi in range(ai + 1, len(face)):
                da, db = face[ai], face[bi]
                if dart_edge(d, da) == dart_edge(d, db):
                    continue
                sites.append((da, db, True))
                sites.append((da, db, False))
    return sites


def _r3_sites(d: PlanarDiagram):
    sites = []
    for face in _faces_of(d):
        if len(face) != 3:
            continue
        corners = {i for i, _ in face}
        labs = {dart_edge(d, dart) for dart in face}
        if len(corners) != 3 or len(labs) != 3:
            continue
        over_over = 0
        under_under = 0
        for lab in labs:
            ev_a, ev_b = _edge_flank_roles(d, lab)
            if ev_a[1] and ev_b[1]:
                over_over += 1
            if not ev_a[1] and not ev_b[1]:
                under_under += 1
        if over_over == 1 and under_under == 1:
            sites.append(tuple(sorted(corners)))
    return sorted(set(sites))


def _r1_plus_sites(d: PlanarDiagram):
    m = 2 * d.n_crossings
    edges = range(1, m + 1) if m else [1]
    sites = []
    for e in edges:
        for sign in (1, -1):
            for over_first in (True, False):
                if d.n_crossings == 0 and sign < 0:
                    continue  # no PD encoding for the lone negative kink
                sites.append((e, sign, over_first))
    return sites


def reidemeister_sites(d: PlanarDiagram, kind: str):
    """Enumerate admissible sites for one move kind on this diagram."""
    d._require_valid()
    if kind == "R1+":
        return _r1_plus_sites(d)
    if kind == "R1-":
        return _r1_minus_sites(d)
    if kind == "R2+":
        return _r2_plus_sites(d)
    if kind == "R2-":
        return _r2_minus_sites(d)
    if kind == "R3":
        return _r3_sites(d)
    raise DiagramError(f"unknown move kind {kind!r}")


# -- move application ------------------------------------------------------------


def reidemeister(d: PlanarDiagram, kind: str, site) -> PlanarDiagram:
    """Apply one Reidemeister move at a named site.

    Site formats:
      R1+   (edge, sign, over_first)
      R1-   crossing index
      R2+   (dart, dart, first_dart_over) with both darts on one face
      R2-   (crossing index, crossing index)
      R3    (i, j, k) corners of an admissible triangular face

    Raises DiagramError when the site does not admit the move and
    UnrepresentableDiagramError when the result has no PD encoding.
    """
    d._require_valid()
    ev = _Events.from_diagram(d)
    if kind == "R1+":
        edge, sign, over_first = site
        _apply_r1_plus(ev, int(edge), int(sign), bool(over_first))
    elif kind == "R1-":
        key = int(site if not isinstance(site, (tuple, list)) else site[0])
        if key not in ev.signs:
            raise DiagramError(f"no crossing {key}")
        _apply_r1_minus(ev, key)
    elif kind == "R2+":
        da, db, e_over = site
        if da is None or db is None:
            if d.n_crossings:
                raise DiagramError("self-poke site requires the 0-crossing diagram")
            x = ev.fresh_key()
            ev.signs[x] = 1 if e_over else -1
            y = ev.fresh_key()
            ev.signs[y] = -ev.signs[x]
            ev.seq = [
                (x, bool(e_over)),
                (y, bool(e_over)),
                (y, not e_over),
                (x, not e_over),
            ]
            return canonical(ev.to_diagram())
        da = tuple(da)
        db = tuple(db)
        face = next(
            (f for f in _faces_of(d) if da in f and db in f),
            None,
        )
        if face is None:
            raise DiagramError("site does not admit R2+: darts not on one face")
        le, lf = dart_edge(d, da), dart_edge(d, db)
        if le == lf:
            raise DiagramError("site does not admit R2+: need two distinct edges")
        s_e = 1 if _dart_is_out(d, da) else -1
        s_f = 1 if _dart_is_out(d, db) else -1
        _apply_r2_plus(ev, le, lf, s_e, s_f, bool(e_over))
    elif kind == "R2-":
        i, j = site
        if tuple(sorted((int(i), int(j)))) not in _r2_minus_sites(d):
            raise DiagramError(f"site does not admit R2-: ({i},{j})")
        _apply_r2_minus(ev, int(i), int(j))
    elif kind == "R3":
        corners = tuple(sorted(int(x) for x in site))
        if corners not in _r3_sites(d):
            raise DiagramError(f"site does not admit R3: {corners}")
        face = next(
            f
            for f in _faces_of(d)
            if len(f) == 3 and tuple(sorted(i for i, _ in f)) == corners
        )
        _apply_r3(ev, [dart_edge(d, dart) for dart in face])
    else:
        raise DiagramError(f"unknown move kind {kind!r}")
    return canonical(ev.to_diagram())


def simplify(d: PlanarDiagram) -> PlanarDiagram:
    """Greedy reduction: peel kinks and uniform bigons until none remain.

    Works entirely on the passage sequence so intermediates that lack a
    PD encoding are fine.
    """
    d._require_valid()
    ev = _Events.from_diagram(d)
    changed = True
    while changed and ev.seq:
        changed = False
        adj = _adjacent_pairs(ev)
        if adj:
            ev.remove_keys([adj[0][0]])
            changed = True
            continue
        # no kinks: a PD encoding exists (n != 1 here), so face data is
        # available for bigon detection
        cur = ev.to_diagram(check=False)
        if validate(cur):
            raise DiagramError("simplify reached an invalid state")
        pairs = _r2_minus_sites(cur)
        if pairs:
            evc = _Events.from_diagram(cur)
            _apply_r2_minus(evc, *pairs[0])
            ev = evc
            changed = True
    return canonical(ev.to_diagram())


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under strands at every crossing.

    The projection is unchanged, every sign flips.  The positive kink
    has no encodable mirror; that raises UnrepresentableDiagramError.
    """
    ev = _Events.from_diagram(d)
    ev.seq = [(k, not o) for k, o in ev.seq]
    ev.signs = {k: -s for k, s in ev.signs.items()}
    return canonical(ev.to_diagram())


def switch_crossing(d: PlanarDiagram, index: int) -> PlanarDiagram:
    """Flip over/under at a single crossing."""
    ev = _Events.from_diagram(d)
    if index not in ev.signs:
        raise DiagramError(f"no crossing {index}")
    ev.seq = [(k, (not o) if k == index else o) for k, o in ev.seq]
    ev.signs[index] = -ev.signs[index]
    return canonical(ev.to_diagram())


def connected_sum(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Splice the two knots at their basepoints, respecting orientation."""
    ev1 = _Events.from_diagram(d1)
    ev2 = _Events.from_diagram(d2)
    off = d1.n_crossings
    seq = list(ev1.seq) + [(k + off, o) for k, o in ev2.seq]
    signs = dict(ev1.signs)
    signs.update({k + off: s for k, s in ev2.signs.items()})
    return canonical(_Events(seq, signs).to_diagram())


# -- Gauss diagrams ----------------------------------------------------------------


@dataclass(frozen=True)
class GaussDiagram:
    """A circle of 2n passage endpoints with one signed chord per crossing.

    Chords are (sign, over position, under position); positions are the
    1-based edge labels entering each passage, so they partition 1..2n.
    """

    n: int
    chords: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        ends = [p for _, o, u in self.chords for p in (o, u)]
        if sorted(ends) != list(range(1, 2 * self.n + 1)):
            raise DiagramError("chord endpoints must partition 1..2n")


def gauss_diagram(d: PlanarDiagram) -> GaussDiagram:
    d._require_valid()
    an = d._analysis
    chords = tuple(
        sorted(
            (an.signs[i], an.over_ins[i], c[0])
            for i, c in enumerate(d.crossings)
        )
    )
    return GaussDiagram(d.n_crossings, chords)


# -- randomized move walks -----------------------------------------------------------


def random_move(d: PlanarDiagram, rng, max_crossings: int = 16):
    """Pick and apply one random admissible move; returns (kind, site, result).

    Above ``max_crossings`` only shrinking or neutral moves are drawn so
    fuzz walks stay desk-sized.
    """
    grow = ["R1+", "R2+"]
    shrink = ["R1-", "R2-", "R3"]
    kinds = shrink + (grow if d.n_crossings < max_crossings else [])
    rng.shuffle(kinds)
    for kind in kinds:
        sites = reidemeister_sites(d, kind)
        if not sites:
            continue
        site = sites[rng.randrange(len(sites))]
        try:
            return kind, site, reidemeister(d, kind, site)
        except UnrepresentableDiagramError:
            continue
    raise DiagramError("no admissible move found")
