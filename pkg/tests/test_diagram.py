import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckbands.diagram import (
    UNKNOT,
    DiagramError,
    UnrepresentableDiagramError,
    canonical,
    connected_sum,
    faces,
    gauss_diagram,
    mirror,
    parse_pd,
    random_move,
    reidemeister,
    reidemeister_sites,
    serialize,
    simplify,
    switch_crossing,
    validate,
)

TREFOIL = "PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIG8 = "PD: X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
R2_UNKNOT = "PD: X(1,1,2,4) X(2,3,3,4)"


def test_parse_rejects_garbage():
    for bad in ("X(1,2,3,4)", "PD: X(1,2,3)", "PD: Y(1,2,3,4)", "PD: X(1,2,3,4) junk"):
        with pytest.raises(DiagramError):
            parse_pd(bad)


def test_parse_empty_is_unknot():
    assert parse_pd("PD:") == UNKNOT
    assert serialize(UNKNOT) == "PD:"
    assert validate(UNKNOT) == []
    assert faces(UNKNOT) == ()


def test_trefoil_basics():
    d = parse_pd(TREFOIL)
    assert validate(d) == []
    assert d.signs == (1, 1, 1)
    assert d.writhe == 3
    assert sorted(len(f) for f in faces(d)) == [2, 2, 2, 3, 3]


def test_figure_eight_basics():
    d = parse_pd(FIG8)
    assert validate(d) == []
    assert sorted(d.signs) == [-1, -1, 1, 1]
    assert d.writhe == 0
    assert len(faces(d)) == 6


def test_kinks():
    pos1 = parse_pd("PD: X(1,2,2,1)")
    pos2 = parse_pd("PD: X(2,1,1,2)")
    assert pos1.signs == (1,) and pos2.signs == (1,)
    assert sorted(len(f) for f in faces(pos1)) == [1, 1, 2]
    with pytest.raises(DiagramError):
        parse_pd("PD: X(1,1,2,2)")


def test_validate_names_offending_tokens():
    with pytest.raises(DiagramError) as exc:
        parse_pd("PD: X(1,3,2,4)")
    assert "X(1,3,2,4)" in str(exc.value)


def test_euler_check_rejects_nonplanar():
    # consistent transitions but genus 1
    from ckbands.diagram import PlanarDiagram

    with pytest.raises(DiagramError):
        parse_pd("PD: X(3,1,4,2) X(4,3,1,2)")
    d = PlanarDiagram(((3, 1, 4, 2), (4, 3, 1, 2)))
    msgs = validate(d)
    assert msgs and any("planar" in m for m in msgs)


def test_canonical_round_trip():
    for s in (TREFOIL, FIG8, R2_UNKNOT):
        d = canonical(parse_pd(s))
        assert parse_pd(serialize(d)) == d
        assert canonical(d) == d


def test_canonical_is_rotation_invariant():
    d = parse_pd(TREFOIL)
    # relabel edges by a rotation: the canonical form must not move
    n = d.n_crossings

    def rot(lbl, r):
        return (lbl - 1 + r) % (2 * n) + 1

    for r in range(1, 2 * n):
        rotated = parse_pd(
            "PD: " + " ".join(
                "X({},{},{},{})".format(*(rot(x, r) for x in c)) for c in d.crossings
            )
        )
        assert canonical(rotated) == canonical(d)


def test_simplify_r2_unknot():
    d = parse_pd(R2_UNKNOT)
    assert validate(d) == []
    assert simplify(d) == UNKNOT


def test_simplify_kink_chain():
    d = parse_pd("PD: X(1,2,2,1)")
    assert simplify(d) == UNKNOT


def test_mirror():
    d = parse_pd(TREFOIL)
    m = mirror(d)
    assert validate(m) == []
    assert m.writhe == -3
    assert canonical(mirror(m)) == canonical(d)
    with pytest.raises(UnrepresentableDiagramError):
        mirror(parse_pd("PD: X(1,2,2,1)"))


def test_switch_crossing():
    d = parse_pd(TREFOIL)
    for i in range(3):
        s = switch_crossing(d, i)
        assert validate(s) == []
        assert s.writhe == 1
        assert simplify(s) == UNKNOT  # unknotting number one
    with pytest.raises(DiagramError):
        switch_crossing(d, 7)


def test_connected_sum():
    a = parse_pd(TREFOIL)
    b = parse_pd(FIG8)
    s = connected_sum(a, b)
    assert validate(s) == []
    assert s.n_crossings == 7
    assert s.writhe == a.writhe + b.writhe
    assert connected_sum(a, UNKNOT) == canonical(a) or validate(
        connected_sum(a, UNKNOT)
    ) == []


def test_gauss_diagram_partition():
    g = gauss_diagram(parse_pd(TREFOIL))
    assert g.n == 3
    ends = sorted(p for _, o, u in g.chords for p in (o, u))
    assert ends == list(range(1, 7))
    assert all(s == 1 for s, _, _ in g.chords)


def test_r1_plus_then_simplify():
    d = parse_pd(TREFOIL)
    sites = reidemeister_sites(d, "R1+")
    assert sites
    out = reidemeister(d, "R1+", sites[0])
    assert validate(out) == []
    assert out.n_crossings == 4
    assert abs(out.writhe - d.writhe) == 1
    assert canonical(simplify(out)) == canonical(simplify(d))


def test_r1_minus_on_kink():
    d = parse_pd("PD: X(1,2,2,1)")
    sites = reidemeister_sites(d, "R1-")
    assert sites
    assert reidemeister(d, "R1-", sites[0]) == UNKNOT


def test_r2_round_trip():
    d = parse_pd(FIG8)
    for site in reidemeister_sites(d, "R2+")[:6]:
        out = reidemeister(d, "R2+", site)
        assert validate(out) == []
        assert out.n_crossings == 6
        assert out.writhe == d.writhe
        back_sites = reidemeister_sites(out, "R2-")
        assert any(
            canonical(reidemeister(out, "R2-", b)) == canonical(d)
            for b in back_sites
        )


def test_r2_minus_sites_on_reduced_diagrams():
    assert reidemeister_sites(parse_pd(TREFOIL), "R2-") == []
    assert reidemeister_sites(parse_pd(R2_UNKNOT), "R2-")


def test_r3_preserves_writhe_and_validity():
    rng = random.Random(12)
    d = parse_pd(FIG8)
    applied = 0
    for _ in range(200):
        kind, site, d = random_move(d, rng, max_crossings=10)
        assert validate(d) == []
        if kind == "R3":
            applied += 1
    assert applied > 0


def test_random_walk_stays_valid_and_writhe_tracks_kind():
    rng = random.Random(7)
    d = parse_pd(TREFOIL)
    for _ in range(120):
        w = d.writhe
        kind, site, d = random_move(d, rng, max_crossings=12)
        assert validate(d) == []
        if kind in ("R2+", "R2-", "R3"):
            assert d.writhe == w
        else:
            assert abs(d.writhe - w) == 1


def test_unknot_has_only_growing_moves():
    assert reidemeister_sites(UNKNOT, "R1-") == []
    assert reidemeister_sites(UNKNOT, "R2-") == []
    assert reidemeister_sites(UNKNOT, "R3") == []
    s1 = reidemeister_sites(UNKNOT, "R1+")
    assert s1
    k = reidemeister(UNKNOT, "R1+", s1[0])
    assert k.n_crossings == 1 and k.signs == (1,)
    s2 = reidemeister_sites(UNKNOT, "R2+")
    assert s2
    u2 = reidemeister(UNKNOT, "R2+", s2[0])
    assert u2.n_crossings == 2 and sorted(u2.signs) == [-1, 1]


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_walked_diagrams_survive_serialize_parse(seed):
    rng = random.Random(seed)
    d = parse_pd(TREFOIL)
    for _ in range(6):
        _, _, d = random_move(d, rng, max_crossings=10)
    assert parse_pd(serialize(d)) == canonical(d)
    assert validate(parse_pd(serialize(d))) == []


@given(st.text(max_size=40))
@settings(max_examples=60)
def test_parser_never_crashes(text):
    try:
        parse_pd(text)
    except DiagramError:
        pass
