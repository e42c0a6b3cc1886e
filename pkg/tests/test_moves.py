import pytest

from ckbands.diagram import DiagramError, UNKNOT
from ckbands.invariants import fingerprint
from ckbands.moves import (
    LocalMoveTemplate,
    TangleArc,
    TangleDiagram,
    UniTrivalentTree,
    brunnian_check,
    c1_template,
    close_tangle,
    diameter,
    double_template,
    enumerate_closures,
    enumerate_trees,
    inverse,
    is_one_branched,
    move_from_tree,
    parse_tree,
    serialize_template,
    serialize_tree,
    templates_equivalent,
)


# -- trees ---------------------------------------------------------------------------


def test_tree_counts_and_diameters():
    assert [len(enumerate_trees(k)) for k in range(1, 6)] == [1, 1, 1, 1, 2]
    assert [diameter(enumerate_trees(k)[0]) for k in range(1, 6)] == [1, 2, 3, 4, 5]
    spider = enumerate_trees(5)[1]
    assert diameter(spider) == 4


def test_tree_enumeration_bounds():
    with pytest.raises(DiagramError):
        enumerate_trees(0)
    with pytest.raises(DiagramError):
        enumerate_trees(6)


def test_tree_k_is_leaf_count_minus_one():
    for k in range(1, 6):
        for g in enumerate_trees(k):
            assert g.k == k
            assert len(g.leaves) == k + 1


def test_tree_serialize_round_trip():
    for k in range(1, 6):
        for g in enumerate_trees(k):
            text = serialize_tree(g)
            assert text.startswith("TREE: edges=")
            back = parse_tree(text)
            assert back.edges == g.edges
            assert back.spec_edge == g.spec_edge
            # leaf cycle is stored up to rotation
            n = len(g.leaves)
            rots = {g.leaves[i:] + g.leaves[:i] for i in range(n)}
            assert back.leaves in rots
            assert serialize_tree(back) == text


def test_tree_serialize_rotates_leaf_cycle():
    g = enumerate_trees(2)[0]
    rotated = UniTrivalentTree(g.edges, g.leaves[1:] + g.leaves[:1], g.spec_edge)
    assert serialize_tree(rotated) == serialize_tree(g)


def test_parse_tree_rejects_garbage():
    for bad in ("", "TREE: edges=0-1; leaves=0,1", "TREE edges=0-1"):
        with pytest.raises(DiagramError):
            parse_tree(bad)


def test_tree_validation():
    with pytest.raises(DiagramError, match="degree"):
        UniTrivalentTree(((0, 1), (1, 2)), (0, 2), (0, 1))
    with pytest.raises(DiagramError, match="self-loop"):
        UniTrivalentTree(((0, 0),), (0,), (0, 0))
    with pytest.raises(DiagramError, match="leaf list"):
        UniTrivalentTree(((0, 1),), (0,), (0, 1))
    with pytest.raises(DiagramError, match="not a tree edge"):
        UniTrivalentTree(((0, 1),), (0, 1), (0, 2))
    with pytest.raises(DiagramError, match="match a tree"):
        UniTrivalentTree(((0, 1), (2, 3)), (0, 1, 2, 3), (0, 1))


# -- tangles -------------------------------------------------------------------------


def test_tangle_validation_rejects_self_crossing():
    with pytest.raises(DiagramError, match="self-crossing"):
        TangleDiagram(
            2,
            (TangleArc(0, 1, ((0, True), (0, False))),),
            {0: 1},
        )


def test_tangle_validation_rejects_double_over():
    with pytest.raises(DiagramError, match="one over and one under"):
        TangleDiagram(
            4,
            (
                TangleArc(0, 2, ((0, True),)),
                TangleArc(1, 3, ((0, True),)),
            ),
            {0: 1},
        )


def test_tangle_validation_rejects_bad_boundary():
    with pytest.raises(DiagramError, match="partition"):
        TangleDiagram(4, (TangleArc(0, 0), TangleArc(1, 3)), {})


def test_tangle_validation_rejects_sign_mismatch():
    with pytest.raises(DiagramError, match="disagree"):
        TangleDiagram(
            4,
            (
                TangleArc(0, 2, ((0, True),)),
                TangleArc(1, 3, ((0, False),)),
            ),
            {0: 1, 5: 1},
        )


# -- the crossing-change template ------------------------------------------------------


def test_c1_shape():
    m = c1_template()
    assert m.k == 1
    assert m.n_components == 2
    assert m.t1.n_endpoints == 4
    assert m.t1.arcs[0].passages == ((0, True),)
    assert m.t2.arcs[0].passages == ((0, False),)
    assert m.t1.sign_map == {0: 1}
    assert m.t2.sign_map == {0: -1}
    assert m.t1.boundary() == m.t2.boundary()


def test_c1_closures_are_unknots():
    m = c1_template()
    closures = enumerate_closures(m.t1)
    assert len(closures) == 2
    for cl in closures:
        assert close_tangle(m.t1, cl) == UNKNOT
        assert close_tangle(m.t2, cl) == UNKNOT


def test_inverse_is_involution_and_preserves_c1():
    m = c1_template()
    assert inverse(inverse(m)) == m
    assert templates_equivalent(inverse(m), m)


def test_template_component_count_enforced():
    m = c1_template()
    with pytest.raises(DiagramError, match="components"):
        LocalMoveTemplate(m.t1, m.t2, 2)


# -- doubling ------------------------------------------------------------------------


def test_move_from_tree_shapes():
    # crossing counts and genealogies are pinned; they change only if
    # the doubling layout changes
    expect = {
        1: [(1, ())],
        2: [(4, (1,))],
        3: [(8, (1, 2))],
        4: [(12, (1, 2, 3))],
        5: [(16, (1, 2, 3, 4)), (22, (1, 2, 3, 2))],
    }
    for k, rows in expect.items():
        temps = [move_from_tree(g) for g in enumerate_trees(k)]
        assert [(len(m.t1.sign_map), m.genealogy) for m in temps] == rows
        for m in temps:
            assert m.k == k
            assert m.n_components == k + 1
            assert m.t1.n_endpoints == 2 * (k + 1)
            assert m.t1.boundary() == m.t2.boundary()
            assert len(m.genealogy) == k - 1


def test_one_branched_matches_diameter():
    for k in range(1, 6):
        flags = [is_one_branched(move_from_tree(g)) for g in enumerate_trees(k)]
        assert flags == ([True] if k < 5 else [True, False])


def test_double_template_rejects_bad_pair():
    with pytest.raises(DiagramError, match="pair"):
        double_template(c1_template(), 2)


def test_doubling_is_brunnian_through_class_five():
    for k in range(1, 6):
        for g in enumerate_trees(k):
            assert brunnian_check(move_from_tree(g)), f"class {k}"


def test_class_two_move_changes_v2():
    m = move_from_tree(enumerate_trees(2)[0])
    rows = [
        (
            fingerprint(close_tangle(m.t1, cl)),
            fingerprint(close_tangle(m.t2, cl)),
        )
        for cl in enumerate_closures(m.t1)
    ]
    deltas = {f1.v2 - f2.v2 for f1, f2 in rows}
    assert deltas == {-1, 1}
    # the sharp closure pins trefoil against unknot
    f1 = fingerprint(close_tangle(m.t1, ((0, 1), (2, 5), (3, 4))))
    f2 = fingerprint(close_tangle(m.t2, ((0, 1), (2, 5), (3, 4))))
    assert f1.serialize() == "v2=1;v3=1;det=3;jones=-1*t^-4+1*t^-3+1*t^-1"
    assert f2.serialize() == "v2=0;v3=0;det=1;jones=1*t^0"


def test_class_three_move_preserves_v2_not_v3():
    m = move_from_tree(enumerate_trees(3)[0])
    deltas2, deltas3 = set(), set()
    for cl in enumerate_closures(m.t1):
        f1 = fingerprint(close_tangle(m.t1, cl))
        f2 = fingerprint(close_tangle(m.t2, cl))
        deltas2.add(f1.v2 - f2.v2)
        deltas3.add(f1.v3 - f2.v3)
    assert deltas2 == {0}
    assert deltas3 == {-1, 0, 1}


def test_class_four_move_preserves_v2_and_v3():
    m = move_from_tree(enumerate_trees(4)[0])
    changed = False
    for cl in enumerate_closures(m.t1):
        f1 = fingerprint(close_tangle(m.t1, cl))
        f2 = fingerprint(close_tangle(m.t2, cl))
        assert f1.v2 == f2.v2 and f1.v3 == f2.v3
        changed = changed or f1 != f2
    # still a genuine move: some closure differs at higher order
    assert changed


def test_closures_respect_walk():
    m = c1_template()
    with pytest.raises(DiagramError, match="single circle|open"):
        close_tangle(m.t1, ((0, 2), (1, 3)))


def test_serialize_template_mentions_tree_and_pairs():
    m = move_from_tree(enumerate_trees(3)[0])
    text = serialize_template(m)
    assert text.startswith("TEMPLATE k=3 components=4")
    assert "TREE: edges=" in text
    assert "doubled pairs: 1,2" in text
