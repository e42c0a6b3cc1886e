import random
from fractions import Fraction

import pytest

from ckbands.diagram import (
    UNKNOT,
    connected_sum,
    mirror,
    parse_pd,
    random_move,
    simplify,
)
from ckbands.files import sample_library
from ckbands.invariants import (
    INVARIANTS,
    J2_PER_V2,
    J3_PER_V2,
    J3_PER_V3,
    GuardExceeded,
    KnotFingerprint,
    conway_a2_oracle,
    determinant,
    evaluate_on_sum,
    fingerprint,
    invariant_by_name,
    jones,
    jones_expansion,
    kauffman_bracket,
    v2,
    v3,
)
from ckbands.laurent import LaurentPoly

LIB = sample_library()


def fuzzed(d, seed, steps=8, max_crossings=12):
    rng = random.Random(seed)
    for _ in range(steps):
        _, _, d = random_move(d, rng, max_crossings=max_crossings)
    return d


def test_bracket_anchors():
    assert kauffman_bracket(UNKNOT) == LaurentPoly.one("A")
    kink = parse_pd("PD: X(1,2,2,1)")
    assert kauffman_bracket(kink) == LaurentPoly.monomial(-1, 3, "A")


def test_bracket_is_not_r1_invariant_but_jones_is():
    kink = parse_pd("PD: X(1,2,2,1)")
    assert kauffman_bracket(kink) != kauffman_bracket(UNKNOT)
    assert jones(kink) == jones(UNKNOT) == LaurentPoly.one("t")


def test_jones_frozen_values():
    want = {
        "3_1": "-1*t^-4+1*t^-3+1*t^-1",
        "m3_1": "1*t^1+1*t^3-1*t^4",
        "4_1": "1*t^-2-1*t^-1+1*t^0-1*t^1+1*t^2",
        "5_1": "-1*t^-7+1*t^-6-1*t^-5+1*t^-4+1*t^-2",
        "5_2": "-1*t^-6+1*t^-5-1*t^-4+2*t^-3-1*t^-2+1*t^-1",
        "7_1": "-1*t^-10+1*t^-9-1*t^-8+1*t^-7-1*t^-6+1*t^-5+1*t^-3",
    }
    for name, s in want.items():
        assert jones(LIB[name]).serialize() == s, name


def test_jones_mirror_inverts_t():
    for name in ("3_1", "5_1", "5_2", "6_1", "6_2"):
        assert jones(mirror(LIB[name])) == jones(LIB[name]).mirror()


def test_jones_multiplicative_under_sum():
    a, b = LIB["3_1"], LIB["4_1"]
    assert jones(connected_sum(a, b)) == jones(a) * jones(b)


def test_determinants():
    want = {
        "unknot": 1, "3_1": 3, "m3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7,
        "6_1": 9, "6_2": 11, "6_3": 13, "7_1": 7,
        "3_1#3_1": 9, "3_1#m3_1": 9, "3_1#4_1": 15,
    }
    for name, det in want.items():
        assert determinant(LIB[name]) == det, name


def test_v2_matches_skein_oracle_everywhere():
    for name, d in LIB.items():
        assert v2(d) == conway_a2_oracle(d), name
        assert v2(mirror(d)) == conway_a2_oracle(d) if d.n_crossings else True
    for seed, name in enumerate(("3_1", "4_1", "5_2", "6_3", "3_1#4_1")):
        f = fuzzed(LIB[name], seed)
        assert v2(f) == conway_a2_oracle(f) == v2(LIB[name])


def test_v2_v3_frozen_table():
    want = {
        "unknot": (0, 0), "3_1": (1, 1), "m3_1": (1, -1), "4_1": (-1, 0),
        "5_1": (3, 5), "5_2": (2, 3), "6_1": (-2, -1), "6_2": (-1, -1),
        "6_3": (1, 0), "7_1": (6, 14), "3_1#3_1": (2, 2),
        "3_1#m3_1": (2, 0), "3_1#4_1": (0, 1),
    }
    for name, (a, b) in want.items():
        assert (v2(LIB[name]), v3(LIB[name])) == (a, b), name


def test_expansion_relations_hold_on_all_samples():
    for name, d in LIB.items():
        e = jones_expansion(d, 3)
        assert e[0] == 1 and e[1] == 0, name
        assert e[2] == J2_PER_V2 * v2(d), name
        assert e[3] == J3_PER_V3 * v3(d) + J3_PER_V2 * v2(d), name


def test_mirror_parity():
    for name, d in LIB.items():
        if not d.n_crossings:
            continue
        m = mirror(d)
        assert v2(m) == v2(d), name
        assert v3(m) == -v3(d), name


def test_additivity_under_connected_sum():
    rng = random.Random(3)
    names = [n for n in LIB if LIB[n].n_crossings]
    for _ in range(10):
        a, b = rng.choice(names), rng.choice(names)
        s = connected_sum(LIB[a], LIB[b])
        assert v2(s) == v2(LIB[a]) + v2(LIB[b])
        assert v3(s) == v3(LIB[a]) + v3(LIB[b])


def test_v2_v3_are_move_invariant():
    rng = random.Random(41)
    for name in ("3_1", "4_1", "5_1", "6_2"):
        d = LIB[name]
        a, b = v2(d), v3(d)
        for _ in range(40):
            _, _, d = random_move(d, rng, max_crossings=14)
            assert (v2(d), v3(d)) == (a, b), name


def test_fingerprint_stable_across_rediagrams():
    for seed, name in enumerate(("3_1", "4_1", "5_2", "3_1#3_1")):
        base = fingerprint(LIB[name])
        assert fingerprint(fuzzed(LIB[name], 100 + seed)) == base


def test_fingerprint_detects_mirror_pairs_and_sums():
    assert fingerprint(LIB["3_1"]) != fingerprint(LIB["m3_1"])
    assert fingerprint(LIB["3_1#3_1"]) != fingerprint(LIB["3_1#m3_1"])
    assert fingerprint(UNKNOT) == KnotFingerprint(0, 0, LaurentPoly.one("t"), 1)


def test_guard_and_partial_fingerprint():
    big = LIB["7_1"]
    for _ in range(3):
        big = connected_sum(big, LIB["7_1"])
    assert big.n_crossings == 28
    assert simplify(big).n_crossings == 28
    with pytest.raises(GuardExceeded):
        jones(big)
    with pytest.raises(GuardExceeded):
        fingerprint(big)
    fp = fingerprint(big, allow_partial=True)
    assert fp.jones is None and fp.determinant is None
    assert fp.v2 == 4 * 6 and fp.v3 == 4 * 14
    assert "jones=?" in fp.serialize()


def test_bracket_guard_is_overridable():
    d = LIB["5_1"]
    with pytest.raises(GuardExceeded):
        kauffman_bracket(d, max_crossings=3)
    assert jones(d, max_crossings=5) == jones(d)


def test_registry_and_linear_extension():
    assert [i.name for i in INVARIANTS] == ["v2", "v3"]
    assert invariant_by_name("v2").order == 2
    assert invariant_by_name("v3").order == 3
    assert all(i.additive for i in INVARIANTS)
    with pytest.raises(KeyError):
        invariant_by_name("v9")

    class Stub:
        def terms(self):
            return [(2, LIB["3_1"]), (-1, LIB["5_1"])]

    assert evaluate_on_sum(invariant_by_name("v2"), Stub()) == 2 * 1 - 3
    assert evaluate_on_sum(invariant_by_name("v3"), Stub()) == 2 * 1 - 5


def test_expansion_coefficients_are_exactly_integral():
    d = LIB["6_2"]
    poly = jones(d)
    acc = Fraction(0)
    for e, c in poly.items():
        acc += Fraction(c * e**3, 6)
    assert acc.denominator == 1
    assert jones_expansion(d, 3)[3] == int(acc)
