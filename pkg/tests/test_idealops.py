import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from essnormal.idealops import (
    EmptyVarietyError,
    HilbertSeries,
    Ideal,
    eliminate,
    hilbert_function,
    hilbert_series,
    ideal_intersect,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    krull_dimension,
    radical_membership,
    saturate,
)

from conftest import EX47, ideal, poly
from oracles import brute_hilbert_function, random_ideal


def test_sum_examples():
    assert ideal_sum(ideal(["z1"], 2), ideal(["z2"], 2)) == ideal(["z1", "z2"], 2)
    got = ideal_sum(ideal(*EX47), ideal(["z1 - z2"], 3))
    assert set(got.groebner()) == {poly("z1 - z2", 3), poly("z2*z3", 3), poly("z3^2", 3)}
    a = ideal(["z1^2", "z1*z2"], 2)
    assert ideal_sum(a, Ideal.zero(2)) == a


def test_ring_mismatch():
    with pytest.raises(ValueError):
        ideal_sum(ideal(["z1"], 1), ideal(["z1"], 2))


def test_product():
    assert ideal_product(ideal(["z1"], 2), ideal(["z2"], 2)) == ideal(["z1*z2"], 2)


def test_intersection_examples():
    assert ideal_intersect(ideal(["z1"], 2), ideal(["z2"], 2)) == ideal(["z1*z2"], 2)
    assert ideal_intersect(ideal(["z1 - z2"], 2), ideal(["z1 + z2"], 2)) == ideal(["z1^2 - z2^2"], 2)
    a = ideal(*EX47)
    assert ideal_intersect(a, a) == a


def test_elimination_drops_first_variables():
    a = ideal(["z1 - z2", "z2 - z3"], 3)
    e = eliminate(a, 1)
    assert e.nvars == 2 and e == ideal(["z1 - z2"], 2)


def test_quotient_and_saturation():
    a = ideal(["z1^2*(z1 - z2)"], 2)
    assert saturate(a, poly("z1 - z2", 2)) == ideal(["z1^2"], 2)
    assert saturate(a, poly("z1", 2)) == ideal(["z1 - z2"], 2)
    assert saturate(a, poly("1", 2)) == a
    assert ideal_quotient(ideal(["z1^2", "z1*z2"], 2), poly("z1", 2)) == ideal(["z1", "z2"], 2)
    with pytest.raises(ValueError):
        saturate(a, poly("0", 2))


def test_radical_membership_examples():
    assert radical_membership(poly("z1", 2), ideal(["z1^2"], 2))
    assert radical_membership(poly("z3", 3), ideal(*EX47))
    assert not radical_membership(poly("z2", 2), ideal(["z1^2"], 2))


def test_hilbert_examples():
    assert hilbert_series(Ideal.zero(1)) == HilbertSeries((1,), 1)
    assert [hilbert_function(Ideal.zero(1), n) for n in range(5)] == [1] * 5
    hs = hilbert_series(ideal(["z1^2"], 2))
    assert str(hs) == "(1 + t)/(1 - t)"
    assert [hs.coefficient(n) for n in range(5)] == [1, 2, 2, 2, 2]
    b = ideal(["z1 - z2", "z2*z3", "z3^2"], 3)
    assert [hilbert_function(b, n) for n in range(6)] == [1, 2, 1, 1, 1, 1]


def test_hilbert_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        hilbert_series(ideal(["z1^2 - z2"], 2))


def test_series_subtraction_cancels():
    diff = HilbertSeries((1, 1, -1), 1) - HilbertSeries((1,), 1)
    assert diff.is_polynomial() and diff.value_at_one() == 1


def test_krull_dimension_examples():
    assert krull_dimension(ideal(["z1^2"], 2)) == 1
    assert krull_dimension(ideal(["z1", "z2"], 2)) == 0
    assert krull_dimension(ideal(["z1*z2"], 3)) == 2
    with pytest.raises(EmptyVarietyError):
        krull_dimension(ideal(["1"], 2))


def test_hilbert_matches_rank_oracle():
    rng = random.Random(7)
    for _ in range(20):
        a = random_ideal(rng)
        hs = hilbert_series(a)
        for n in range(9):
            assert hs.coefficient(n) == brute_hilbert_function(a.gens, a.nvars, n)


def test_dimension_cross_check():
    # dimension equals the order of the pole at t = 1 of the brute-force series
    rng = random.Random(11)
    for _ in range(15):
        a = random_ideal(rng)
        if a.is_unit():
            continue
        dim = krull_dimension(a)
        hf = [brute_hilbert_function(a.gens, a.nvars, n) for n in range(10, 13)]
        if dim == 0:
            assert hf == [0, 0, 0]
        elif dim == 1:
            assert hf[0] == hf[1] == hf[2] > 0
        else:
            assert hf[0] < hf[1] < hf[2]


lin = st.sampled_from(["z1", "z2", "z3", "z1 - z2", "z1 + i*z3", "z2 - 2*z3"])
quad = st.sampled_from(["z1^2", "z1*z2", "z3^2 - z1*z2", "z2*z3", "(z1 - z3)^2"])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.one_of(lin, quad), min_size=1, max_size=3), st.lists(st.one_of(lin, quad), min_size=1, max_size=2),
       st.one_of(lin, quad))
def test_membership_consistency(ga, gb, ftext):
    a, b, f = ideal(ga, 3), ideal(gb, 3), poly(ftext, 3)
    for g in ideal_intersect(a, b).gens:
        assert a.contains(g) and b.contains(g)
    if a.contains(f):
        assert radical_membership(f, a)
    q = ideal_quotient(a, f)
    assert q.contains_ideal(a)
    assert saturate(a, f).contains_ideal(q)
