import pytest

from essnormal.decompose import (
    embedded_defect,
    isolated_primary_components,
    line_prime,
    origin_embedded_dimension,
    radical_from_lines,
)
from essnormal.idealops import ideal_intersect, radical_membership
from essnormal.variety import extract_lines, normalize_direction

from conftest import COND_A, EX47, ideal


def test_line_prime_examples():
    assert line_prime(normalize_direction([1, 1, 0])) == ideal(["z1 - z2", "z3"], 3)
    assert line_prime(normalize_direction([0, 1])) == ideal(["z1"], 2)
    assert line_prime(normalize_direction([1, 0, 0])) == ideal(["z2", "z3"], 3)


def test_line_prime_rejects_numeric():
    with pytest.raises(ValueError):
        line_prime(normalize_direction([1.0, 0.5]))


def test_radical_examples():
    for gens, d, expected in [(["z1^2"], 2, ["z1"]), (EX47[0], 3, ["z1 - z2", "z3"]), (["z1^2 - z2^2"], 2, ["z1^2 - z2^2"])]:
        a = ideal(gens, d)
        assert radical_from_lines(a, extract_lines(a)) == ideal(expected, d)


def _components(gens, d, **kw):
    a = ideal(gens, d)
    lines = extract_lines(a)
    return a, lines, isolated_primary_components(a, lines, **kw)


def test_components_of_mixed_ideal():
    a, lines, comps = _components(["z1^2*(z1 - z2)"], 2)
    got = {c.line.direction: c.component_ideal for c in comps}
    assert got[normalize_direction([0, 1]).direction] == ideal(["z1^2"], 2)
    assert got[normalize_direction([1, 1]).direction] == ideal(["z1 - z2"], 2)


def test_single_line_ideal_is_its_own_component():
    a, lines, (c,) = _components(*EX47)
    assert c.component_ideal == a
    assert embedded_defect(a, [c]) == 0


def test_two_reduced_lines():
    a, lines, comps = _components(["z1^2 - z2^2"], 2)
    assert [c.component_ideal for c in comps] == [line_prime(u) for u in lines]
    assert embedded_defect(a, comps) == 0


def test_origin_embedded_part():
    a, lines, comps = _components(["z1^2", "z1*z2"], 2, strip_origin=True)
    (c,) = comps
    assert c.component_ideal == ideal(["z1"], 2)
    assert embedded_defect(a, comps) == 1
    assert origin_embedded_dimension(a, lines) == 1
    # the same ideal under the default separator keeps the embedded point
    a, lines, (c,) = _components(["z1^2", "z1*z2"], 2)
    assert c.component_ideal == a


def test_strict_components_of_the_quasi_prime_example():
    a = ideal(*EX47)
    # z1^2*z3 is in a, z3 is not: the origin carries an embedded component
    assert origin_embedded_dimension(a, extract_lines(a)) == 2


@pytest.mark.parametrize(
    "gens,d",
    [(EX47[0], 3), (["z1^2*(z1 - z2)"], 2), (["z1^2 - z2^2"], 2), (COND_A[0], 3), (["z1^3", "z1^2*z2"], 2),
     (["z1*z2*(z1 + z2)^2"], 2)],
)
@pytest.mark.parametrize("strip", [False, True])
def test_component_invariants(gens, d, strip):
    a, lines, comps = _components(gens, d, strip_origin=strip)
    for c in comps:
        assert c.check()
        assert c.prime == line_prime(c.line)
        assert all(not g.evaluate(c.line.direction) for g in c.component_ideal.gens)
    inter = comps[0].component_ideal
    for c in comps[1:]:
        inter = ideal_intersect(inter, c.component_ideal)
    assert inter.contains_ideal(a)
    assert embedded_defect(a, comps) >= 0
