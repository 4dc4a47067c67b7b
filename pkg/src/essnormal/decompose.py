"""Line primes, radicals and isolated primary components of 1-dimensional cones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .idealops import Ideal, hilbert_series, ideal_intersect, radical_membership, saturate
from .polyalg import Polynomial
from .variety import Line, line_prime_generators


@dataclass(frozen=True)
class PrimaryComponent:
    line: Line
    component_ideal: Ideal
    prime: Ideal
    separator: Polynomial | None = None

    def check(self) -> bool:
        """Component ⊆ prime and prime ⊆ √component."""
        return self.prime.contains_ideal(self.component_ideal) and all(
            radical_membership(g, self.component_ideal) for g in self.prime.gens
        )


def line_prime(u: Line) -> Ideal:
    """The vanishing ideal of the line through ``u``."""
    return Ideal(line_prime_generators(u), u.dim)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    result = ideals[0]
    for b in ideals[1:]:
        result = ideal_intersect(result, b)
    return result


def radical_from_lines(a: Ideal, lines: Sequence[Line]) -> Ideal:
    """√a as the intersection of the line primes, checked in both directions."""
    rad = intersect_all([line_prime(u) for u in lines])
    if not rad.contains_ideal(a):
        raise ArithmeticError("ideal not contained in the intersection of its line primes")
    for g in rad.gens:
        if not radical_membership(g, a):
            raise ArithmeticError(f"{g} is not in the radical; line set incomplete")
    return rad


def separator(lines: Sequence[Line], j: int, primes: Sequence[Ideal], strip_origin: bool = False) -> Polynomial:
    """A product of linear forms vanishing on every line except ``lines[j]``.

    For each other line we take the first generator of its prime that does
    not vanish on line j.  With ``strip_origin`` an extra factor z_k (k the
    first Λ index of line j) is appended: it vanishes at the origin but not on
    line j, so saturation also removes components supported at the origin.
    """
    u = lines[j]
    d = u.dim
    f = Polynomial.variable(u.lambda_set[0], d) if strip_origin else Polynomial.one(d)
    for i, p in enumerate(primes):
        if i == j:
            continue
        for g in p.gens:
            if not primes[j].contains(g):
                f = f * g
                break
        else:
            raise AssertionError(f"no separating linear form between lines {i} and {j}")
    return f


def isolated_primary_components(a: Ideal, lines: Sequence[Line], strip_origin: bool = False) -> list[PrimaryComponent]:
    """One component per line: a saturated by the separator of that line.

    By default a single-line ideal is its own component, embedded origin part
    included.  ``strip_origin=True`` returns the genuinely primary components.
    """
    primes = [line_prime(u) for u in lines]
    out = []
    for j, u in enumerate(lines):
        f = separator(lines, j, primes, strip_origin)
        comp = saturate(a, f)
        out.append(PrimaryComponent(u, comp, primes[j], f))
    return out


def origin_embedded_dimension(a: Ideal, lines: Sequence[Line]) -> int:
    """dim (∩ primary components)/a: the size of the part of a supported at the origin."""
    return embedded_defect(a, isolated_primary_components(a, lines, strip_origin=True))


def embedded_defect(a: Ideal, components: Sequence[PrimaryComponent]) -> int:
    """dim (∩ components)/a, summed over all degrees."""
    inter = intersect_all([c.component_ideal for c in components])
    diff = hilbert_series(a) - hilbert_series(inter)
    if not diff.is_polynomial():
        raise ArithmeticError("infinite embedded defect; decomposition is inconsistent")
    value = diff.value_at_one()
    if value < 0:
        raise ArithmeticError("negative embedded defect; decomposition is inconsistent")
    return value
