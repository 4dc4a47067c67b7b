"""Multivariate division and Buchberger's algorithm."""

from __future__ import annotations

import heapq
from typing import Sequence

from .order import GREVLEX, MonomialOrder, coprime, divides, mono_div, mono_lcm
from .poly import Polynomial


def _sub_multiple(terms: dict, g: Polynomial, shift, c) -> None:
    """terms -= c * x^shift * g, in place."""
    for m, v in g.terms.items():
        m = tuple(a + b for a, b in zip(m, shift))
        s = terms.get(m)
        if s is None:
            terms[m] = -(v * c)
        else:
            s = s - v * c
            if s:
                terms[m] = s
            else:
                del terms[m]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``basis``.

    At each step the largest remaining term is divided by the first basis
    element (in the given sequence) whose leading monomial divides it.
    """
    if not f.terms:
        return f
    key = order.key
    lead = []
    for g in basis:
        if not g.terms:
            raise ValueError("basis contains the zero polynomial")
        lm = g.leading_monomial(order)
        lead.append((lm, g.terms[lm].inverse(), g))
    p = dict(f.terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, inv, g in lead:
            if divides(lm, m):
                _sub_multiple(p, g, mono_div(m, lm), c * inv)
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial._raw(rem, f.nvars)


def divide(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
    """Return ``(quotients, remainder)`` with f = sum q_i g_i + remainder."""
    key = order.key
    lead = [(g.leading_monomial(order), g) for g in basis]
    quotients = [dict() for _ in basis]
    p = dict(f.terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for idx, (lm, g) in enumerate(lead):
            if divides(lm, m):
                q = c / g.terms[lm]
                shift = mono_div(m, lm)
                quotients[idx][shift] = quotients[idx].get(shift, 0) + q
                _sub_multiple(p, g, shift, q)
                break
        else:
            rem[m] = c
            del p[m]
    return [Polynomial(q, f.nvars) for q in quotients], Polynomial._raw(rem, f.nvars)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    terms = {}
    _sub_multiple(terms, f, mono_div(lcm, lf), -f.terms[lf].inverse())
    _sub_multiple(terms, g, mono_div(lcm, lg), g.terms[lg].inverse())
    return Polynomial._raw(terms, f.nvars)


def _reduce_basis(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Minimize, inter-reduce, normalize and sort a Gröbner basis."""
    lms = [g.leading_monomial(order) for g in G]
    keep = []
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if j == i or not divides(other, lm):
                continue
            # equal leading monomials: keep the first occurrence only
            if other != lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(G[i])
    out = []
    for i, g in enumerate(keep):
        rest = keep[:i] + keep[i + 1:]
        lm = g.leading_monomial(order)
        tail = Polynomial._raw({m: c for m, c in g.terms.items() if m != lm}, g.nvars)
        tail = normal_form(tail, rest, order)
        terms = dict(tail.terms)
        terms[lm] = g.terms[lm]
        out.append(Polynomial._raw(terms, g.nvars).monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return out


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """Reduced Gröbner basis with leading coefficients 1.

    Uses the product and chain criteria.  S-pairs are processed in
    increasing (lcm degree, i, j) order, so the output is deterministic.
    The zero ideal gives ``[]``; the unit ideal gives ``[1]``.
    """
    G = [g.monic(order) for g in gens if g.terms]
    if not G:
        return []
    nvars = G[0].nvars
    for g in G:
        if g.is_constant():
            return [Polynomial.one(nvars)]
    lms = [g.leading_monomial(order) for g in G]
    pending: set[tuple[int, int]] = set()
    heap: list = []

    def add_pairs(j):
        for i in range(j):
            lcm = mono_lcm(lms[i], lms[j])
            heapq.heappush(heap, (sum(lcm), i, j))
            pending.add((i, j))

    for j in range(len(G)):
        add_pairs(j)

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = lms[i], lms[j]
        if coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        chain = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if divides(lms[k], lcm):
                chain = True
                break
        if chain:
            continue
        h = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if not h.terms:
            continue
        if h.is_constant():
            return [Polynomial.one(nvars)]
        h = h.monic(order)
        G.append(h)
        lms.append(h.leading_monomial(order))
        add_pairs(len(G) - 1)

    return _reduce_basis(G, order)


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Every S-polynomial reduces to zero."""
    for j in range(len(G)):
        for i in range(j):
            if normal_form(s_polynomial(G[i], G[j], order), G, order).terms:
                return False
    return True


__all__ = ["normal_form", "divide", "s_polynomial", "buchberger", "is_groebner_basis"]
