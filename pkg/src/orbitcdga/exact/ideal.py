"""Normal forms modulo polynomial ideals (graded lexicographic order).

Completion uses Buchberger's algorithm with the product criterion. Ideals whose
generators have pairwise coprime leading monomials are already Groebner bases
by that same criterion; this covers every triangular tower ideal built in this
package and skips the pair loop entirely (``method="auto"``).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .poly import MultiPoly, grlex_key

INFINITE = math.inf


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _reduce(f: MultiPoly, basis: list[MultiPoly], leads) -> MultiPoly:
    """Fully reduce f by a list of monic polynomials with given leading exponents."""
    vars_ = f.variables
    terms = dict(f.terms)
    remainder: dict = {}
    while terms:
        e = max(terms, key=grlex_key)
        c = terms.pop(e)
        for g, lg in zip(basis, leads):
            if _divides(lg, e):
                shift = tuple(a - b for a, b in zip(e, lg))
                for ge, gc in g.terms.items():
                    if ge == lg:
                        continue
                    ne = tuple(a + b for a, b in zip(ge, shift))
                    s = terms.get(ne, 0) - c * gc
                    if s:
                        terms[ne] = s
                    else:
                        terms.pop(ne, None)
                break
        else:
            remainder[e] = c
    return MultiPoly._raw(vars_, remainder)


def _spoly(f: MultiPoly, g: MultiPoly, lf, lg) -> MultiPoly:
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = MultiPoly(f.variables, {tuple(a - b for a, b in zip(lcm, lf)): 1})
    mg = MultiPoly(f.variables, {tuple(a - b for a, b in zip(lcm, lg)): 1})
    return mf * f - mg * g


def buchberger(gens: list[MultiPoly]) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    G = [g.monic() for g in gens if not g.is_zero()]
    leads = [g.leading()[0] for g in G]
    pairs = list(itertools.combinations(range(len(G)), 2))
    while pairs:
        i, j = pairs.pop()
        if _coprime(leads[i], leads[j]):
            continue
        r = _reduce(_spoly(G[i], G[j], leads[i], leads[j]), G, leads)
        if not r.is_zero():
            r = r.monic()
            G.append(r)
            leads.append(r.leading()[0])
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return _interreduce(G)


def _interreduce(G: list[MultiPoly]) -> list[MultiPoly]:
    G = [g.monic() for g in G if not g.is_zero()]
    # minimal: drop elements whose leading monomial is divisible by another's
    keep = []
    leads = [g.leading()[0] for g in G]
    for i, g in enumerate(G):
        dominated = any(
            j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(G))
        )
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        ol = [o.leading()[0] for o in others]
        lg, _ = g.leading()
        tail = MultiPoly._raw(g.variables, {e: c for e, c in g.terms.items() if e != lg})
        red = _reduce(tail, others, ol)
        out.append(red + MultiPoly(g.variables, {lg: 1}))
    out.sort(key=lambda p: grlex_key(p.leading()[0]))
    return out


def has_coprime_leads(gens: list[MultiPoly]) -> bool:
    leads = [g.leading()[0] for g in gens if not g.is_zero()]
    return all(_coprime(a, b) for a, b in itertools.combinations(leads, 2))


class IdealNF:
    """An ideal of Q[variables] with its reduced Groebner basis (grlex).

    ``method`` is ``"auto"`` (coprime-leading-term fast path when it applies)
    or ``"buchberger"`` (always run the pair loop; used as a cross-check).
    """

    def __init__(self, generators, variables=None, method: str = "auto"):
        gens = list(generators)
        if variables is None:
            if not gens:
                raise ValueError("need variables for an ideal with no generators")
            variables = gens[0].variables
        self.variables = tuple(variables)
        self.generators = [g.change_ring(self.variables) for g in gens]
        nonzero = [g for g in self.generators if not g.is_zero()]
        if any(g.is_constant() for g in nonzero):
            self.basis = [MultiPoly.constant(self.variables, 1)]
        elif method == "auto" and has_coprime_leads(nonzero):
            self.basis = _interreduce(nonzero)
        elif method in ("auto", "buchberger"):
            self.basis = buchberger(nonzero)
        else:
            raise ValueError(f"unknown method {method!r}")
        self._leads = [b.leading()[0] for b in self.basis]

    @property
    def is_unit(self) -> bool:
        return any(not any(e) for e in self._leads)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return _reduce(f.change_ring(self.variables), self.basis, self._leads)

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def leading_power_bounds(self) -> dict[str, int]:
        """Variable -> smallest k with x^k a leading monomial of the basis."""
        out = {}
        for lead in self._leads:
            nz = [i for i, k in enumerate(lead) if k]
            if len(nz) == 1:
                v = self.variables[nz[0]]
                out[v] = min(out.get(v, lead[nz[0]]), lead[nz[0]])
        return out

    def quotient_dimension(self):
        """Q-dimension of the quotient ring, or INFINITE."""
        if self.is_unit:
            return 0
        bounds = self.leading_power_bounds()
        if len(bounds) < len(self.variables):
            return INFINITE
        return len(self.standard_monomials())

    def standard_monomials(self) -> list[tuple[int, ...]]:
        """Monomials not divisible by any leading monomial, ascending grlex."""
        if self.is_unit:
            return []
        bounds = self.leading_power_bounds()
        if len(bounds) < len(self.variables):
            raise ValueError("quotient is infinite-dimensional")
        ranges = [range(bounds[v]) for v in self.variables]
        mons = [
            e
            for e in itertools.product(*ranges)
            if not any(_divides(lead, e) for lead in self._leads)
        ]
        mons.sort(key=grlex_key)
        return mons

    def coordinates(self, f: MultiPoly, basis_monomials=None) -> list[Fraction]:
        mons = basis_monomials if basis_monomials is not None else self.standard_monomials()
        nf = self.normal_form(f)
        return [nf.terms.get(m, Fraction(0)) for m in mons]


def normal_form(f: MultiPoly, ideal: IdealNF) -> MultiPoly:
    return ideal.normal_form(f)


def quotient_dimension(ideal: IdealNF):
    return ideal.quotient_dimension()
