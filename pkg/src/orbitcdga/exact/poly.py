"""Sparse multivariate polynomials over Q with exact Fraction coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

Exps = tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def grlex_key(exps: Exps):
    """Sort key for graded lexicographic order; larger key is the larger monomial."""
    return (sum(exps), exps)


class MultiPoly:
    """Polynomial in a fixed, ordered tuple of variable names.

    ``terms`` maps exponent vectors to nonzero coefficients. The first variable
    is the largest in lexicographic tie-breaks.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables: tuple[str, ...] = tuple(variables)
        nv = len(self.variables)
        clean: dict[Exps, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nv:
                raise ValueError(f"exponent vector {exps} does not match {nv} variables")
            c = _frac(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms: dict[Exps, Fraction] = clean

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, name: str, power: int = 1) -> "MultiPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = power
        return cls(variables, {tuple(exps): 1})

    @classmethod
    def univariate(cls, coeffs, var: str = "x") -> "MultiPoly":
        """From ascending coefficients ``c0 + c1*x + ...``."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs) if c})

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def support_variables(self) -> set[str]:
        return {v for e in self.terms for v, k in zip(self.variables, e) if k}

    def leading(self) -> tuple[Exps, Fraction]:
        """Leading (exponents, coefficient) in grlex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def univariate_coeffs(self) -> list[Fraction]:
        if len(self.variables) != 1:
            raise ValueError("not a univariate polynomial")
        deg = self.total_degree()
        out = [Fraction(0)] * (deg + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            if not c:
                return MultiPoly._raw(self.variables, {})
            return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "MultiPoly":
        _, c = self.leading()
        return self * (1 / c)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == MultiPoly.constant(self.variables, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- substitution / rings -----------------------------------------
    def substitute(self, images: dict, variables=None) -> "MultiPoly":
        """Replace each variable by a polynomial; unlisted variables map to themselves.

        Every image must live over ``variables`` (default: self.variables).
        """
        variables = tuple(variables) if variables is not None else self.variables
        imgs = []
        for v in self.variables:
            if v in images:
                img = images[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(variables, img)
                imgs.append(img)
            else:
                imgs.append(MultiPoly.variable(variables, v))
        out = MultiPoly(variables)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(variables, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = imgs[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    def change_ring(self, variables) -> "MultiPoly":
        """Re-express over another variable tuple containing every used variable."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        for v in self.support_variables():
            if v not in pos:
                raise ValueError(f"variable {v!r} not in target ring {variables}")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    ne[pos[v]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, out)

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [
                {"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        return cls(
            data["variables"],
            {tuple(t["exps"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]},
        )

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return format_terms(self.sorted_terms(), self.variables)


def format_terms(terms, names) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mono:
            s = str(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}"
        parts.append(s)
    return " + ".join(parts).replace("+ -", "- ")
