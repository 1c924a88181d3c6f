"""Cyclotomic polynomials and arithmetic in cyclotomic fields Q(zeta_n).

Elements of Q(zeta_n) are coefficient vectors of length phi(n) on the power
basis 1, zeta, ..., zeta^(phi(n)-1), i.e. residues modulo Phi_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import InputError, VerificationError
from .poly import MultiPoly


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


# dense univariate helpers, ascending coefficient lists
def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = list(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            f = Fraction(c, lead) if isinstance(c, int) and isinstance(lead, int) else c / lead
            if f.denominator == 1:
                f = int(f)
            q[i] = f
            for j, y in enumerate(b):
                a[i + j] -= f * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of Phi_n."""
    if n < 1:
        raise InputError(f"cyclotomic index must be >= 1, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, r = _pdivmod(num, cyclotomic_coeffs(d))
        if r:
            raise VerificationError(f"Phi_{d} does not divide x^{n} - 1")
    return tuple(int(c) for c in num)


def cyclotomic(n: int, var: str = "x") -> MultiPoly:
    """Phi_n as a univariate MultiPoly in ``var``."""
    return MultiPoly.univariate(cyclotomic_coeffs(n), var)


def verify_cyclotomic_identity(p: int, k: int) -> bool:
    """Check Phi_p(x^(p^(k-1))) == Phi_(p^k) exactly."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if k < 1:
        raise InputError("k must be >= 1")
    x = MultiPoly.variable(("x",), "x")
    lhs = cyclotomic(p).substitute({"x": x ** (p ** (k - 1))})
    return lhs == cyclotomic(p**k)


def rational_roots(coeffs) -> list[Fraction]:
    """Rational roots of a polynomial with rational ascending coefficients."""
    coeffs = _trim([Fraction(c) for c in coeffs])
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = set()
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _reduce_mod(coeffs, n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(n)
    d = len(phi) - 1
    a = [Fraction(c) for c in coeffs]
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] -= c * phi[j]
    a = a[:d] + [Fraction(0)] * max(0, d - len(a))
    return tuple(a[:d])


@dataclass(frozen=True)
class CyclotomicElt:
    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.n):
            object.__setattr__(self, "coeffs", _reduce_mod(self.coeffs, self.n))
        else:
            object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_poly_coeffs(cls, n: int, coeffs) -> "CyclotomicElt":
        return cls(n, _reduce_mod(coeffs, n))

    @classmethod
    def scalar(cls, n: int, c) -> "CyclotomicElt":
        return cls.from_poly_coeffs(n, [c])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicElt":
        k %= n
        return cls.from_poly_coeffs(n, [0] * k + [1])

    def _check(self, other):
        if isinstance(other, CyclotomicElt):
            if other.n != self.n:
                raise ValueError(f"Q(zeta_{self.n}) vs Q(zeta_{other.n})")
            return other
        return CyclotomicElt.scalar(self.n, other)

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicElt(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElt(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return CyclotomicElt.from_poly_coeffs(self.n, _pmul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use inverse() for negative powers")
        out = CyclotomicElt.scalar(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == CyclotomicElt.scalar(self.n, 1)

    def multiplicative_order(self, limit: int | None = None) -> int | None:
        """Smallest k >= 1 with self^k == 1, or None if none up to ``limit``."""
        limit = limit or 2 * self.n
        cur = self
        for k in range(1, limit + 1):
            if cur.is_one():
                return k
            cur = cur * self
        return None

    def evaluate(self, poly_coeffs) -> "CyclotomicElt":
        """Evaluate an ascending-coefficient polynomial at this element (Horner)."""
        out = CyclotomicElt.scalar(self.n, 0)
        for c in reversed(list(poly_coeffs)):
            out = out * self + c
        return out

    def to_poly(self, var: str = "z") -> MultiPoly:
        return MultiPoly.univariate(self.coeffs, var)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "CyclotomicElt":
        return cls(int(data["n"]), tuple(Fraction(c) for c in data["coeffs"]))

    def __str__(self):
        return str(MultiPoly.univariate(self.coeffs, f"zeta{self.n}"))


@dataclass(frozen=True)
class CycloEmbedding:
    """Ring map Q(zeta_m) -> Q(zeta_n) given by the image of zeta_m."""

    m: int
    n: int
    image: CyclotomicElt

    def __call__(self, x: CyclotomicElt) -> CyclotomicElt:
        if x.n != self.m:
            raise ValueError(f"element of Q(zeta_{x.n}) fed to a map out of Q(zeta_{self.m})")
        return self.image.evaluate(x.coeffs)

    def compose(self, after: "CycloEmbedding") -> "CycloEmbedding":
        """``after`` o ``self``."""
        if after.m != self.n:
            raise ValueError("maps not composable")
        return CycloEmbedding(self.m, after.n, after(self.image))

    def kills_defining_polynomial(self) -> bool:
        return self.image.evaluate(cyclotomic_coeffs(self.m)).is_zero()

    def is_injective(self) -> bool:
        """Images of the power basis of Q(zeta_m) are linearly independent."""
        from .linalg import rank

        rows = [list((self.image**i).coeffs) for i in range(euler_phi(self.m))]
        return rank(rows) == euler_phi(self.m)


def cyclo_embed(m: int, n: int) -> CycloEmbedding:
    """The standard inclusion zeta_m -> zeta_n^(n/m)."""
    if m < 1 or n < 1 or n % m:
        raise InputError(f"{m} does not divide {n}")
    emb = CycloEmbedding(m, n, CyclotomicElt.zeta(n, n // m))
    if not emb.kills_defining_polynomial():
        raise VerificationError(f"Phi_{m}(zeta_{n}^{n // m}) != 0")
    return emb


def unit_root_solutions(m: int, n: int) -> list[CyclotomicElt]:
    """Roots of Phi_m in Q(zeta_n) among the roots of unity +-zeta_n^k.

    Every root of unity in Q(zeta_n) has this form, so the search is complete.
    """
    if m < 1 or n < 1:
        raise InputError("m and n must be >= 1")
    phi_m = cyclotomic_coeffs(m)
    seen = []
    for k in range(n):
        z = CyclotomicElt.zeta(n, k)
        for cand in (z, -z):
            if cand not in seen and cand.evaluate(phi_m).is_zero():
                seen.append(cand)
    return seen


@dataclass(frozen=True)
class PthRootWitness:
    u_exponent: int  # u = zeta_N^j is a primitive p^(r-1)th root of unity
    alpha_exponent: int  # alpha = zeta_N^i, alpha^p == u, alpha primitive of order N


def verify_pth_root_lifting(p: int, r: int) -> list[PthRootWitness]:
    """Every primitive p^(r-1)th root of unity zeta_N^j (N = p^r) has a pth root
    that is a primitive Nth root of unity. All equalities are checked in Q(zeta_N).
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if r < 2:
        raise InputError("r must be >= 2")
    N = p**r
    out = []
    for j in range(N):
        if math.gcd(j, N) != p:
            continue
        u = CyclotomicElt.zeta(N, j)
        for i in range(N):
            if math.gcd(i, N) != 1:
                continue
            alpha = CyclotomicElt.zeta(N, i)
            if alpha**p == u and alpha.multiplicative_order(N) == N:
                out.append(PthRootWitness(j, i))
                break
        else:
            raise VerificationError(f"no pth root of zeta_{N}^{j} found")
    return out
