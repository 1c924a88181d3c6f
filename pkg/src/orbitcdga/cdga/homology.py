"""Structural homology of presented CDGAs.

The presented algebras are infinite dimensional in each degree, so homology is
read off from certificates rather than from matrices: the algebra is split into
blocks that the differential does not mix, each block is recognized (Koszul
complete intersection, unit boundary, polynomial or Laurent Bott block, formal
quotient), and the Kunneth theorem assembles the answer. The truncated oracle in
``oracle.py`` is the independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import NotApplicableError, UndeterminedHomologyError, VerificationError
from ..exact.cyclotomic import CyclotomicElt, cyclotomic, cyclotomic_coeffs, euler_phi
from ..exact.ideal import INFINITE, IdealNF
from ..exact.linalg import solve_in_span
from ..exact.poly import MultiPoly
from .algebra import CdgaMap, Element, PresentedCdga, is_cdga_map

KINDS = ("zero", "field", "poly", "laurent")


@dataclass(frozen=True)
class GradedRingValue:
    """Zero ring, Q(zeta_n) in degree 0, Q(zeta_n)[beta] or Q(zeta_n)[beta, beta^-1]."""

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown shape {self.kind!r}")
        if self.kind == "zero":
            object.__setattr__(self, "n", 0)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def has_beta(self) -> bool:
        return self.kind in ("poly", "laurent")

    @property
    def h0_dim(self) -> int:
        return 0 if self.is_zero else euler_phi(self.n)

    def dim(self, degree: int) -> int:
        if self.is_zero or degree % 2:
            return 0
        if self.kind == "field":
            return self.h0_dim if degree == 0 else 0
        if self.kind == "poly":
            return self.h0_dim if degree >= 0 else 0
        return self.h0_dim

    def dims(self, lo: int, hi: int) -> dict[int, int]:
        return {k: self.dim(k) for k in range(lo, hi + 1)}

    @property
    def shape(self) -> str:
        if self.is_zero:
            return "0"
        base = "Q" if self.n == 1 else f"Q(zeta_{self.n})"
        return base + {"field": "", "poly": "[beta]", "laurent": "[beta,beta^-1]"}[self.kind]

    def with_beta(self, kind: str) -> "GradedRingValue":
        return self if self.is_zero else GradedRingValue(kind, self.n)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "shape": self.shape}

    @classmethod
    def from_json(cls, data) -> "GradedRingValue":
        return cls(data["kind"], int(data.get("n", 1)))

    def __str__(self):
        return self.shape


ZERO_RING = GradedRingValue("zero")
RATIONALS = GradedRingValue("field", 1)


# -- blocks -----------------------------------------------------------------
def blocks(A: PresentedCdga) -> list[list[str]]:
    """Connected components of generators linked through differentials or relations."""
    parent = {n: n for n in A.names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for n in A.names:
        for m in A.d_gen(n).support():
            union(n, m)
    for r in A.relations:
        vs = sorted(r.support_variables())
        for v in vs[1:]:
            union(vs[0], v)
    comps: dict[str, list[str]] = {}
    for n in A.names:
        comps.setdefault(find(n), []).append(n)
    return list(comps.values())


def _koszul_shape(A: PresentedCdga, names) -> tuple[list[str], list[str]] | None:
    """(polynomial vars, exterior vars) if ``names`` has the Koszul shape, else None."""
    xs, ts = [], []
    for n in names:
        deg = A.degree(n)
        dg = A.d_gen(n)
        if deg == 0 and dg.is_zero():
            xs.append(n)
        elif deg == 1:
            ts.append(n)
        else:
            return None
    xset = set(xs)
    for t in ts:
        if not A.d_gen(t).support() <= xset:
            return None
    if any(r.support_variables() for r in A.relations if r.support_variables() & set(names)):
        return None
    return xs, ts


@dataclass
class KoszulCertificate:
    """Homology is concentrated in degree 0 and H0 = Q[variables]/ideal."""

    variables: tuple[str, ...]
    exterior: tuple[str, ...]
    ideal: IdealNF
    dimension: int
    concentrated_in_degree_zero: bool = True

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "exterior": list(self.exterior),
            "ideal_basis": [b.to_json() for b in self.ideal.basis],
            "dimension": self.dimension,
            "concentrated_in_degree_zero": True,
        }


def _koszul_certificate(A: PresentedCdga, names) -> KoszulCertificate | None:
    shape = _koszul_shape(A, names)
    if shape is None:
        return None
    xs, ts = shape
    if len(xs) != len(ts):
        return None
    xs_t = tuple(xs)
    if not xs:
        return KoszulCertificate((), tuple(ts), IdealNF([], variables=()), 1)
    gens = [A.d_gen(t).to_poly().change_ring(xs_t) for t in ts]
    ideal = IdealNF(gens, variables=xs_t)
    dim = ideal.quotient_dimension()
    if dim == INFINITE:
        return None
    return KoszulCertificate(xs_t, tuple(ts), ideal, int(dim))


def complete_intersection_certificate(A: PresentedCdga) -> KoszulCertificate | None:
    """Certificate for the whole algebra when it has the Koszul shape, else None.

    m polynomial generators in degree 0, m exterior generators in degree 1 with
    differentials in the polynomial subring, and a zero-dimensional quotient:
    the differentials then form a regular sequence and the Koszul complex is
    acyclic above degree 0.
    """
    return _koszul_certificate(A, A.names)


def acyclic_by_unit_boundary(A: PresentedCdga) -> bool:
    """True when 1 = d(c) for some degree-1 c, which makes all homology vanish.

    Sufficient test: 1 lies in the ideal of Q[degree-0 cycles] generated by
    the relations and the differentials of degree-1 generators that land there.
    """
    if A.is_zero_ring:
        return True
    ring = tuple(n for n in A.even_names if A.d_gen(n).is_zero())
    if not ring and not A.names:
        return False
    rset = set(ring)
    gens = []
    for n, deg in A.generators:
        if deg == 1:
            dg = A.d_gen(n)
            if dg.support() <= rset and not dg.is_zero():
                gens.append(dg.to_poly().change_ring(ring))
    for r in A.relations:
        if r.support_variables() <= rset:
            gens.append(r.change_ring(ring))
    if not gens:
        return False
    return IdealNF(gens, variables=ring).is_unit


# -- finite quotient rings and field identification ---------------------------
def _mul_nf(ideal: IdealNF, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return ideal.normal_form(a * b)


def multiplicative_order(ideal: IdealNF, f: MultiPoly, limit: int) -> int | None:
    one = MultiPoly.constant(ideal.variables, 1)
    f = ideal.normal_form(f.change_ring(ideal.variables))
    cur = f
    for k in range(1, limit + 1):
        if cur == one:
            return k
        cur = _mul_nf(ideal, cur, f)
    return None


def minimal_polynomial(ideal: IdealNF, f: MultiPoly) -> list[Fraction]:
    """Ascending coefficients of the monic minimal polynomial of f in the quotient."""
    mons = ideal.standard_monomials()
    f = ideal.normal_form(f.change_ring(ideal.variables))
    powers = [ideal.coordinates(MultiPoly.constant(ideal.variables, 1), mons)]
    cur = MultiPoly.constant(ideal.variables, 1)
    while True:
        cur = _mul_nf(ideal, cur, f)
        vec = ideal.coordinates(cur, mons)
        sol = solve_in_span(powers, vec)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)]
        powers.append(vec)


def _components(ideal: IdealNF) -> list[list[str]]:
    parent = {v: v for v in ideal.variables}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for g in ideal.generators:
        vs = sorted(g.support_variables())
        for v in vs[1:]:
            a, b = find(vs[0]), find(v)
            if a != b:
                parent[b] = a
    comps: dict[str, list[str]] = {}
    for v in ideal.variables:
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


@dataclass
class FieldIdentification:
    """An explicit isomorphism Q[variables]/ideal -> Q(zeta_n).

    ``zeta`` is the polynomial sent to zeta_n; ``images`` gives every variable's
    image. ``witness`` is the product of the per-block top variables, a
    primitive nth root of unity.
    """

    ideal: IdealNF
    n: int
    zeta: MultiPoly
    images: dict[str, CyclotomicElt]
    witness: MultiPoly
    tops: tuple[str, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ideal.variables

    def to_cyclo(self, f: MultiPoly) -> CyclotomicElt:
        f = f.change_ring(self.variables)
        out = CyclotomicElt.scalar(self.n, 0)
        for e, c in f.terms.items():
            term = CyclotomicElt.scalar(self.n, c)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * self.images[v] ** k
            out = out + term
        return out


def identify_field(ideal: IdealNF) -> FieldIdentification | None:
    """Recognize Q[vars]/I as a cyclotomic field, or return None.

    Per connected block of variables the top variable (occurring in exactly
    one generator) is located and its order o found; with pairwise coprime
    orders the element prod top^e, e = (n/o)^-1 mod o, is a primitive nth root
    whose powers give each top as zeta^(n/o). Its minimal polynomial must be
    Phi_n of degree dim.
    """
    dim = ideal.quotient_dimension()
    if dim == INFINITE or dim == 0:
        return None
    vars_ = ideal.variables
    if not vars_:
        return FieldIdentification(
            ideal, 1, MultiPoly.constant((), 1), {}, MultiPoly.constant((), 1), ()
        )
    limit = max(2 * dim * dim, 2)
    tops, orders = [], []
    for comp in _components(ideal):
        counts = {v: sum(1 for g in ideal.generators if v in g.support_variables()) for v in comp}
        cands = [v for v in comp if counts[v] == 1]
        if len(cands) != 1:
            cands = comp
        best = None
        for v in cands:
            o = multiplicative_order(ideal, MultiPoly.variable(vars_, v), limit)
            if o is None:
                return None
            if best is None or o > best[1]:
                best = (v, o)
        tops.append(best[0])
        orders.append(best[1])
    if any(math.gcd(a, b) != 1 for i, a in enumerate(orders) for b in orders[i + 1 :]):
        return None
    n = math.prod(orders)
    zeta = MultiPoly.constant(vars_, 1)
    witness = MultiPoly.constant(vars_, 1)
    for v, o in zip(tops, orders):
        x = MultiPoly.variable(vars_, v)
        witness = witness * x
        e = pow(n // o, -1, o) if o > 1 else 0
        zeta = ideal.normal_form(zeta * x**e)
    mp = minimal_polynomial(ideal, zeta)
    if len(mp) - 1 != dim or tuple(mp) != tuple(Fraction(c) for c in cyclotomic_coeffs(n)):
        return None
    mons = ideal.standard_monomials()
    pw = [ideal.coordinates(ideal.normal_form(zeta**i), mons) for i in range(dim)]
    images = {}
    for v in vars_:
        sol = solve_in_span(pw, ideal.coordinates(MultiPoly.variable(vars_, v), mons))
        if sol is None:
            return None
        images[v] = CyclotomicElt(n, tuple(sol))
    return FieldIdentification(ideal, n, ideal.normal_form(zeta), images, witness, tuple(tops))


# -- whole-algebra analysis -----------------------------------------------------
@dataclass
class HomologyAnalysis:
    value: GradedRingValue
    h0: FieldIdentification | None = None
    certificate: KoszulCertificate | None = None
    beta: str | None = None
    beta_inverse: str | None = None
    blocks: list[tuple[str, list[str]]] = field(default_factory=list)

    def describe(self) -> str:
        parts = [f"{kind}{{{','.join(names)}}}" for kind, names in self.blocks]
        return f"{self.value} via " + (" (x) ".join(parts) if parts else "unit")


def _is_laurent_block(A: PresentedCdga, names) -> tuple[str, str] | None:
    if len(names) != 3:
        return None
    by_deg = {A.degree(n): n for n in names}
    if set(by_deg) != {2, -2, 1}:
        return None
    g, gb, y = by_deg[2], by_deg[-2], by_deg[1]
    if not (A.d_gen(g).is_zero() and A.d_gen(gb).is_zero()):
        return None
    if A.relations and any(r.support_variables() & set(names) for r in A.relations):
        return None
    expected = A.gen(g) * A.gen(gb) - 1
    dy = A.d_gen(y)
    if dy.is_zero():
        return None
    e0, c0 = next(iter(expected.terms.items()))
    if e0 not in dy.terms:
        return None
    if dy != expected * (dy.terms[e0] / c0):
        return None
    return g, gb


def _formal_laurent_block(A: PresentedCdga, names) -> tuple[str, str] | None:
    if len(names) != 2 or any(not A.d_gen(n).is_zero() for n in names):
        return None
    by_deg = {A.degree(n): n for n in names}
    if set(by_deg) != {2, -2}:
        return None
    b, bi = by_deg[2], by_deg[-2]
    rels = [r for r in A.relations if r.support_variables() & set(names)]
    if len(rels) != 1:
        return None
    if not A.ideal.contains(A.element(rels[0]).to_poly().change_ring(A.even_names)):
        return None
    prod = (A.gen(b) * A.gen(bi) - 1).to_poly().change_ring(A.even_names)
    if not A.ideal.contains(prod):
        return None
    return b, bi


def analyze(A: PresentedCdga) -> HomologyAnalysis:
    """Homology with the data needed downstream; raises UndeterminedHomologyError."""
    if A.is_zero_ring:
        return HomologyAnalysis(ZERO_RING, blocks=[("zero-ring", [])])
    degree0: list[str] = []
    koszul_names: list[str] = []
    formal_names: list[str] = []
    beta = beta_inv = None
    beta_kind = None
    zero = False
    described = []
    for comp in blocks(A):
        if _koszul_shape(A, comp) is not None and not acyclic_by_unit_boundary(A.restrict(comp)):
            koszul_names.extend(comp)
            described.append(("koszul", comp))
            continue
        sub = A.restrict(comp)
        if acyclic_by_unit_boundary(sub):
            zero = True
            described.append(("unit-boundary", comp))
            continue
        if len(comp) == 1 and A.degree(comp[0]) == 2 and A.d_gen(comp[0]).is_zero():
            has_rel = any(comp[0] in r.support_variables() for r in A.relations)
            if not has_rel:
                if beta is not None:
                    raise UndeterminedHomologyError("more than one Bott block")
                beta, beta_kind = comp[0], "poly"
                described.append(("polynomial-bott", comp))
                continue
        lb = _is_laurent_block(A, comp) or _formal_laurent_block(A, comp)
        if lb is not None:
            if beta is not None:
                raise UndeterminedHomologyError("more than one Bott block")
            beta, beta_inv = lb
            beta_kind = "laurent"
            described.append(("laurent-bott", comp))
            continue
        if all(A.degree(n) == 0 and A.d_gen(n).is_zero() for n in comp) and any(
            r.support_variables() & set(comp) for r in A.relations
        ):
            formal_names.extend(comp)
            described.append(("formal-quotient", comp))
            continue
        raise UndeterminedHomologyError(f"unrecognized block {comp}")

    if zero:
        return HomologyAnalysis(ZERO_RING, blocks=described)

    cert = None
    if koszul_names and formal_names:
        raise UndeterminedHomologyError("mixed Koszul and formal degree-0 blocks")
    if koszul_names:
        cert = _koszul_certificate(A, koszul_names)
        if cert is None:
            raise UndeterminedHomologyError(f"Koszul block {koszul_names} is not a complete intersection")
        ideal = cert.ideal
    elif formal_names:
        fvars = tuple(n for n in A.even_names if n in set(formal_names))
        rels = [r.change_ring(fvars) for r in A.relations if r.support_variables() <= set(fvars)]
        ideal = IdealNF(rels, variables=fvars)
    else:
        ideal = IdealNF([], variables=())

    if ideal.is_unit:
        return HomologyAnalysis(ZERO_RING, certificate=cert, blocks=described)
    fid = identify_field(ideal)
    if fid is None:
        raise UndeterminedHomologyError("degree-0 quotient is not a recognized cyclotomic field")
    kind = beta_kind or "field"
    return HomologyAnalysis(
        GradedRingValue(kind, fid.n), fid, cert, beta, beta_inv, described
    )


def homology_of(A: PresentedCdga) -> GradedRingValue | None:
    """Homology as a graded ring, or None when the shape is not recognized."""
    try:
        return analyze(A).value
    except UndeterminedHomologyError:
        return None


@dataclass
class RootWitness:
    element: Element
    order: int
    minimal_polynomial: tuple[Fraction, ...]


def primitive_root_witness(A: PresentedCdga) -> RootWitness:
    """Product of the top tower generators, with verified order and minimal polynomial."""
    info = analyze(A)
    if info.h0 is None:
        raise NotApplicableError("degree-0 homology is not an identified cyclotomic field")
    fid = info.h0
    n = fid.n
    order = multiplicative_order(fid.ideal, fid.witness, max(2 * n, 2))
    mp = tuple(minimal_polynomial(fid.ideal, fid.witness))
    expected = tuple(Fraction(c) for c in cyclotomic_coeffs(n))
    if order != n or mp != expected or n != info.value.n:
        raise VerificationError(f"witness has order {order} and minimal polynomial {mp}, expected Phi_{n}")
    return RootWitness(A.element(fid.witness), order, mp)


# -- formal targets -----------------------------------------------------------
ZETA = "z"
BETA = "beta"
BETA_INV = "betainv"


def formal_cdga(value: GradedRingValue) -> PresentedCdga:
    """Presentation of ``value`` as a zero-differential CDGA."""
    if value.is_zero:
        return PresentedCdga((), {}, [MultiPoly.constant((), 1)])
    gens, rels = [], []
    if value.n > 1:
        gens.append((ZETA, 0))
    if value.has_beta:
        gens.append((BETA, 2))
    if value.kind == "laurent":
        gens.append((BETA_INV, -2))
    even = tuple(n for n, _ in gens)
    if value.n > 1:
        rels.append(cyclotomic(value.n, ZETA).change_ring(even))
    if value.kind == "laurent":
        rels.append(
            MultiPoly.variable(even, BETA) * MultiPoly.variable(even, BETA_INV) - 1
        )
    return PresentedCdga(gens, {}, rels)


def cyclo_to_element(target: PresentedCdga, x: CyclotomicElt) -> Element:
    """Write a field element as a polynomial in the formal generator z."""
    if x.n == 1:
        return target.const(x.coeffs[0])
    return target.normal_form(target.element(x.to_poly(ZETA)))


def quotient_to_h0_map(A: PresentedCdga) -> CdgaMap:
    """The quotient map A -> H0(A) for nonnegatively graded A with homology in degree 0."""
    if any(d < 0 for _, d in A.generators):
        raise NotApplicableError("generators in negative degrees")
    info = analyze(A)
    if info.value.kind not in ("field", "zero"):
        raise NotApplicableError(f"homology {info.value} is not concentrated in degree 0")
    H = formal_cdga(info.value)
    assignment = {}
    for n, deg in A.generators:
        if info.value.is_zero or deg != 0:
            assignment[n] = H.zero()
        elif info.h0 is not None and n in info.h0.images:
            assignment[n] = cyclo_to_element(H, info.h0.images[n])
        else:
            raise NotApplicableError(f"degree-0 generator {n} outside the identified H0")
    f = CdgaMap(A, H, assignment)
    ok, problems = is_cdga_map(f)
    if not ok:
        raise VerificationError(f"quotient map is not a CDGA map: {problems}")
    if not info.value.is_zero:
        zeta_img = f(A.element(info.h0.zeta))
        target_info = analyze(H)
        img = target_info.h0.to_cyclo(zeta_img.to_poly().change_ring(target_info.h0.variables))
        if img.multiplicative_order(2 * info.value.n) != info.value.n:
            raise VerificationError("quotient map is not bijective on H0")
    return f
