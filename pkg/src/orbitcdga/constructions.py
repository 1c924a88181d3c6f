"""Explicit diagrams over subgroup lattices and their formality maps.

Generator names follow the lattice ids: ``x_C4``/``t_C4`` for the tower over
the cyclic p-subgroup C4, ``a`` for the acyclic exterior factor at non-cyclic
nodes, and ``gamma``, ``gammabar``, ``y``, ``beta`` for the periodicity factors.
Shadows between nodes are name-preserving inclusions unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup, Subgroup, SubgroupLattice, _prime_power, cyclic_p_subgroups
from .cdga.algebra import CdgaMap, PresentedCdga, inclusion_map, unit_cdga
from .cdga.homology import (
    BETA,
    BETA_INV,
    ZETA,
    GradedRingValue,
    complete_intersection_certificate,
    cyclo_to_element,
    formal_cdga,
)
from .errors import InputError, SizeLimitError, VerificationError
from .exact.cyclotomic import CyclotomicElt, cyclotomic, euler_phi, is_prime
from .exact.poly import MultiPoly
from .orbit import KEEP, DiagramMap, OrbitDiagram, homology_diagram, quasi_iso_problems, validate_diagram_map

PIPELINE_MAX_ORDER = 36

GAMMA, GAMMABAR, Y, A = "gamma", "gammabar", "y", "a"


def _lattice(G: AbelianGroup, max_order: int = PIPELINE_MAX_ORDER) -> SubgroupLattice:
    if G.order > max_order:
        raise SizeLimitError(f"|{G.name}| = {G.order} exceeds the pipeline bound {max_order}")
    return SubgroupLattice(G)


def _b_node(lat: SubgroupLattice, K: Subgroup) -> PresentedCdga:
    gens, diff = [], {}
    towers = cyclic_p_subgroups(K)
    names = []
    for c in towers:
        sid = lat.id_of(c.subgroup)
        names += [f"x_{sid}", f"t_{sid}"]
    if not K.is_cyclic:
        names.append(A)
    ring = tuple(names)
    for c in towers:
        sid = lat.id_of(c.subgroup)
        x, t = f"x_{sid}", f"t_{sid}"
        gens += [(x, 0), (t, 1)]
        xv = MultiPoly.variable(ring, x)
        if c.exponent == 1:
            diff[t] = cyclotomic(c.prime, x).change_ring(ring)
        else:
            diff[t] = MultiPoly.variable(ring, f"x_{lat.id_of(c.parent)}") - xv**c.prime
    if not K.is_cyclic:
        gens.append((A, 1))
        diff[A] = MultiPoly.constant(ring, 1)
    return PresentedCdga(gens, diff)


def _extend(B: PresentedCdga, extra, extra_diff=None) -> PresentedCdga:
    gens = list(B.generators) + list(extra)
    ring = tuple(n for n, _ in gens)
    diff = {n: B.d_gen(n).to_poly().change_ring(ring) for n in B.names}
    for n, p in (extra_diff or {}).items():
        diff[n] = p(ring)
    return PresentedCdga(gens, diff)


def _assemble(lat, values, name, overrides=None) -> OrbitDiagram:
    """Inclusion shadows on every cover, with ``overrides(L, K, target)`` replacing images."""
    shadows = {}
    for L, K in lat.cover_edges():
        ov = overrides(L, K, values[K]) if overrides else None
        shadows[(L, K)] = inclusion_map(values[L], values[K], ov)
    return OrbitDiagram(lat, values, shadows, name)


def build_B(G: AbelianGroup) -> OrbitDiagram:
    """Root towers with Koszul differentials, plus E(a), d(a) = 1, at non-cyclic nodes."""
    lat = _lattice(G)
    values = {K: _b_node(lat, K) for K in lat.nodes}
    return _assemble(lat, values, "B")


def build_D_KU(G: AbelianGroup) -> OrbitDiagram:
    """B tensored with Q[gamma, gammabar] (degrees 2, -2) and E(y), d(y) = gamma gammabar - 1."""
    lat = _lattice(G)

    def dy(ring):
        return MultiPoly.variable(ring, GAMMA) * MultiPoly.variable(ring, GAMMABAR) - 1

    values = {
        K: _extend(_b_node(lat, K), [(GAMMA, 2), (GAMMABAR, -2), (Y, 1)], {Y: dy}) for K in lat.nodes
    }
    return _assemble(lat, values, "D-KU")


def build_Dprime_ku(G: AbelianGroup) -> OrbitDiagram:
    """B tensored with Q[gamma], |gamma| = 2, d(gamma) = 0."""
    lat = _lattice(G)
    values = {K: _extend(_b_node(lat, K), [(GAMMA, 2)]) for K in lat.nodes}
    return _assemble(lat, values, "Dprime-ku")


def build_beta_pattern_diagram(G: AbelianGroup, kill, name: str = "beta-pattern") -> OrbitDiagram:
    """B tensored with Q[beta]; the shadow on L < K sends beta to 0 when ``kill(L, K)``.

    Edges into non-cyclic nodes always send beta to 0 (their homology is zero,
    so this carries no choice and keeps every composite into them equal).
    """
    lat = _lattice(G)
    values = {K: _extend(_b_node(lat, K), [(BETA, 2)]) for K in lat.nodes}

    def overrides(L, K, target):
        if not K.is_cyclic or kill(L, K):
            return {BETA: target.zero()}
        return None

    return _assemble(lat, values, name, overrides)


def build_A_kill_beta(G: AbelianGroup) -> OrbitDiagram:
    """B tensored with Q[beta] where every shadow sends beta to 0."""
    return build_beta_pattern_diagram(G, lambda L, K: True, "A-kill-beta")


# -- the C_{p^2} counterexample ----------------------------------------------------
@dataclass
class CounterexampleQuery:
    """Three-node chain e < C_p < C_{p^2} with the middle shadow left open.

    The top node is Q[x] (x) E(y), d(y) = Phi_{p^2}(x), whose homology is
    Q(zeta_{p^2}) by its Koszul certificate, while C_p carries the formal
    field Q(zeta_p).
    """

    p: int
    lattice: SubgroupLattice
    values: dict[Subgroup, PresentedCdga]
    fixed_shadows: dict[tuple[Subgroup, Subgroup], CdgaMap]
    query_edge: tuple[Subgroup, Subgroup]
    top_dimension: int
    flagged: bool
    notes: list[str] = field(default_factory=list)

    def query(self):
        from .structures import decide_norm_shadow

        src, tgt = self.query_edge
        return decide_norm_shadow(self.p, self.values[tgt])

    def complete(self) -> OrbitDiagram | None:
        """The full diagram using the witness shadow, or None when none exists."""
        res = self.query()
        if res.verdict != "exists":
            return None
        src, tgt = self.query_edge
        shadow = CdgaMap(self.values[src], self.values[tgt], res.assignment)
        shadows = {e: f for e, f in self.fixed_shadows.items() if e in set(self.lattice.cover_edges())}
        shadows[self.query_edge] = shadow
        return OrbitDiagram(self.lattice, self.values, shadows, f"counterexample-{self.p}")


def build_counterexample(p: int) -> CounterexampleQuery:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    G = AbelianGroup((p * p,))
    lat = _lattice(G, max_order=10**6)
    e, Cp, Cpp = lat.nodes
    top_ring = ("x", "y")
    top = PresentedCdga([("x", 0), ("y", 1)], {"y": cyclotomic(p * p, "x").change_ring(top_ring)})
    cert = complete_intersection_certificate(top)
    if cert is None or cert.dimension != euler_phi(p * p):
        raise VerificationError(f"top node homology is not Q(zeta_{p * p})")
    mid = formal_cdga_field(p)
    values = {e: unit_cdga(), Cp: mid, Cpp: top}
    fixed = {(e, Cp): CdgaMap(values[e], mid, {}), (e, Cpp): CdgaMap(values[e], top, {})}
    notes = []
    if p == 2:
        notes.append("p = 2: Q(zeta_2) = Q and the unit map supplies the missing shadow")
    return CounterexampleQuery(p, lat, values, fixed, (Cp, Cpp), cert.dimension, p == 2, notes)


def formal_cdga_field(n: int) -> PresentedCdga:
    return formal_cdga(GradedRingValue("field", n))


# -- the C2 pair with different shadows on a polynomial generator ----------------
def build_example_C2_pair() -> tuple[OrbitDiagram, OrbitDiagram]:
    """Q[x] at both nodes of C2, with shadow x -> x in the first and x -> 0 in the second."""
    lat = SubgroupLattice(AbelianGroup((2,)))
    e, C2 = lat.nodes
    node = PresentedCdga([("x", 0)])
    values = {e: node, C2: node}
    ident = OrbitDiagram(lat, values, {(e, C2): CdgaMap(node, node, {"x": node.gen("x")})}, "n-identity")
    zero = OrbitDiagram(lat, values, {(e, C2): CdgaMap(node, node, {"x": node.zero()})}, "n-zero")
    return ident, zero


# -- formality maps ----------------------------------------------------------------
def formal_diagram(D: OrbitDiagram):
    """The zero-differential diagram H(D) with shadows induced on homology."""
    H = homology_diagram(D)
    values = {K: formal_cdga(H.values[K]) for K in D.lattice.nodes}
    shadows = {}
    for (L, K), edge in H.edges.items():
        src, tgt = values[L], values[K]
        assignment = {}
        for n in src.names:
            if tgt.is_zero_ring:
                assignment[n] = tgt.zero()
            elif n == ZETA:
                assignment[n] = cyclo_to_element(tgt, edge.embedding.image)
            elif n == BETA:
                assignment[n] = tgt.gen(BETA) if edge.beta == KEEP else tgt.zero()
            elif n == BETA_INV:
                assignment[n] = tgt.gen(BETA_INV)
            else:
                raise VerificationError(f"unexpected formal generator {n}")
        shadows[(L, K)] = CdgaMap(src, tgt, assignment)
    return OrbitDiagram(D.lattice, values, shadows, f"H({D.name})"), H


def _component(lat: SubgroupLattice, K: Subgroup, S: PresentedCdga, T: PresentedCdga) -> CdgaMap:
    assignment = {}
    n_K = K.order
    for n, deg in S.generators:
        if T.is_zero_ring or not K.is_cyclic:
            assignment[n] = T.zero()
        elif n.startswith("x_"):
            L = lat.by_id[n[2:]]
            assignment[n] = cyclo_to_element(T, CyclotomicElt.zeta(n_K, n_K // L.order))
        elif n.startswith("t_") or n in (Y, A):
            assignment[n] = T.zero()
        elif n in (GAMMA, BETA):
            assignment[n] = T.gen(BETA)
        elif n == GAMMABAR:
            assignment[n] = T.gen(BETA_INV)
        else:
            raise InputError(f"no formality image rule for generator {n}")
    return CdgaMap(S, T, assignment)


def build_formality_map(D: OrbitDiagram, verify: bool = True) -> DiagramMap:
    """Map D -> H(D) sending x_L to zeta_|K|^(|K|/|L|) at cyclic K and everything else to
    0, beta or beta^-1. With ``verify`` the map is checked and failures raise."""
    F, _ = formal_diagram(D)
    comps = {K: _component(D.lattice, K, D.values[K], F.values[K]) for K in D.lattice.nodes}
    M = DiagramMap(D, F, comps)
    if verify:
        rep = validate_diagram_map(M)
        if not rep.valid:
            raise VerificationError("formality map fails: " + "; ".join(rep.violations))
        problems = quasi_iso_problems(M)
        if problems:
            raise VerificationError("formality map is not a quasi-isomorphism: " + "; ".join(problems))
    return M


CONSTRUCTIONS = {
    "B": build_B,
    "D-KU": build_D_KU,
    "Dprime-ku": build_Dprime_ku,
    "A-kill-beta": build_A_kill_beta,
}


def build_named(name: str, G: AbelianGroup) -> OrbitDiagram:
    if name not in CONSTRUCTIONS:
        raise InputError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTIONS)}")
    return CONSTRUCTIONS[name](G)


def counterexample_prime(G: AbelianGroup) -> int:
    """p for G = C_{p^2}, else InputError."""
    pp = _prime_power(G.order) if len(G.cyclic_orders) == 1 else None
    if pp is None or pp[1] != 2:
        raise InputError(f"the counterexample needs a cyclic group of order p^2, got {G.name}")
    return pp[0]
