"""Subgroup-indexed diagrams of CDGAs and their homology diagrams.

A diagram assigns a presented CDGA to every subgroup and a CDGA map (a norm
shadow) to every covering edge L < K of the lattice. Maps between arbitrary
comparable pairs are composites along maximal chains, so path independence is
checked explicitly rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .abelian import AbelianGroup, Subgroup, SubgroupLattice
from .cdga.algebra import CdgaMap, Element, PresentedCdga, ValidationReport, is_cdga_map
from .cdga.homology import GradedRingValue, HomologyAnalysis, analyze
from .errors import InputError, NotApplicableError, UndeterminedHomologyError, VerificationError
from .exact.cyclotomic import CycloEmbedding, CyclotomicElt, cyclo_embed

Edge = tuple[Subgroup, Subgroup]

KEEP = "beta"
KILL = "0"
NA = "n/a"


class OrbitDiagram:
    """Values on subgroups and shadows on covering edges; immutable by convention."""

    def __init__(
        self,
        lattice: SubgroupLattice,
        values: dict[Subgroup, PresentedCdga],
        shadows: dict[Edge, CdgaMap],
        name: str = "",
    ):
        self.lattice = lattice
        self.group: AbelianGroup = lattice.group
        self.values = dict(values)
        self.shadows = dict(shadows)
        self.name = name

    def id_of(self, s: Subgroup) -> str:
        return self.lattice.id_of(s)

    def chain_label(self, chain) -> str:
        return "<".join(self.id_of(s) for s in chain)

    def composite(self, chain) -> CdgaMap:
        """Composite of the shadows along a saturated chain."""
        f = None
        for a, b in zip(chain, chain[1:]):
            s = self.shadows[(a, b)]
            f = s if f is None else f.compose(s)
        if f is None:
            A = self.values[chain[0]]
            f = CdgaMap(A, A, {n: A.gen(n) for n in A.names})
        return f

    def map_between(self, low: Subgroup, high: Subgroup) -> CdgaMap:
        chains = self.lattice.maximal_chains(low, high)
        if not chains:
            raise InputError(f"{self.id_of(low)} is not contained in {self.id_of(high)}")
        return self.composite(chains[0])

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        lat = self.lattice
        return {
            "group": self.group.name,
            "name": self.name,
            "nodes": {lat.id_of(s): self.values[s].to_json() for s in lat.nodes if s in self.values},
            "edges": [
                {
                    "from": lat.id_of(a),
                    "to": lat.id_of(b),
                    "map": self.shadows[(a, b)].to_json(lat.id_of(a), lat.id_of(b)),
                }
                for a, b in lat.cover_edges()
                if (a, b) in self.shadows
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrbitDiagram":
        lattice = SubgroupLattice(AbelianGroup.parse(data["group"]))
        values = {}
        for sid, cj in data.get("nodes", {}).items():
            if sid not in lattice.by_id:
                raise InputError(f"unknown subgroup id {sid!r} for {data['group']}")
            values[lattice.by_id[sid]] = PresentedCdga.from_json(cj)
        shadows = {}
        for e in data.get("edges", []):
            a, b = lattice.by_id.get(e["from"]), lattice.by_id.get(e["to"])
            if a is None or b is None:
                raise InputError(f"edge {e['from']} -> {e['to']} names an unknown subgroup")
            if a not in values or b not in values:
                raise InputError(f"edge {e['from']} -> {e['to']} has no node values")
            shadows[(a, b)] = CdgaMap.from_json(e["map"], values[a], values[b])
        return cls(lattice, values, shadows, data.get("name", ""))


def _path_independence(D: OrbitDiagram, rep: ValidationReport) -> None:
    lat = D.lattice
    cache: dict[tuple, CdgaMap] = {}

    def comp(chain):
        key = tuple(chain)
        if key not in cache:
            if len(chain) == 2:
                cache[key] = D.shadows[(chain[0], chain[1])]
            else:
                cache[key] = comp(chain[:-1]).compose(D.shadows[(chain[-2], chain[-1])])
        return cache[key]

    for low, high in lat.comparable_pairs():
        chains = lat.maximal_chains(low, high)
        if len(chains) < 2:
            continue
        ref = comp(chains[0])
        for ch in chains[1:]:
            other = comp(ch)
            for g in D.values[low].names:
                if ref.assignment[g] != other.assignment[g]:
                    rep.violations.append(
                        f"path independence fails at ({D.id_of(low)}, {D.id_of(high)}): "
                        f"{D.chain_label(chains[0])} sends {g} to {ref.assignment[g]} but "
                        f"{D.chain_label(ch)} sends it to {other.assignment[g]}"
                    )
                    break


def validate_diagram(D: OrbitDiagram) -> ValidationReport:
    """Every CDGA, every shadow, and path independence. Lists all violations."""
    rep = ValidationReport()
    lat = D.lattice
    for s in lat.nodes:
        if s not in D.values:
            rep.violations.append(f"[{D.id_of(s)}] no CDGA assigned")
            continue
        rep.extend(f"[{D.id_of(s)}] ", D.values[s].validate())
    covers = set(lat.cover_edges())
    for a, b in D.shadows:
        if (a, b) not in covers:
            rep.violations.append(f"shadow on non-covering pair ({D.id_of(a)}, {D.id_of(b)})")
    shadows_ok = True
    for a, b in lat.cover_edges():
        label = f"[{D.id_of(a)}->{D.id_of(b)}] "
        f = D.shadows.get((a, b))
        if f is None:
            rep.violations.append(label + "missing shadow")
            shadows_ok = False
            continue
        if f.source != D.values.get(a) or f.target != D.values.get(b):
            rep.violations.append(label + "source or target does not match the node values")
            shadows_ok = False
            continue
        ok, problems = is_cdga_map(f)
        rep.violations.extend(label + p for p in problems)
    if shadows_ok:
        _path_independence(D, rep)
    return rep


# -- homology diagrams ------------------------------------------------------------
@dataclass
class HomologyEdge:
    """Induced map on homology along one covering edge.

    ``embedding`` is the degree-0 field map (None when either end is zero);
    ``beta`` is KEEP, KILL or NA.
    """

    embedding: CycloEmbedding | None
    beta: str

    @property
    def standard(self) -> bool:
        e = self.embedding
        if e is None:
            return True
        if e.n % e.m:
            return False
        return e.image == cyclo_embed(e.m, e.n).image

    @property
    def injective(self) -> bool:
        return self.embedding is None or _injective(self.embedding)

    def to_json(self) -> dict:
        e = self.embedding
        return {
            "zeta_image": None if e is None else e.image.to_json(),
            "standard": self.standard,
            "beta": self.beta,
        }


@lru_cache(maxsize=4096)
def _injective(emb: CycloEmbedding) -> bool:
    return emb.kills_defining_polynomial() and emb.is_injective()


def compose_beta(first: str, second: str) -> str:
    if NA in (first, second):
        return NA
    return KILL if KILL in (first, second) else KEEP


@dataclass
class HomologyDiagram:
    lattice: SubgroupLattice
    values: dict[Subgroup, GradedRingValue]
    edges: dict[Edge, HomologyEdge]
    analyses: dict[Subgroup, HomologyAnalysis] = field(default_factory=dict, repr=False)

    def id_of(self, s: Subgroup) -> str:
        return self.lattice.id_of(s)

    def beta_pattern(self) -> dict[tuple[str, str], str]:
        return {(self.id_of(a), self.id_of(b)): e.beta for (a, b), e in self.edges.items()}

    def composite(self, chain) -> tuple[CycloEmbedding | None, str]:
        emb, beta = None, KEEP
        for a, b in zip(chain, chain[1:]):
            e = self.edges[(a, b)]
            if e.embedding is None:
                # past a zero node the chain carries no data
                return None, compose_beta(beta, e.beta)
            emb = e.embedding if emb is None else emb.compose(e.embedding)
            beta = compose_beta(beta, e.beta)
        return emb, beta

    def validate(self) -> ValidationReport:
        """Injectivity of degree-0 edges into nonzero nodes plus path independence."""
        rep = ValidationReport()
        for (a, b), e in self.edges.items():
            if not self.values[b].is_zero and not e.injective:
                rep.violations.append(f"[{self.id_of(a)}->{self.id_of(b)}] degree-0 map is not injective")
        lat = self.lattice
        for low, high in lat.comparable_pairs():
            chains = lat.maximal_chains(low, high)
            if len(chains) < 2 or self.values[high].is_zero:
                continue
            ref = self.composite(chains[0])
            for ch in chains[1:]:
                other = self.composite(ch)
                same_emb = (ref[0] is None) == (other[0] is None) and (
                    ref[0] is None or ref[0].image == other[0].image
                )
                if not same_emb or ref[1] != other[1]:
                    rep.violations.append(
                        f"path independence fails at ({self.id_of(low)}, {self.id_of(high)}): "
                        f"{'<'.join(map(self.id_of, chains[0]))} gives beta -> {ref[1]}, "
                        f"{'<'.join(map(self.id_of, ch))} gives beta -> {other[1]}"
                    )
        return rep

    def to_json(self) -> dict:
        lat = self.lattice
        return {
            "group": lat.group.name,
            "nodes": {lat.id_of(s): self.values[s].to_json() for s in lat.nodes},
            "edges": [
                {"from": lat.id_of(a), "to": lat.id_of(b), **self.edges[(a, b)].to_json()}
                for a, b in lat.cover_edges()
                if (a, b) in self.edges
            ],
            "beta_pattern": {f"{a}->{b}": v for (a, b), v in sorted(self.beta_pattern().items())},
        }


def read_h0(info: HomologyAnalysis, A: PresentedCdga, el: Element) -> CyclotomicElt:
    """Class of a degree-0 element in the identified field H0(A)."""
    fid = info.h0
    if fid is None:
        raise NotApplicableError("node has no identified degree-0 field")
    poly = el.to_poly()
    try:
        return fid.to_cyclo(poly.change_ring(fid.variables))
    except ValueError as exc:
        raise NotApplicableError(f"cannot read {el} in H0: {exc}") from exc


def read_beta(info: HomologyAnalysis, A: PresentedCdga, el: Element) -> str:
    """KEEP when ``el`` is a nonzero H0-multiple of the Bott generator, KILL when 0."""
    el = A.normal_form(el)
    if el.is_zero():
        return KILL
    if not info.value.has_beta:
        return KILL if info.value.dim(2) == 0 else NA
    b = A.sig.index[info.beta]
    fid = info.h0
    coeff = {}
    for e, c in el.terms.items():
        if e[b] != 1:
            raise NotApplicableError(f"cannot read the Bott class of {el}")
        rest = list(e)
        rest[b] = 0
        coeff[tuple(rest)] = c
    unit = A.zero()
    for e, c in coeff.items():
        unit = unit + A.element_from_exps(e, c)
    val = read_h0(info, A, unit)
    return KILL if val.is_zero() else KEEP


def _edge_data(a_info, b_info, f: CdgaMap, label: str) -> HomologyEdge:
    va, vb = a_info.value, b_info.value
    if vb.is_zero:
        return HomologyEdge(None, NA)
    if va.is_zero:
        raise VerificationError(f"{label}: ring map from the zero ring into a nonzero ring")
    A, B = f.source, f.target
    zeta = read_h0(b_info, B, f(A.element(a_info.h0.zeta.change_ring(A.names))))
    emb = CycloEmbedding(va.n, vb.n, zeta)
    if va.has_beta:
        beta = read_beta(b_info, B, f(A.gen(a_info.beta)))
    else:
        beta = NA
    return HomologyEdge(emb, beta)


def homology_diagram(D: OrbitDiagram) -> HomologyDiagram:
    """Node homology from structural certificates and induced edge data."""
    infos = {}
    for s in D.lattice.nodes:
        try:
            infos[s] = analyze(D.values[s])
        except UndeterminedHomologyError as exc:
            raise UndeterminedHomologyError(f"homology undetermined at {D.id_of(s)}: {exc}") from exc
    edges = {}
    for (a, b), f in D.shadows.items():
        edges[(a, b)] = _edge_data(infos[a], infos[b], f, f"{D.id_of(a)}->{D.id_of(b)}")
    return HomologyDiagram(D.lattice, {s: i.value for s, i in infos.items()}, edges, infos)


def homology_diagram_isomorphic(H1: HomologyDiagram, H2: HomologyDiagram) -> bool:
    """Isomorphism within the family of standard-inclusion diagrams.

    A node isomorphism multiplies the Bott class by a unit, and a unit times
    the Bott class goes to 0 exactly when the Bott class does; so with node
    shapes equal the beta pattern decides.
    """
    if H1.lattice.group != H2.lattice.group:
        return False
    for H in (H1, H2):
        for (a, b), e in H.edges.items():
            if not e.standard:
                raise NotApplicableError(
                    f"degree-0 edge {H.id_of(a)}->{H.id_of(b)} is not a standard inclusion"
                )
    for s in H1.lattice.nodes:
        if H1.values[s] != H2.values.get(s):
            return False
    return H1.beta_pattern() == H2.beta_pattern()


def beta_pattern_difference(H1: HomologyDiagram, H2: HomologyDiagram) -> list[dict]:
    p1, p2 = H1.beta_pattern(), H2.beta_pattern()
    return [
        {"edge": f"{a}->{b}", "first": p1.get((a, b)), "second": p2.get((a, b))}
        for a, b in sorted(set(p1) | set(p2))
        if p1.get((a, b)) != p2.get((a, b))
    ]


def shadow_constancy_pattern(D: OrbitDiagram, generator: str) -> dict[tuple[str, str], str]:
    """Per edge: whether the shadow sends ``generator`` to a constant.

    Node automorphisms of a polynomial ring keep constants constant and
    nonconstants nonconstant, so this pattern is an isomorphism invariant.
    """
    out = {}
    for (a, b), f in D.shadows.items():
        img = f.assignment[generator]
        out[(D.id_of(a), D.id_of(b))] = "constant" if not img.support() else "nonconstant"
    return out


# -- maps of diagrams ------------------------------------------------------------
class DiagramMap:
    def __init__(self, source: OrbitDiagram, target: OrbitDiagram, components: dict[Subgroup, CdgaMap]):
        if source.lattice.nodes != target.lattice.nodes:
            raise InputError("diagram map between different lattices")
        self.source = source
        self.target = target
        self.components = dict(components)


def validate_diagram_map(F: DiagramMap) -> ValidationReport:
    """Per-node CDGA-map checks and naturality squares on generators."""
    rep = ValidationReport()
    S, T = F.source, F.target
    for s in S.lattice.nodes:
        label = f"[{S.id_of(s)}] "
        f = F.components.get(s)
        if f is None:
            rep.violations.append(label + "missing component")
            continue
        if f.source != S.values[s] or f.target != T.values[s]:
            rep.violations.append(label + "component does not match the node values")
            continue
        ok, problems = is_cdga_map(f)
        rep.violations.extend(label + p for p in problems)
    if not rep.valid:
        return rep
    for a, b in S.lattice.cover_edges():
        fa, fb = F.components[a], F.components[b]
        s_ab, t_ab = S.shadows[(a, b)], T.shadows[(a, b)]
        for g in S.values[a].names:
            lhs = fb(s_ab.assignment[g])
            rhs = t_ab(fa.assignment[g])
            if lhs != rhs:
                rep.violations.append(
                    f"[{S.id_of(a)}->{S.id_of(b)}] naturality fails on {g}: {lhs} != {rhs}"
                )
    return rep


def quasi_iso_problems(F: DiagramMap) -> list[str]:
    """Reasons the map is not a node-wise homology isomorphism (empty when it is)."""
    problems = []
    for s in F.source.lattice.nodes:
        f = F.components[s]
        label = f"[{F.source.id_of(s)}] "
        ok, bad = is_cdga_map(f)
        if not ok:
            problems.extend(label + b for b in bad)
            continue
        si, ti = analyze(f.source), analyze(f.target)
        if si.value != ti.value:
            problems.append(label + f"homology {si.value} vs {ti.value}")
            continue
        if si.value.is_zero:
            continue
        n = si.value.n
        z = read_h0(ti, f.target, f(f.source.element(si.h0.zeta.change_ring(f.source.names))))
        if z.multiplicative_order(2 * n) != n:
            problems.append(label + f"primitive root maps to {z}, not of order {n}")
        if si.value.has_beta and read_beta(ti, f.target, f(f.source.gen(si.beta))) != KEEP:
            problems.append(label + "Bott class is not sent to a unit multiple of the Bott class")
    return problems


def is_quasi_iso(F: DiagramMap) -> bool:
    """Node-wise: equal shapes, primitive root to primitive root, Bott class to a unit
    multiple of the Bott class. An injective map between fields of equal finite
    dimension is bijective, which settles H0; the Bott condition then settles all
    higher degrees as each is a one-dimensional H0-module."""
    return not quasi_iso_problems(F)
