"""Bott-class patterns, the norm-shadow decision procedure and the uniqueness report.

Patterns: on the diagram whose value at a cyclic K is Q(zeta_|K|)[beta], with
degree-0 shadows the standard field inclusions, each covering edge between
cyclic subgroups sends beta either to beta (keep) or to 0 (kill). An assignment
is admissible when, for every pair L <= N, all maximal chains give the same
composite status. Edges into non-cyclic nodes land in the zero ring and carry
no choice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .abelian import AbelianGroup, Subgroup, SubgroupLattice
from .cdga.algebra import PresentedCdga
from .cdga.homology import GradedRingValue, analyze, primitive_root_witness
from .constructions import (
    PIPELINE_MAX_ORDER,
    build_A_kill_beta,
    build_B,
    build_D_KU,
    build_Dprime_ku,
    build_formality_map,
)
from .errors import InputError, NotApplicableError, OrbitCdgaError, SizeLimitError
from .exact.cyclotomic import (
    CyclotomicElt,
    cyclo_embed,
    cyclotomic_coeffs,
    euler_phi,
    rational_roots,
    unit_root_solutions,
)
from .orbit import (
    KEEP,
    KILL,
    NA,
    HomologyDiagram,
    HomologyEdge,
    beta_pattern_difference,
    homology_diagram,
    homology_diagram_isomorphic,
    is_quasi_iso,
    validate_diagram,
    validate_diagram_map,
)

MAX_PATTERN_EDGES = 20


@dataclass(frozen=True)
class BetaPattern:
    """Status (KEEP or KILL) per covering edge of the cyclic subposet, keyed by ids."""

    statuses: tuple[tuple[tuple[str, str], str], ...]

    def as_dict(self) -> dict[tuple[str, str], str]:
        return dict(self.statuses)

    def encoding(self) -> str:
        return "".join("k" if s == KEEP else "x" for _, s in self.statuses)

    def to_json(self) -> dict:
        return {f"{a}->{b}": s for (a, b), s in self.statuses}


@dataclass
class Rejection:
    pattern: BetaPattern
    location: tuple[str, str]
    chains: tuple[str, str]

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "violation_at": list(self.location),
            "chains": list(self.chains),
        }


@dataclass
class PatternEnumeration:
    group: str
    edges: list[tuple[str, str]]
    patterns: list[BetaPattern]
    rejected: list[Rejection]
    invertible: bool = False

    @property
    def count(self) -> int:
        return len(self.patterns)


def _cyclic_edges(lat: SubgroupLattice) -> list[tuple[Subgroup, Subgroup]]:
    return [(a, b) for a, b in lat.cover_edges() if a.is_cyclic and b.is_cyclic]


def pattern_homology_diagram(lat: SubgroupLattice, statuses: dict[tuple[Subgroup, Subgroup], str]) -> HomologyDiagram:
    """Q(zeta_|K|)[beta] at cyclic K, 0 elsewhere, standard inclusions, given beta statuses."""
    values = {
        K: GradedRingValue("poly", K.order) if K.is_cyclic else GradedRingValue("zero") for K in lat.nodes
    }
    edges = {}
    for a, b in lat.cover_edges():
        if b.is_cyclic:
            edges[(a, b)] = HomologyEdge(cyclo_embed(a.order, b.order), statuses[(a, b)])
        else:
            edges[(a, b)] = HomologyEdge(None, NA)
    return HomologyDiagram(lat, values, edges)


def enumerate_beta_patterns(G: AbelianGroup, invertible: bool = False) -> PatternEnumeration:
    """All path-consistent keep/kill assignments, brute force over 2^edges.

    With ``invertible`` the Bott class is a unit at every nonzero node, and a
    ring map cannot send a unit to 0 in a nonzero ring, so kill is excluded.
    """
    lat = SubgroupLattice(G)
    edges = _cyclic_edges(lat)
    if len(edges) > MAX_PATTERN_EDGES:
        raise SizeLimitError(f"{len(edges)} cyclic covering edges; brute force is capped at {MAX_PATTERN_EDGES}")
    bit = {e: i for i, e in enumerate(edges)}
    # pairs with several maximal chains, each chain as a bit mask
    multi = []
    for low, high in lat.comparable_pairs():
        if not high.is_cyclic:
            continue
        chains = lat.maximal_chains(low, high)
        if len(chains) > 1:
            masks = [sum(1 << bit[(a, b)] for a, b in zip(c, c[1:])) for c in chains]
            labels = ["<".join(lat.id_of(s) for s in c) for c in chains]
            multi.append(((lat.id_of(low), lat.id_of(high)), masks, labels))
    ids = [(lat.id_of(a), lat.id_of(b)) for a, b in edges]
    choices = [KEEP] if invertible else [KEEP, KILL]
    patterns, rejected = [], []
    for combo in itertools.product(choices, repeat=len(edges)):
        keep_mask = sum(1 << i for i, s in enumerate(combo) if s == KEEP)
        pat = BetaPattern(tuple(zip(ids, combo)))
        bad = None
        for loc, masks, labels in multi:
            kept = [(keep_mask & m) == m for m in masks]
            if len(set(kept)) > 1:
                i = kept.index(not kept[0])
                bad = Rejection(pat, loc, (labels[0], labels[i]))
                break
        if bad is not None:
            rejected.append(bad)
            continue
        H = pattern_homology_diagram(lat, {e: s for e, s in zip(edges, combo)})
        rep = H.validate()
        if not rep.valid:
            raise OrbitCdgaError(f"pattern {pat.encoding()} passed the mask test but not validation: {rep.violations}")
        patterns.append(pat)
    patterns.sort(key=BetaPattern.encoding)
    rejected.sort(key=lambda r: r.pattern.encoding())
    return PatternEnumeration(G.name, ids, patterns, rejected, invertible)


def enumerate_beta_patterns_invertible(G: AbelianGroup) -> int:
    return enumerate_beta_patterns(G, invertible=True).count


# -- norm-shadow existence ---------------------------------------------------------
@dataclass
class ObstructionResult:
    verdict: str  # "exists" or "impossible"
    m: int
    route: str
    witness: dict[str, str] | None = None
    assignment: dict | None = None
    certificate: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return self.verdict == "exists"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "source": f"Q(zeta_{self.m})",
            "route": self.route,
            "witness": self.witness,
            "certificate": list(self.certificate),
            "data": self.data,
        }


def _source_n(source) -> int:
    if isinstance(source, GradedRingValue):
        if source.kind != "field":
            raise NotApplicableError(f"source {source} is not concentrated in degree 0")
        return source.n
    m = int(source)
    if m < 1:
        raise InputError("m must be >= 1")
    return m


def decide_norm_shadow(source, target: PresentedCdga) -> ObstructionResult:
    """Decide whether a CDGA map Q(zeta_m) -> target exists.

    Such a map is the choice of a degree-0 cycle f with Phi_m(f) = 0. Targets
    with relations must be recognized cyclotomic fields (roots of unity there
    are +-zeta_n^k, all tried); relation-free targets have a polynomial ring in
    degree 0, where a degree count forces f to be a rational constant.
    """
    m = _source_n(source)
    phi = cyclotomic_coeffs(m)
    z = "zeta_" + str(m)
    if target.relations:
        info = analyze(target)
        if info.value.is_zero:
            return ObstructionResult(
                "exists", m, "zero-ring", {z: "0"}, {"z": target.zero()} if m > 1 else {},
                ["the target is the zero ring, which receives a unique ring map"],
            )
        if info.h0 is None:
            raise NotApplicableError("target degree-0 ring is not an identified cyclotomic field")
        n = info.value.n
        sols = unit_root_solutions(m, n)
        data = {"target": f"Q(zeta_{n})", "solutions": [s.to_json() for s in sols]}
        if not sols:
            return ObstructionResult(
                "impossible", m, "cyclotomic", certificate=[
                    f"a map sends {z} to a root of Phi_{m} in Q(zeta_{n})",
                    f"every root of unity in Q(zeta_{n}) is +-zeta_{n}^k; none of the {2 * n} is a root of Phi_{m}",
                ], data=data,
            )
        pick = sols[0]
        if n % m == 0 and cyclo_embed(m, n).image in sols:
            pick = cyclo_embed(m, n).image
        # write the chosen root through the target's own identification
        elt = _cyclo_in_target(target, info, pick)
        assignment = {"z": elt} if m > 1 else {}
        return ObstructionResult(
            "exists", m, "cyclotomic", {z: str(pick)}, assignment,
            [f"Phi_{m}({pick}) = 0 in Q(zeta_{n})"], data,
        )

    deg0 = [g for g, d in target.generators if d == 0]
    if any(d < 0 for _, d in target.generators):
        raise NotApplicableError("relation-free target with negative-degree generators")
    if any(not target.d_gen(g).is_zero() for g in deg0):
        raise NotApplicableError("degree-0 generators with nonzero differential")
    roots_unity = rational_roots([-1] + [0] * (m - 1) + [1])
    roots_phi = rational_roots(phi)
    ring = f"Q[{', '.join(deg0)}]" if deg0 else "Q"
    data = {
        "degree0_ring": ring,
        "rational_roots_of_x^m-1": [str(r) for r in roots_unity],
        "rational_roots_of_Phi_m": [str(r) for r in roots_phi],
        "Phi_m_at_1": str(sum(phi)),
    }
    steps = [
        f"f = n({z}) satisfies f^{m} = n({z}^{m}) = n(1) = 1 in {ring}",
        f"{ring} is an integral domain: a nonconstant f has deg(f^{m}) = {m}*deg(f) > 0, so f is a rational constant",
        f"rational root test (candidates +-1): the rational solutions of f^{m} = 1 are {data['rational_roots_of_x^m-1']}",
    ]
    if roots_phi:
        r = roots_phi[0]
        steps.append(f"Phi_{m}({r}) = 0, so {z} -> {r} defines the map")
        return ObstructionResult(
            "exists", m, "polynomial", {z: str(r)}, {"z": target.const(r)} if m > 1 else {}, steps, data
        )
    forced = [r for r in roots_unity if r == 1]
    steps.append(
        f"so f = {forced[0] if forced else 'none'}; but Phi_{m}(1) = {sum(phi)} != 0, i.e. n({z} - 1) = 0 "
        f"although {z} - 1 is a unit of Q({z}): a ring map out of a field is injective, contradiction"
    )
    return ObstructionResult("impossible", m, "polynomial", certificate=steps, data=data)


def _cyclo_in_target(target: PresentedCdga, info, x: CyclotomicElt):
    """Element of ``target`` representing x in its identified degree-0 field."""
    fid = info.h0
    zeta = target.element(fid.zeta.change_ring(target.names))
    out = target.zero()
    power = target.one()
    for c in x.coeffs:
        if c:
            out = out + power * c
        power = target.normal_form(power * zeta)
    return target.normal_form(out)


# -- uniqueness report -----------------------------------------------------------
def _check(name: str, ok: bool, detail=None) -> dict:
    out = {"check": name, "pass": bool(ok)}
    if detail is not None:
        out["detail"] = detail
    return out


def uniqueness_report(G: AbelianGroup) -> dict:
    """Homology table, formality, Bott forcing for the periodic diagram and
    non-uniqueness for the connective one. Sub-failures mark the report failed."""
    if G.order > PIPELINE_MAX_ORDER:
        raise SizeLimitError(f"|{G.name}| = {G.order} exceeds the pipeline bound {PIPELINE_MAX_ORDER}")
    checks = []
    B = build_B(G)
    lat = B.lattice
    table = []
    ok = True
    for K in lat.nodes:
        row = {"subgroup": lat.id_of(K), "order": K.order, "cyclic": K.is_cyclic}
        try:
            info = analyze(B.values[K])
            row["homology"] = str(info.value)
            row["h0_dim"] = info.value.h0_dim
            row["expected"] = ("Q" if K.order == 1 else f"Q(zeta_{K.order})") if K.is_cyclic else "0"
            if K.is_cyclic:
                w = primitive_root_witness(B.values[K])
                row["witness"] = str(w.element)
                row["witness_order"] = w.order
                good = info.value.n == K.order and info.value.h0_dim == euler_phi(K.order)
            else:
                good = info.value.is_zero
        except OrbitCdgaError as exc:
            row["error"] = str(exc)
            good = False
        row["match"] = good
        ok &= good
        table.append(row)
    checks.append(_check("B homology matches prediction", ok))

    diagrams = {"B": B, "Dprime-ku": build_Dprime_ku(G), "D-KU": build_D_KU(G)}
    for name, D in diagrams.items():
        try:
            rep = validate_diagram(D)
            M = build_formality_map(D, verify=False)
            mrep = validate_diagram_map(M)
            qi = is_quasi_iso(M)
            checks.append(
                _check(f"formality {name}", rep.valid and mrep.valid and qi, rep.violations + mrep.violations or None)
            )
        except OrbitCdgaError as exc:
            checks.append(_check(f"formality {name}", False, str(exc)))

    H_ku = homology_diagram(diagrams["D-KU"])
    forced = all(
        e.beta == KEEP for (a, b), e in H_ku.edges.items() if not H_ku.values[b].is_zero
    )
    inv = enumerate_beta_patterns(G, invertible=True)
    checks.append(_check("periodic diagram keeps beta on every edge", forced))
    checks.append(_check("invertible pattern count is 1", inv.count == 1, inv.count))

    enum = enumerate_beta_patterns(G)
    H_conn = homology_diagram(diagrams["Dprime-ku"])
    H_kill = homology_diagram(build_A_kill_beta(G))
    objectwise = all(H_conn.values[K] == H_kill.values[K] for K in lat.nodes)
    iso = homology_diagram_isomorphic(H_conn, H_kill)
    nontrivial = G.order > 1
    checks.append(_check("connective pattern count > 1", enum.count > 1 if nontrivial else enum.count == 1, enum.count))
    checks.append(_check("kept and killed diagrams agree objectwise", objectwise))
    checks.append(
        _check("kept and killed diagrams are not isomorphic", (not iso) if nontrivial else iso)
    )

    return {
        "group": G.name,
        "counting_convention": "path-consistent keep/kill assignments with degree-0 shadows fixed to the standard inclusions",
        "pattern_count": enum.count,
        "invertible_count": inv.count,
        "patterns": [p.to_json() for p in enum.patterns],
        "obstructions": [r.to_json() for r in enum.rejected],
        "noniso_witness": {
            "first": "Dprime-ku",
            "second": "A-kill-beta",
            "objectwise_equal": objectwise,
            "isomorphic": iso,
            "differing_edges": beta_pattern_difference(H_conn, H_kill),
        },
        "homology_table": table,
        "checks": checks,
        "passed": all(c["pass"] for c in checks),
    }


def render_report(report: dict) -> str:
    lines = [f"group {report['group']}"]
    lines.append("subgroup   homology              expected         match")
    for row in report["homology_table"]:
        lines.append(
            f"{row['subgroup']:<10} {row.get('homology', '?'):<21} {row.get('expected', '?'):<16} {row['match']}"
        )
    lines.append(f"pattern count {report['pattern_count']}, invertible count {report['invertible_count']}")
    lines.append(f"rejected assignments {len(report['obstructions'])}")
    w = report["noniso_witness"]
    lines.append(
        f"{w['first']} vs {w['second']}: objectwise equal {w['objectwise_equal']}, isomorphic {w['isomorphic']}"
    )
    for c in report["checks"]:
        lines.append(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['check']}")
    lines.append("report " + ("passed" if report["passed"] else "FAILED"))
    return "\n".join(lines)
