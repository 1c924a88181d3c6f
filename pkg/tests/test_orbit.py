import json

import pytest

from orbitcdga.abelian import AbelianGroup
from orbitcdga.cdga import CdgaMap, GradedRingValue, quotient_to_h0_map
from orbitcdga.constructions import build_B, build_beta_pattern_diagram, build_D_KU, build_Dprime_ku, formal_diagram
from orbitcdga.errors import NotApplicableError
from orbitcdga.exact import CyclotomicElt, cyclo_embed
from orbitcdga.orbit import (
    KEEP,
    KILL,
    DiagramMap,
    HomologyEdge,
    OrbitDiagram,
    homology_diagram,
    homology_diagram_isomorphic,
    is_quasi_iso,
    validate_diagram,
    validate_diagram_map,
)

G = AbelianGroup.parse


def test_b_c4_valid():
    assert validate_diagram(build_B(G("C4"))).valid


def test_trivial_group_vacuous():
    D = build_B(G("C1"))
    assert validate_diagram(D).valid
    assert not D.shadows


def test_inconsistent_pq_assignment_located():
    lat = build_B(G("C15")).lattice
    C5 = lat.by_id["C5"]
    # keep beta along e < C3 < C15, kill it on e < C5
    D = build_beta_pattern_diagram(G("C15"), lambda L, K: (L, K) == (lat.bottom, C5))
    rep = validate_diagram(D)
    assert len(rep.violations) == 1
    assert rep.violations[0].startswith("path independence fails at (e, C15)")


def test_missing_and_mismatched_shadows():
    D = build_B(G("C4"))
    edges = list(D.shadows)
    broken = OrbitDiagram(D.lattice, D.values, {edges[0]: D.shadows[edges[0]]})
    rep = validate_diagram(broken)
    assert any("missing shadow" in v for v in rep.violations)
    a, b = edges[1]
    wrong = dict(D.shadows)
    wrong[edges[1]] = CdgaMap(D.values[a], D.values[a], {n: D.values[a].gen(n) for n in D.values[a].names})
    assert any("does not match" in v for v in validate_diagram(OrbitDiagram(D.lattice, D.values, wrong)).violations)


def test_json_roundtrip():
    D = build_D_KU(G("C6"))
    data = json.loads(json.dumps(D.to_json(), sort_keys=True))
    E = OrbitDiagram.from_json(data)
    assert E.to_json() == D.to_json()
    assert validate_diagram(E).valid


def test_homology_diagram_c6_standard_inclusions():
    D = build_B(G("C6"))
    H = homology_diagram(D)
    shapes = {H.id_of(s): v.shape for s, v in H.values.items()}
    assert shapes == {"e": "Q", "C2": "Q(zeta_2)", "C3": "Q(zeta_3)", "C6": "Q(zeta_6)"}
    for (a, b), e in H.edges.items():
        assert e.embedding.image == cyclo_embed(a.order, b.order).image
        assert e.injective and e.standard
    C6 = D.lattice.by_id["C6"]
    assert H.edges[(D.lattice.by_id["C2"], C6)].embedding.image == CyclotomicElt.scalar(6, -1)


def test_beta_images():
    assert set(homology_diagram(build_D_KU(G("C2"))).beta_pattern().values()) == {KEEP}
    kill = build_beta_pattern_diagram(G("C2"), lambda L, K: True)
    assert set(homology_diagram(kill).beta_pattern().values()) == {KILL}


def test_isomorphism_by_pattern():
    Hk = homology_diagram(build_Dprime_ku(G("C2")))
    Hx = homology_diagram(build_beta_pattern_diagram(G("C2"), lambda L, K: True))
    assert homology_diagram_isomorphic(Hk, Hk)
    assert not homology_diagram_isomorphic(Hk, Hx)


def test_isomorphism_shape_mismatch_and_nonstandard():
    H1 = homology_diagram(build_B(G("C4")))
    H2 = homology_diagram(build_B(G("C4")))
    top = H2.lattice.top
    H2.values[top] = GradedRingValue("field", 2)
    assert not homology_diagram_isomorphic(H1, H2)
    H3 = homology_diagram(build_B(G("C4")))
    (a, b), e = next(iter(H3.edges.items()))
    H3.edges[(a, b)] = HomologyEdge(type(e.embedding)(e.embedding.m, e.embedding.n, -e.embedding.image), e.beta)
    with pytest.raises(NotApplicableError):
        homology_diagram_isomorphic(H1, H3)


def _quotient_map(D):
    F, _ = formal_diagram(D)
    return DiagramMap(D, F, {K: quotient_to_h0_map(D.values[K]) for K in D.lattice.nodes})


def test_quotient_maps_assembled_c2xc2():
    M = _quotient_map(build_B(G("C2xC2")))
    assert validate_diagram_map(M).valid
    assert is_quasi_iso(M)


def test_zero_map_is_not_quasi_iso():
    D = build_B(G("C2"))
    F, _ = formal_diagram(D)
    comps = {K: CdgaMap(D.values[K], F.values[K], {n: F.values[K].zero() for n in D.values[K].names}) for K in D.lattice.nodes}
    assert not is_quasi_iso(DiagramMap(D, F, comps))


def test_identity_diagram_map():
    D = build_B(G("C4"))
    comps = {K: CdgaMap(D.values[K], D.values[K], {n: D.values[K].gen(n) for n in D.values[K].names}) for K in D.lattice.nodes}
    assert validate_diagram_map(DiagramMap(D, D, comps)).valid
