import pytest

from orbitcdga.abelian import AbelianGroup
from orbitcdga.cdga import GradedRingValue, PresentedCdga, formal_cdga
from orbitcdga.errors import NotApplicableError, SizeLimitError
from orbitcdga.exact import CyclotomicElt
from orbitcdga.orbit import KEEP, KILL
from orbitcdga.structures import (
    decide_norm_shadow,
    enumerate_beta_patterns,
    enumerate_beta_patterns_invertible,
    render_report,
    uniqueness_report,
)

from oracles import count_functorial_patterns

G = AbelianGroup.parse

# frozen from count_functorial_patterns, which propagates covering-edge values
# to all comparable pairs instead of testing chain masks
FROZEN_COUNTS = {
    "C4": 4, "C6": 10, "C8": 8, "C9": 4, "C12": 52, "C15": 10,
    "C2xC2": 8, "C2xC4": 32, "C3xC3": 16,
}


@pytest.mark.parametrize("g,count", sorted(FROZEN_COUNTS.items()))
def test_counts_frozen(g, count):
    assert enumerate_beta_patterns(G(g)).count == count


@pytest.mark.parametrize("g", ["C4", "C6", "C12", "C2xC2", "C2xC4"])
def test_counts_match_oracle(g):
    grp = G(g)
    assert enumerate_beta_patterns(grp).count == count_functorial_patterns(grp.cyclic_orders)
    assert enumerate_beta_patterns_invertible(grp) == count_functorial_patterns(grp.cyclic_orders, True) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_prime_power_tower(n):
    assert enumerate_beta_patterns(G(f"C{2 ** n}")).count == 2**n


def test_trivial_group_single_pattern():
    e = enumerate_beta_patterns(G("C1"))
    assert e.count == 1 and e.edges == []


def test_c15_rejection():
    e = enumerate_beta_patterns(G("C15"))
    assert e.count == 10
    locs = {r.location for r in e.rejected}
    assert ("e", "C15") in locs
    # keep e<C3, keep C3<C15, kill e<C5, keep C5<C15 is rejected at (e, C15)
    target = {("e", "C3"): KEEP, ("C3", "C15"): KEEP, ("e", "C5"): KILL, ("C5", "C15"): KEEP}
    hits = [r for r in e.rejected if r.pattern.as_dict() == target]
    assert len(hits) == 1 and hits[0].location == ("e", "C15")


def test_edge_cap(monkeypatch):
    import orbitcdga.structures as st

    monkeypatch.setattr(st, "MAX_PATTERN_EDGES", 5)
    with pytest.raises(SizeLimitError):
        enumerate_beta_patterns(G("C12"))


class TestNormShadow:
    def test_field_route_exists(self):
        r = decide_norm_shadow(3, formal_cdga(GradedRingValue("field", 9)))
        assert r.exists and r.route == "cyclotomic"
        assert r.witness == {"zeta_3": str(CyclotomicElt.zeta(9, 3))}

    def test_field_route_impossible(self):
        r = decide_norm_shadow(4, formal_cdga(GradedRingValue("field", 6)))
        assert r.verdict == "impossible"

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_polynomial_route(self, p):
        T = PresentedCdga([("x", 0)])
        r = decide_norm_shadow(p, T)
        assert r.verdict == "impossible" and r.route == "polynomial"
        assert "rational root test" in r.certificate[2]
        assert "contradiction" in r.certificate[-1]

    def test_polynomial_route_p2(self):
        T = PresentedCdga([("x", 0)])
        r = decide_norm_shadow(2, T)
        assert r.exists and r.witness == {"zeta_2": "-1"}
        assert r.assignment == {"z": T.const(-1)}

    def test_zero_target(self):
        E = formal_cdga(GradedRingValue("zero"))
        assert decide_norm_shadow(5, E).exists

    def test_graded_source(self):
        with pytest.raises(NotApplicableError):
            decide_norm_shadow(GradedRingValue("poly", 3), formal_cdga(GradedRingValue("field", 3)))


@pytest.mark.parametrize("g", ["C1", "C4", "C2xC4"])
def test_report_passes(g):
    rep = uniqueness_report(G(g))
    assert rep["passed"], [c for c in rep["checks"] if not c["pass"]]
    assert "report passed" in render_report(rep)


def test_report_c4_content():
    rep = uniqueness_report(G("C4"))
    assert rep["pattern_count"] == 4 and rep["invertible_count"] == 1
    assert [r["expected"] for r in rep["homology_table"]] == ["Q", "Q(zeta_2)", "Q(zeta_4)"]
    w = rep["noniso_witness"]
    assert w["objectwise_equal"] and not w["isomorphic"]


def test_report_size_bound():
    with pytest.raises(SizeLimitError):
        uniqueness_report(G("C64"))
