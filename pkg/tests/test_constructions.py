import pytest

from orbitcdga.abelian import AbelianGroup
from orbitcdga.cdga import CdgaMap, GradedRingValue, analyze, cyclo_to_element, homology_of
from orbitcdga.cdga import truncated_homology_oracle
from orbitcdga.constructions import (
    build_A_kill_beta,
    build_B,
    build_counterexample,
    build_D_KU,
    build_Dprime_ku,
    build_example_C2_pair,
    build_formality_map,
    counterexample_prime,
)
from orbitcdga.errors import InputError, SizeLimitError
from orbitcdga.exact import CyclotomicElt, MultiPoly, euler_phi
from orbitcdga.orbit import DiagramMap, homology_diagram, is_quasi_iso, shadow_constancy_pattern, validate_diagram, validate_diagram_map

G = AbelianGroup.parse


def top(D):
    return D.values[D.lattice.top]


def test_b_trivial_is_q():
    A = top(build_B(G("C1")))
    assert A.names == () and homology_of(A) == GradedRingValue("field", 1)


def test_b_c4_top_generators():
    A = top(build_B(G("C4")))
    assert A.names == ("x_C2", "t_C2", "x_C4", "t_C4")
    ring = A.names
    assert A.d_gen("t_C4").to_poly() == MultiPoly.variable(ring, "x_C2") - MultiPoly.variable(ring, "x_C4") ** 2


def test_b_klein_top():
    A = top(build_B(G("C2xC2")))
    assert A.names == ("x_C2_1", "t_C2_1", "x_C2_2", "t_C2_2", "x_C2_3", "t_C2_3", "a")
    assert A.d_gen("a") == A.one()


def test_size_bound():
    with pytest.raises(SizeLimitError):
        build_B(G("C37"))


def test_d_ku_values():
    assert homology_of(top(build_D_KU(G("C1")))) == GradedRingValue("laurent", 1)
    assert homology_of(top(build_D_KU(G("C3")))) == GradedRingValue("laurent", 3)
    assert homology_of(top(build_D_KU(G("C2xC2")))).is_zero


def test_dprime_values():
    A = top(build_Dprime_ku(G("C1")))
    assert A.generators == (("gamma", 2),)
    H = homology_diagram(build_Dprime_ku(G("C9")))
    assert sorted(v.h0_dim for v in H.values.values()) == [1, 2, 6]
    assert all(v.kind == "poly" for v in H.values.values())


def test_dprime_c9_dims_by_oracle():
    # independent check of the degree-0 dimensions 1, 2, 6 on the underlying towers
    D = build_B(G("C9"))
    dims = sorted(truncated_homology_oracle(D.values[K], (0, 1), 10, 4).dims[0] for K in D.lattice.nodes)
    assert dims == [1, 2, 6]


@pytest.mark.parametrize("g", ["C2", "C4", "C6"])
def test_kill_beta_objectwise_equal(g):
    Hk = homology_diagram(build_Dprime_ku(G(g)))
    Hx = homology_diagram(build_A_kill_beta(G(g)))
    assert Hk.values == Hx.values
    assert validate_diagram(build_A_kill_beta(G(g))).valid


def test_d_klein_top_zero_by_oracle():
    A = top(build_D_KU(G("C2xC2")))
    r = truncated_homology_oracle(A, (-1, 1), 3, 1)
    assert r.dims == {-1: 0, 0: 0, 1: 0}


class TestCounterexample:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_odd(self, p):
        q = build_counterexample(p)
        assert q.top_dimension == euler_phi(p * p)
        assert not q.flagged
        assert q.query().verdict == "impossible"
        assert q.complete() is None

    def test_p3_dimension(self):
        assert build_counterexample(3).top_dimension == 6

    def test_two(self):
        q = build_counterexample(2)
        assert q.flagged
        res = q.query()
        assert res.verdict == "exists" and res.witness == {"zeta_2": "-1"}
        D = q.complete()
        assert validate_diagram(D).valid

    def test_bad_input(self):
        with pytest.raises(InputError):
            build_counterexample(9)
        with pytest.raises(InputError):
            counterexample_prime(G("C12"))
        assert counterexample_prime(G("C25")) == 5


def test_example_pair():
    ident, zero = build_example_C2_pair()
    assert validate_diagram(ident).valid and validate_diagram(zero).valid
    assert shadow_constancy_pattern(ident, "x") != shadow_constancy_pattern(zero, "x")


class TestFormality:
    def test_b_c6_root_images(self):
        D = build_B(G("C6"))
        M = build_formality_map(D)
        C6 = D.lattice.by_id["C6"]
        f = M.components[C6]
        T = f.target
        assert f.assignment["x_C2"] == T.const(-1)
        assert f.assignment["x_C3"] == cyclo_to_element(T, CyclotomicElt.zeta(6, 2))
        assert is_quasi_iso(M)

    def test_d_c2(self):
        M = build_formality_map(build_D_KU(G("C2")))
        assert validate_diagram_map(M).valid and is_quasi_iso(M)

    def test_b_trivial_unit_map(self):
        D = build_B(G("C1"))
        M = build_formality_map(D)
        assert M.components[D.lattice.top].assignment == {}

    def test_incompatible_root_choice_fails(self):
        D = build_B(G("C4"))
        M = build_formality_map(D)
        C4 = D.lattice.top
        f = M.components[C4]
        T = f.target
        bad = dict(f.assignment)
        bad["x_C2"] = T.gen("z")
        comps = dict(M.components)
        comps[C4] = CdgaMap(f.source, T, bad)
        rep = validate_diagram_map(DiagramMap(M.source, M.target, comps))
        assert not rep.valid
        assert any(v.startswith("[C4]") for v in rep.violations)
