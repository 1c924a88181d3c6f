import pytest

from orbitcdga.cdga import (
    CdgaMap,
    GradedRingValue,
    PresentedCdga,
    acyclic_by_unit_boundary,
    analyze,
    complete_intersection_certificate,
    formal_cdga,
    homology_of,
    identity_map,
    is_cdga_map,
    primitive_root_witness,
    quotient_to_h0_map,
    tensor,
    truncated_homology_oracle,
    weight_function,
)
from orbitcdga.errors import InputError, OracleUnavailableError, UndeterminedHomologyError
from orbitcdga.exact import MultiPoly, cyclotomic


def tower_c4():
    A = PresentedCdga([("x2", 0), ("t2", 1), ("x4", 0), ("t4", 1)])
    return PresentedCdga(A.generators, {"t2": A.gen("x2") + 1, "t4": A.gen("x2") - A.gen("x4") ** 2})


def laurent_block():
    L = PresentedCdga([("g", 2), ("gb", -2), ("y", 1)])
    return PresentedCdga(L.generators, {"y": L.gen("g") * L.gen("gb") - 1})


class TestAlgebra:
    def test_odd_square_and_sign(self):
        A = PresentedCdga([("a", 1), ("b", 1), ("x", 0)])
        a, b = A.gen("a"), A.gen("b")
        assert (a * a).is_zero()
        assert a * b == -(b * a)
        assert A.gen("x") * a == a * A.gen("x")

    def test_leibniz_sign(self):
        A = PresentedCdga([("a", 1), ("b", 1)])
        A = PresentedCdga(A.generators, {"a": MultiPoly.constant(A.names, 1)})
        # d(ab) = d(a) b - a d(b) = b
        assert A.d(A.gen("a") * A.gen("b")) == A.gen("b")

    def test_d_squared_zero_and_validate(self):
        A = tower_c4()
        assert A.validate().valid
        for g in A.names:
            assert A.d(A.d(A.gen(g))).is_zero()

    def test_validate_reports_bad_degree(self):
        A = PresentedCdga([("x", 0), ("t", 1)], {"t": MultiPoly.variable(("x", "t"), "t")})
        assert not A.validate().valid

    def test_nontrivial_action_rejected(self):
        with pytest.raises(InputError):
            PresentedCdga([("x", 0)], action="swap")

    def test_tensor_renames_deterministically(self):
        A = PresentedCdga([("x", 0)])
        T = tensor(tensor(A, A), A)
        assert T.names == ("x", "x_2", "x_3")

    def test_json_roundtrip(self):
        A = tower_c4()
        assert PresentedCdga.from_json(A.to_json()) == A

    def test_map_checks(self):
        A = tower_c4()
        assert is_cdga_map(identity_map(A))[0]
        # x4 -> -x4 still squares to x2: a valid automorphism
        auto = CdgaMap(A, A, {"x2": A.gen("x2"), "t2": A.gen("t2"), "x4": -A.gen("x4"), "t4": A.gen("t4")})
        assert is_cdga_map(auto)[0]
        bad = CdgaMap(A, A, {"x2": A.gen("x4"), "t2": A.gen("t2"), "x4": A.gen("x4"), "t4": A.gen("t4")})
        ok, problems = is_cdga_map(bad)
        assert not ok and problems
        with pytest.raises(InputError):
            CdgaMap(A, A, {"x2": A.gen("x2")})

    def test_relations_normal_form(self):
        F = formal_cdga(GradedRingValue("field", 4))
        z = F.gen("z")
        assert F.normal_form(z * z) == F.const(-1)


class TestHomology:
    def test_b_c2(self):
        A = PresentedCdga([("x", 0), ("t", 1)], {"t": cyclotomic(2)})
        cert = complete_intersection_certificate(A)
        assert cert.dimension == 1
        assert homology_of(A) == GradedRingValue("field", 2)

    def test_tower_c4(self):
        A = tower_c4()
        info = analyze(A)
        assert info.value == GradedRingValue("field", 4)
        assert info.certificate.dimension == 2
        w = primitive_root_witness(A)
        assert w.order == 4 and w.minimal_polynomial == (1, 0, 1)

    def test_unit_boundary(self):
        E = PresentedCdga([("a", 1)], {"a": MultiPoly.constant((), 1)})
        assert acyclic_by_unit_boundary(E)
        assert homology_of(E).is_zero

    def test_laurent(self):
        v = homology_of(laurent_block())
        assert v == GradedRingValue("laurent", 1)
        assert v.dims(-2, 2) == {-2: 1, -1: 0, 0: 1, 1: 0, 2: 1}

    def test_polynomial_bott(self):
        A = tensor(tower_c4(), PresentedCdga([("g", 2)]))
        v = homology_of(A)
        assert v == GradedRingValue("poly", 4) and v.dims(-2, 4) == {-2: 0, -1: 0, 0: 2, 1: 0, 2: 2, 3: 0, 4: 2}

    def test_undetermined(self):
        A = PresentedCdga([("x", 0), ("y", 0), ("t", 1)], {"t": MultiPoly.variable(("x", "y", "t"), "x")})
        assert homology_of(A) is None
        with pytest.raises(UndeterminedHomologyError):
            analyze(A)

    def test_not_a_field(self):
        # Q[x]/(x^2 - 1) is Q x Q, not a field
        A = PresentedCdga([("x", 0), ("t", 1)], {"t": MultiPoly.univariate([-1, 0, 1], "x")})
        assert homology_of(A) is None

    def test_shapes(self):
        assert GradedRingValue("laurent", 6).shape == "Q(zeta_6)[beta,beta^-1]"
        assert GradedRingValue("zero").shape == "0"
        assert GradedRingValue("poly", 1).shape == "Q[beta]"
        assert GradedRingValue.from_json(GradedRingValue("field", 9).to_json()) == GradedRingValue("field", 9)

    def test_quotient_to_h0(self):
        f = quotient_to_h0_map(tower_c4())
        assert is_cdga_map(f)[0]
        assert f.assignment["x2"] == f.target.const(-1)


class TestOracle:
    def test_weights(self):
        assert weight_function(tower_c4()) == {"x2": 1, "x4": 1, "t2": 1, "t4": 2}

    def test_relations_unavailable(self):
        with pytest.raises(OracleUnavailableError):
            truncated_homology_oracle(formal_cdga(GradedRingValue("field", 3)))

    def test_c4_tower(self):
        r = truncated_homology_oracle(tower_c4(), (-2, 2), 10, 4)
        assert r.stabilized and r.dims == {-2: 0, -1: 0, 0: 2, 1: 0, 2: 0}

    def test_laurent(self):
        r = truncated_homology_oracle(laurent_block(), (-2, 2), 10, 4)
        assert r.stabilized and r.dims == {-2: 1, -1: 0, 0: 1, 1: 0, 2: 1}

    def test_exterior_unit(self):
        E = PresentedCdga([("a", 1)], {"a": MultiPoly.constant((), 1)})
        assert truncated_homology_oracle(E, (0, 1), 3).dims == {0: 0, 1: 0}

    def test_json(self):
        data = truncated_homology_oracle(tower_c4(), (0, 1), 4, 2).to_json()
        assert data["stabilized"] and data["dims"] == {"0": 2, "1": 0}
