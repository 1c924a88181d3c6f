"""Property tests for the structural invariants."""

from fractions import Fraction
from functools import lru_cache

from hypothesis import given, settings
from hypothesis import strategies as st

from orbitcdga.abelian import AbelianGroup, SubgroupLattice
from orbitcdga.constructions import CONSTRUCTIONS, build_named
from orbitcdga.exact import CyclotomicElt, IdealNF, MultiPoly, cyclo_embed, cyclotomic
from orbitcdga.exact.cyclotomic import divisors
from orbitcdga.orbit import homology_diagram, validate_diagram
from orbitcdga.structures import enumerate_beta_patterns, pattern_homology_diagram

GROUPS = ["C1", "C2", "C4", "C6", "C8", "C9", "C12", "C2xC2", "C2xC4", "C3xC3"]


@lru_cache(maxsize=None)
def diagram(name, g):
    return build_named(name, AbelianGroup.parse(g))


@lru_cache(maxsize=None)
def patterns(g):
    return enumerate_beta_patterns(AbelianGroup.parse(g))


def random_element(A, data):
    """Sum of a few monomials in the generators with small integer coefficients."""
    out = A.zero()
    for _ in range(data.draw(st.integers(1, 3))):
        term = A.const(data.draw(st.integers(-3, 3)))
        for g in data.draw(st.lists(st.sampled_from(A.names), max_size=3)) if A.names else []:
            term = term * A.gen(g)
        out = out + term
    return out


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(CONSTRUCTIONS)), st.sampled_from(GROUPS), st.data())
def test_d_squared_zero(name, g, data):
    D = diagram(name, g)
    K = data.draw(st.sampled_from(D.lattice.nodes))
    A = D.values[K]
    x = random_element(A, data)
    assert A.d(A.d(x)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CONSTRUCTIONS)), st.sampled_from(["C12", "C2xC2", "C2xC4"]), st.data())
def test_path_independence(name, g, data):
    D = diagram(name, g)
    assert validate_diagram(D).valid
    lat = D.lattice
    low, high = data.draw(st.sampled_from(lat.comparable_pairs()))
    chains = lat.maximal_chains(low, high)
    x = random_element(D.values[low], data)
    images = {D.values[high].normal_form(D.composite(c)(x).to_poly()) for c in chains}
    assert len(images) == 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_cyclo_embed_composes(data):
    c = data.draw(st.sampled_from(divisors(60)))
    b = data.draw(st.sampled_from(divisors(c)))
    a = data.draw(st.sampled_from(divisors(b)))
    e1, e2 = cyclo_embed(a, b), cyclo_embed(b, c)
    assert e1.compose(e2) == cyclo_embed(a, c)
    coeffs = data.draw(st.lists(st.integers(-5, 5), min_size=1, max_size=8))
    x = CyclotomicElt.from_poly_coeffs(a, coeffs)
    assert e2(e1(x)) == cyclo_embed(a, c)(x)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60))
def test_cyclotomic_product(n):
    prod = MultiPoly.constant(("x",), 1)
    for d in divisors(n):
        prod = prod * cyclotomic(d)
    assert prod == MultiPoly.variable(("x",), "x") ** n - 1


VS = ("x", "y", "z")
_x, _y, _z = (MultiPoly.variable(VS, v) for v in VS)
IDEALS = [
    IdealNF([_x + 1, _x - _y**2, _z**2 + _z + 1], VS),
    IdealNF([_x * _x - _y, _x * _y - 1], VS, method="buchberger"),
    IdealNF([_x**3 - _z, _y**2 - _x * _z], VS, method="buchberger"),
]


@st.composite
def polys(draw):
    terms = draw(
        st.dictionaries(
            st.tuples(*(st.integers(0, 4) for _ in VS)),
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
            max_size=6,
        )
    )
    out = MultiPoly.constant(VS, 0)
    for e, c in terms.items():
        m = MultiPoly.constant(VS, Fraction(c))
        for v, k in zip((_x, _y, _z), e):
            m = m * v**k
        out = out + m
    return out


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(range(len(IDEALS))), polys())
def test_normal_form_idempotent(i, f):
    I = IDEALS[i]
    r = I.normal_form(f)
    assert I.normal_form(r) == r
    assert I.contains(f - r)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["C4", "C6", "C12", "C15", "C2xC2", "C2xC4", "C3xC3"]), st.data())
def test_pattern_roundtrip(g, data):
    e = patterns(g)
    lat = SubgroupLattice(AbelianGroup.parse(g))
    edges = [(a, b) for a, b in lat.cover_edges() if a.is_cyclic and b.is_cyclic]
    if e.patterns:
        p = data.draw(st.sampled_from(e.patterns)).as_dict()
        H = pattern_homology_diagram(lat, {(a, b): p[(lat.id_of(a), lat.id_of(b))] for a, b in edges})
        assert H.validate().valid
        assert {k: v for k, v in H.beta_pattern().items() if k in p} == p
    if e.rejected:
        r = data.draw(st.sampled_from(e.rejected)).pattern.as_dict()
        H = pattern_homology_diagram(lat, {(a, b): r[(lat.id_of(a), lat.id_of(b))] for a, b in edges})
        assert not H.validate().valid


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(CONSTRUCTIONS)), st.sampled_from(GROUPS))
def test_homology_edges_injective(name, g):
    H = homology_diagram(diagram(name, g))
    for (a, b), edge in H.edges.items():
        if not H.values[b].is_zero:
            assert edge.injective and edge.standard
