"""Deterministic constructions: curves, ovoids, graphs, and products."""

import itertools
from fractions import Fraction

import pytest

from evasive.constructions import (
    BipartiteGraph,
    elliptic_ovoid,
    factor_prime_power,
    field_of_order,
    graph_curve_32,
    graph_curve_for_prime_power,
    monomial_curve,
    monomial_curve_affine_variant,
    product_construction,
    product_recipe,
    rational_normal_curve,
    trimmed_incidence_graph,
)
from evasive.errors import ParameterError
from evasive.gf import make_extension, make_field
from evasive.projgeom import PointSet, rank
from evasive.verifier import is_proper, is_rs_set, max_in_s_space


def test_factor_prime_power():
    assert factor_prime_power(2) == (2, 1)
    assert factor_prime_power(27) == (3, 3)
    assert factor_prime_power(49) == (7, 2)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(ParameterError):
            factor_prime_power(bad)
    assert field_of_order(9).order == 9


def test_monomial_curve_frozen_points():
    X = monomial_curve(3, make_field(3, 1))
    assert X.points == ((1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 1, 2), (1, 2, 2, 1))


MONOMIAL_CASES = [(2, q) for q in (2, 3, 4, 5, 7, 8, 9)] + \
                 [(3, q) for q in (2, 3, 4, 5)] + [(4, 3)]


@pytest.mark.parametrize("n,q", MONOMIAL_CASES)
def test_monomial_curve_size_and_validity(n, q):
    field = field_of_order(q)
    X = monomial_curve(n, field)
    assert len(X) == (q - 1) ** (n - 1)
    assert all(pt[0] == 1 for pt in X.points)
    if len(X) > n:
        assert is_rs_set(X, n, 1)[0]
        assert is_proper(X, n, 1)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (3, 4), (3, 5), (4, 3)])
def test_monomial_affine_variant_matches(n, q):
    field = field_of_order(q)
    X = monomial_curve(n, field)
    Y = monomial_curve_affine_variant(n, field)
    assert len(Y) == len(X)
    if len(Y) > n:
        assert is_rs_set(Y, n, 1)[0]


@pytest.mark.parametrize("c,q", [(2, 2), (2, 3), (2, 5), (3, 3), (3, 4),
                                 (3, 7), (4, 4), (4, 5), (4, 7)])
def test_rnc_is_an_arc(c, q):
    # with q >= c, every c+1 points of the curve are in general position
    field = field_of_order(q)
    X = rational_normal_curve(c, field)
    assert len(X) == q + 1
    assert (0,) * c + (1,) in X
    for subset in itertools.combinations(X.points, c + 1):
        assert rank(field, subset) == c + 1


def test_rnc_conic_and_twisted_quartic():
    conic = rational_normal_curve(2, make_field(3, 1))
    assert is_rs_set(conic, 2, 1)[0]
    quartic = rational_normal_curve(4, make_field(5, 1))
    assert max_in_s_space(quartic, 2)[0] == 3
    assert is_rs_set(quartic, 3, 2)[0]


def test_rnc_validation():
    with pytest.raises(ParameterError):
        rational_normal_curve(1, make_field(3, 1))


@pytest.mark.parametrize("q,p,k", [(2, 2, 1), (3, 3, 1), (4, 2, 2),
                                   (5, 5, 1), (7, 7, 1)])
def test_elliptic_ovoid(q, p, k):
    field = make_field(p, k)
    X = elliptic_ovoid(field)
    assert len(X) == q * q + 1
    assert (0, 1, 0, 0) in X
    assert is_rs_set(X, 2, 1)[0]  # a cap: no three collinear
    assert is_proper(X, 2, 1)


@pytest.mark.parametrize("q0", [2, 3, 4])
def test_trimmed_incidence_graph(q0):
    g = trimmed_incidence_graph(q0)
    assert g.order == q0 * q0
    assert len(g.edges) == q0**3
    assert g.is_c4_free()
    degrees = [0] * g.order
    for x, _ in g.edges:
        degrees[x] += 1
    assert all(d == q0 for d in degrees)


def test_complete_bipartite_has_c4():
    assert not BipartiteGraph.complete(2).is_c4_free()
    assert BipartiteGraph.complete(1).is_c4_free()


def test_bipartite_graph_validation():
    g = BipartiteGraph.from_edges(2, [(1, 0), (0, 1), (0, 0)])
    assert g.edges == ((0, 0), (0, 1), (1, 0))  # sorted, deduped
    with pytest.raises(ParameterError):
        BipartiteGraph.from_edges(2, [(0, 2)])
    with pytest.raises(ParameterError):
        BipartiteGraph.from_edges(3, [(-1, 0)])


@pytest.mark.parametrize("q0", [2, 3, 4])
def test_graph_curve_sizes_and_validity(q0):
    X = graph_curve_for_prime_power(q0)
    assert len(X) == q0**3
    assert X.n == 6
    assert X.field.order == q0 * q0
    assert is_rs_set(X, 3, 2)[0]


def test_graph_curve_planted_quadrangle_fails():
    # a C4 in the graph forces four curve points into a plane
    field = make_field(3, 1)
    quad = BipartiteGraph.from_edges(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    X = graph_curve_32(quad, field)
    assert len(X) == 4
    assert rank(field, X.points) <= 3
    ok, witness = is_rs_set(X, 3, 2)
    assert not ok
    assert witness.count == 4
    witness.recheck(X)


def test_graph_curve_guards():
    field = make_field(3, 1)
    empty = BipartiteGraph.from_edges(1, [])
    assert len(graph_curve_32(empty, field)) == 0
    big = BipartiteGraph.from_edges(5, [(4, 4)])
    with pytest.raises(ParameterError):
        graph_curve_32(big, field)  # labels exceed the field
    quad = BipartiteGraph.from_edges(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    with pytest.raises(ParameterError):
        graph_curve_32(quad, field, require_c4_free=True)


def build_85_point_product():
    base = make_field(2, 1)
    X = elliptic_ovoid(base)
    ext = make_extension(base, 4)
    Y = rational_normal_curve(2, ext)
    return X, Y, product_construction(X, 2, Y, 1)


def test_product_multiplicative_sizes():
    X, Y, Z = build_85_point_product()
    assert len(Z) == len(X) * len(Y) == 85
    assert Z.n == 11
    assert Z.field == X.field

    F3 = make_field(3, 1)
    A = rational_normal_curve(4, F3)            # 4 points in PG(4,3)
    ext = make_extension(F3, 5)
    B = rational_normal_curve(4, ext).truncated(10)
    Z2 = product_construction(A, 3, B, 2)
    assert len(Z2) == len(A) * len(B) == 40
    assert Z2.n == 24


def test_product_validates_left_factor():
    base = make_field(2, 1)
    # a full line inside the plane: fails the line ceiling 1 + 2 - 1 = 2
    bad = PointSet.from_vectors(base, 2, [(0, 0, 1), (0, 1, 0), (0, 1, 1)])
    ext = make_extension(base, 3)
    Y = rational_normal_curve(2, ext)
    with pytest.raises(ParameterError, match="not a proper"):
        product_construction(bad, 2, Y, 1)


def test_product_validates_right_factor():
    base = make_field(2, 1)
    X = elliptic_ovoid(base)
    ext = make_extension(base, 4)
    line = [(1, t) for t in range(4)]
    bad = PointSet.from_vectors(ext, 2, [(1, t, 0) for t in range(4)])
    with pytest.raises(ParameterError):
        product_construction(X, 2, bad, 1)


def test_product_validates_fields():
    base = make_field(2, 1)
    X = elliptic_ovoid(base)
    wrong = make_extension(make_field(3, 1), 4)
    Y = rational_normal_curve(2, wrong)
    with pytest.raises(ParameterError, match="extension"):
        product_construction(X, 2, Y, 1)
    # degree must equal X.n + 1
    ext3 = make_extension(base, 3)
    Y3 = rational_normal_curve(2, ext3)
    with pytest.raises(ParameterError):
        product_construction(X, 2, Y3, 1)


def test_product_validate_false_skips_checks():
    base = make_field(2, 1)
    bad = PointSet.from_vectors(base, 2, [(0, 0, 1), (0, 1, 0), (0, 1, 1)])
    ext = make_extension(base, 3)
    Y = rational_normal_curve(2, ext)
    Z = product_construction(bad, 2, Y, 1, validate=False)
    assert len(Z) == len(bad) * len(Y)


def test_product_recipes_frozen():
    caps = product_recipe("caps", 2)
    assert (caps.n, caps.r, caps.s) == (15, 2, 1)
    assert caps.size_exponent == Fraction(10)

    rnc = product_recipe("rnc", 2, c=4)
    assert (rnc.n, rnc.r, rnc.s) == (24, 3, 2)
    assert rnc.size_exponent == Fraction(6)

    graph = product_recipe("graph-rnc", 2, c=4)
    assert (graph.n, graph.r, graph.s) == (34, 3, 2)
    assert graph.size_exponent == Fraction(17, 2)

    with pytest.raises(ParameterError):
        product_recipe("caps", 0)
    with pytest.raises(ParameterError):
        product_recipe("rnc", 2, c=2)
    with pytest.raises(ParameterError):
        product_recipe("nope", 2)
