"""Explicit point-set constructions with bounded subspace intersections.

Everything here is deterministic: point sets come out normalized, deduped,
and sorted, so repeated runs produce identical objects and files.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, ParameterError
from .gf import ExtensionSpec, make_field, _is_prime
from .projgeom import (
    DEFAULT_BUDGET,
    PointSet,
    all_points,
    field_reduction_spread,
    embed_copy,
)
from .verifier import is_proper, is_rs_set


def factor_prime_power(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k, or ParameterError when q is not a prime power."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1 or not _is_prime(p):
        raise ParameterError(f"{q} is not a prime power")
    return p, k


def field_of_order(q: int):
    p, k = factor_prime_power(q)
    return make_field(p, k)


def monomial_curve(n: int, field, budget: int = DEFAULT_BUDGET) -> PointSet:
    """The (n, 1)-set {(1, F_0(x), x_1 F_0(x), ..., x_{n-1} F_0(x))} in PG(n, q).

    F_0(x) is the product of the affine coordinates x_1 .. x_{n-1}, which
    range over the nonzero field elements, so the set has (q-1)^(n-1) points
    and no line meets it in more than n points.
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got n={n}")
    q = field.order
    if (q - 1) ** (n - 1) > budget:
        raise BudgetExceeded(f"(q-1)^(n-1) = {(q - 1) ** (n - 1)} exceeds budget {budget}")
    pts = []
    for x in itertools.product(range(1, q), repeat=n - 1):
        f0 = 1
        for xi in x:
            f0 = field.mul(f0, xi)
        pts.append((1, f0) + tuple(field.mul(xi, f0) for xi in x))
    return PointSet.from_vectors(field, n, pts)


def monomial_curve_affine_variant(n: int, field, budget: int = DEFAULT_BUDGET) -> PointSet:
    """The variant {(1, 1/(x_1 ... x_{n-1}), x_1, ..., x_{n-1})}, same size."""
    if n < 2:
        raise ParameterError(f"need n >= 2, got n={n}")
    q = field.order
    if (q - 1) ** (n - 1) > budget:
        raise BudgetExceeded(f"(q-1)^(n-1) = {(q - 1) ** (n - 1)} exceeds budget {budget}")
    pts = []
    for x in itertools.product(range(1, q), repeat=n - 1):
        f0 = 1
        for xi in x:
            f0 = field.mul(f0, xi)
        pts.append((1, field.inv(f0)) + x)
    return PointSet.from_vectors(field, n, pts)


def rational_normal_curve(c: int, field) -> PointSet:
    """{(1, t, t^2, ..., t^c) : t in F_q} plus (0, ..., 0, 1), in PG(c, q).

    For q >= c this is the classical arc: any c+1 of its q+1 points have
    full rank.  The set is still well defined for smaller q (powers of t
    then repeat by Frobenius), just without the arc guarantee.
    """
    if c < 2:
        raise ParameterError(f"need c >= 2, got c={c}")
    pts = [tuple(field.pow(t, e) for e in range(c + 1)) for t in range(field.order)]
    pts.append((0,) * c + (1,))
    return PointSet.from_vectors(field, c, pts)


def _smallest_irreducible_binary_quadratic(field) -> tuple[int, int]:
    # lexicographically smallest (b, c) with X^2 + bX + c having no root
    q = field.order
    for b in range(q):
        for c in range(q):
            if all(field.add(field.add(field.mul(x, x), field.mul(b, x)), c) != 0
                   for x in range(q)):
                return b, c
    raise RuntimeError("no irreducible quadratic found")  # unreachable for q >= 2


def elliptic_ovoid(field) -> PointSet:
    """The q^2 + 1 points of the elliptic quadric x0 x1 = f(x2, x3) in PG(3, q).

    f(u, v) = u^2 + b u v + c v^2 with (b, c) the lexicographically smallest
    pair making f irreducible.  No three of the points are collinear.
    """
    q = field.order
    b, c = _smallest_irreducible_binary_quadratic(field)
    pts = [(0, 1, 0, 0)]
    for s in range(q):
        for t in range(q):
            f = field.add(
                field.add(field.mul(s, s), field.mul(field.mul(b, s), t)),
                field.mul(c, field.mul(t, t)),
            )
            pts.append((1, f, s, t))
    out = PointSet.from_vectors(field, 3, pts)
    assert len(out) == q * q + 1
    return out


# ---------------------------------------------------------------------------
# C4-free graphs and the curve construction over them.

@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph on two label sets {0..order-1}; edges are (x, y) pairs."""

    order: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, order: int, edges) -> "BipartiteGraph":
        es = sorted(set(map(tuple, edges)))
        for x, y in es:
            if not (0 <= x < order and 0 <= y < order):
                raise ParameterError(f"edge label out of range: {(x, y)}")
        return cls(order=order, edges=tuple(es))

    @classmethod
    def complete(cls, order: int) -> "BipartiteGraph":
        return cls.from_edges(order, itertools.product(range(order), range(order)))

    def is_c4_free(self) -> bool:
        """No two left vertices share two common neighbours."""
        nbrs: dict[int, set[int]] = {}
        for x, y in self.edges:
            nbrs.setdefault(x, set()).add(y)
        for a, b in itertools.combinations(nbrs.values(), 2):
            if len(a & b) >= 2:
                return False
        return True


def trimmed_incidence_graph(q0: int) -> BipartiteGraph:
    """The point-line incidence graph of PG(2, q0), trimmed to q0^2 + q0^2 vertices.

    Removes the q0+1 points of the lexicographically smallest line L and the
    q0+1 lines through the lexicographically smallest point of L.  What
    remains has q0^2 points, q0^2 lines, and q0^3 incidences, and it stays
    C4-free because two points still lie on at most one line.  Surviving
    points and lines are labeled 0..q0^2-1 in sorted coordinate order.
    """
    field = field_of_order(q0)
    pts = list(all_points(2, field))
    lines = pts  # a line is the coefficient triple of a*x + b*y + c*z = 0

    def incident(point, line):
        acc = 0
        for u, v in zip(point, line):
            acc = field.add(acc, field.mul(u, v))
        return acc == 0

    line0 = lines[0]
    on_line0 = [p for p in pts if incident(p, line0)]
    p0 = on_line0[0]
    keep_pts = [p for p in pts if not incident(p, line0)]
    keep_lines = [l for l in lines if not incident(p0, l)]
    assert len(keep_pts) == q0 * q0 and len(keep_lines) == q0 * q0
    edges = [
        (i, j)
        for i, p in enumerate(keep_pts)
        for j, l in enumerate(keep_lines)
        if incident(p, l)
    ]
    assert len(edges) == q0**3
    return BipartiteGraph.from_edges(q0 * q0, edges)


def graph_curve_32(graph: BipartiteGraph, field, require_c4_free: bool = False,
                   budget: int = DEFAULT_BUDGET) -> PointSet:
    """{(1, x, x^2, x^3, y, y^2, y^3) : xy an edge} in PG(6, q).

    Edge labels are read as field elements, so graph.order must not exceed
    the field order.  When the graph is C4-free the result is a (3, 2)-set:
    four of these points are coplanar only when the x's and y's each take
    exactly two values, which would be a C4.
    """
    if graph.order > field.order:
        raise ParameterError(
            f"graph labels run to {graph.order - 1} but the field has order {field.order}"
        )
    if require_c4_free and not graph.is_c4_free():
        raise ParameterError("graph contains a C4")
    if len(graph.edges) > budget:
        raise BudgetExceeded(f"{len(graph.edges)} edges exceed budget {budget}")
    pts = []
    for x, y in graph.edges:
        x2 = field.mul(x, x)
        y2 = field.mul(y, y)
        pts.append((1, x, x2, field.mul(x2, x), y, y2, field.mul(y2, y)))
    return PointSet.from_vectors(field, 6, pts)


def graph_curve_for_prime_power(q0: int, budget: int = DEFAULT_BUDGET) -> PointSet:
    """The q0^3-point (3, 2)-set in PG(6, q0^2) built on the trimmed graph."""
    p, k = factor_prime_power(q0)
    field = make_field(p, 2 * k)
    return graph_curve_32(trimmed_incidence_graph(q0), field, budget=budget)


# ---------------------------------------------------------------------------
# Product construction via field reduction.

def product_construction(X: PointSet, r: int, Y: PointSet, s: int, *,
                         validate: bool = True,
                         budget: int = DEFAULT_BUDGET) -> PointSet:
    """Spread-product of a proper (r, r-1)-set X with an (r, s)-set Y.

    X lives in PG(N-1, q), Y in PG(M-1, q^N) over the canonical degree-N
    extension of X's field.  Every point of Y becomes a spread element of
    PG(NM-1, q) via field reduction and receives a copy of X; the union is
    an (r, s)-set of size |X| * |Y|.

    With validate=True (the default) both preconditions are checked by the
    verifier and reported with witnesses; validate=False trusts the caller.
    """
    ext = Y.field
    if not isinstance(ext, ExtensionSpec):
        raise ParameterError("Y must live over an extension field of X's field")
    N = X.n + 1
    if ext.base != X.field or ext.N != N:
        raise ParameterError(
            f"Y's field must be the degree-{N} extension of X's field, got {ext!r}"
        )
    if validate:
        if not is_proper(X, r, r - 1, budget=budget):
            raise ParameterError(f"X is not a proper ({r}, {r - 1})-set")
        ok, witness = is_rs_set(Y, r, s, budget=budget)
        if not ok:
            raise ParameterError(
                f"Y is not an ({r}, {s})-set: some {witness.span_dim}-space "
                f"holds {witness.count} points"
            )
    M = Y.n + 1
    if len(X) * len(Y) * N * M > budget:
        raise BudgetExceeded(f"product would hold {len(X) * len(Y)} points of PG({N * M - 1}, q)")
    out = []
    for y in Y.points:
        spread_elt = field_reduction_spread(y, ext)
        out.extend(embed_copy(X, spread_elt).points)
    Z = PointSet.from_normalized(X.field, N * M - 1, tuple(sorted(set(out))))
    if len(Z) != len(X) * len(Y):
        raise RuntimeError("product size is not multiplicative; spread embedding collapsed")
    return Z


@dataclass(frozen=True)
class ProductRecipe:
    """Dimensions of an iterated spread product, computed from N and M."""

    kind: str
    factors: tuple[str, ...]
    n: int                    # ambient projective dimension of the result
    r: int
    s: int
    size_exponent: Fraction   # |Z| grows like q**size_exponent


def product_recipe(kind: str, m: int, c: int = 4) -> ProductRecipe:
    """Iterated-product bookkeeping for the stock recipes.

    kind 'caps' multiplies m elliptic ovoids ((2,1)-sets, N=4 each);
    'rnc' multiplies m rational normal curves of PG(c, q) ((c-1, c-2)-sets
    read as proper factors, N=c+1 each); 'graph-rnc' starts from the graph
    curve in PG(6, q) (a (3,2)-set, N=7) and multiplies m-1 curves of
    PG(4, q^...).  Ambient dimensions follow N*M-1 at every step; sizes are
    reported as q-exponents of the leading term.
    """
    if m < 1:
        raise ParameterError("need m >= 1 factors")
    if kind == "caps":
        dims = [4] * m
        r, s = 2, 1
        exps = [Fraction(2)] * m   # an ovoid of PG(3, Q) has Q^2 + 1 points
        names = tuple(f"ovoid(PG(3, q^{4**i}))" for i in range(m))
    elif kind == "rnc":
        if c < 3:
            raise ParameterError("rnc recipe needs c >= 3")
        dims = [c + 1] * m
        r, s = c - 1, c - 2
        exps = [Fraction(1)] * m   # a rational normal curve has q + 1 points
        names = tuple(f"rnc({c}, q^{(c + 1) ** i})" for i in range(m))
    elif kind == "graph-rnc":
        dims = [7] + [5] * (m - 1)
        r, s = 3, 2
        exps = [Fraction(3, 2)] + [Fraction(1)] * (m - 1)
        names = ("graph_curve(PG(6, q))",) + tuple(
            f"rnc(4, q^{7 * 5 ** i})" for i in range(m - 1)
        )
    else:
        raise ParameterError(f"unknown recipe kind {kind!r}")
    total_dim = 1
    size_exp = Fraction(0)
    scale = 1  # current extension degree over the ground field
    for N, e in zip(dims, exps):
        total_dim *= N
        size_exp += e * scale
        scale *= N
    return ProductRecipe(
        kind=kind, factors=names, n=total_dim - 1, r=r, s=s, size_exponent=size_exp
    )
