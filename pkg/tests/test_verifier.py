"""Subspace intersection verifier, frozen witnesses, and the brute-force oracle."""

import pytest

from evasive.constructions import (
    elliptic_ovoid,
    graph_curve_for_prime_power,
    monomial_curve,
    rational_normal_curve,
)
from evasive.errors import BudgetExceeded, ParameterError
from evasive.gf import make_field
from evasive.projgeom import PointSet, all_points
from evasive.randomized import Prng
from evasive.verifier import (
    find_violation,
    is_proper,
    is_rs_set,
    max_in_s_space,
    oracle_max_in_s_space,
)


F2 = make_field(2, 1)
F3 = make_field(3, 1)
F5 = make_field(5, 1)

LINE_IN_PLANE = PointSet.from_vectors(
    F3, 2, [(0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)])
THREE_COLLINEAR = PointSet.from_vectors(F3, 2, [(0, 0, 1), (0, 1, 0), (0, 1, 1)])


def test_max_frozen_examples():
    count, w = max_in_s_space(LINE_IN_PLANE, 1)
    assert count == 4
    assert set(w.intersection) == set(LINE_IN_PLANE.points)
    assert max_in_s_space(rational_normal_curve(4, F5), 2)[0] == 3
    assert max_in_s_space(monomial_curve(3, F3), 1)[0] <= 3
    full_plane = PointSet.from_vectors(F2, 2, all_points(2, F2))
    assert max_in_s_space(full_plane, 1)[0] == 3
    one = PointSet.from_vectors(F2, 2, [(1, 0, 1)])
    count, w = max_in_s_space(one, 1)
    assert count == 1 and w.intersection == ((1, 0, 1),)


def test_is_rs_set_frozen_examples():
    ok, w = is_rs_set(THREE_COLLINEAR, 2, 1)
    assert not ok and w.count == 3
    assert is_rs_set(THREE_COLLINEAR, 3, 1) == (True, None)
    assert is_rs_set(rational_normal_curve(4, F5), 3, 2) == (True, None)
    ok, w = is_rs_set(rational_normal_curve(4, F5), 2, 2)
    assert not ok and w.count == 3 and w.span_dim == 2
    assert is_rs_set(graph_curve_for_prime_power(2), 3, 2)[0]
    # r at least |X| holds trivially, no scan needed
    assert is_rs_set(monomial_curve(3, F3), 4, 2) == (True, None)


def test_small_sets_trivially_valid():
    X = PointSet.from_vectors(F3, 2, [(0, 0, 1), (0, 1, 0)])
    assert is_rs_set(X, 2, 1) == (True, None)
    assert find_violation(X, 1, 2) is None


def test_witness_structure_and_recheck():
    w = find_violation(THREE_COLLINEAR, 1, 2)
    assert w is not None
    assert w.span_dim <= 1
    assert w.count == 3
    w.recheck(THREE_COLLINEAR)

    curve = rational_normal_curve(4, F5)
    w2 = find_violation(curve, 2, 2)
    assert w2 is not None and w2.count == 3
    w2.recheck(curve)


def test_witness_is_lex_first():
    # scanning the full Fano-like plane over GF(2) for (r,s) = (2,1):
    # the first pair in lex order already spans a full line
    full_plane = PointSet.from_vectors(F2, 2, all_points(2, F2))
    w = find_violation(full_plane, 1, 2)
    assert w.generating_points == ((0, 0, 1), (0, 1, 0))
    assert w.intersection == ((0, 0, 1), (0, 1, 0), (0, 1, 1))
    assert w.span_dim == 1


def test_is_proper_examples():
    # ovoid: a cap, and no point repeats, so both m = 0 and m = 1 hold
    assert is_proper(elliptic_ovoid(F3), 2, 1)
    # three collinear points hit the m = 1 ceiling 1 + 3 - 1 exactly
    assert is_proper(THREE_COLLINEAR, 3, 1)
    # but fail (2, 1): the line holds 3 > 1 + 2 - 1
    assert not is_proper(THREE_COLLINEAR, 2, 1)
    assert is_proper(monomial_curve(3, F3), 3, 1)


def test_parameter_validation():
    # s = 0 is legal: a point holds at most one point of X
    assert max_in_s_space(LINE_IN_PLANE, 0)[0] == 1
    with pytest.raises(ParameterError):
        max_in_s_space(LINE_IN_PLANE, -1)
    with pytest.raises(ParameterError):
        max_in_s_space(LINE_IN_PLANE, 2)  # s must stay below n
    with pytest.raises(ParameterError):
        is_rs_set(LINE_IN_PLANE, 0, 1)
    empty = PointSet.from_normalized(F3, 2, ())
    with pytest.raises(ParameterError):
        max_in_s_space(empty, 1)


def test_budget_guard():
    big = PointSet.from_vectors(F5, 2, all_points(2, F5))
    with pytest.raises(BudgetExceeded):
        max_in_s_space(big, 1, budget=10)


def test_threads_agree():
    X = graph_curve_for_prime_power(3)
    assert max_in_s_space(X, 2, threads=2) == max_in_s_space(X, 2, threads=1)
    assert is_rs_set(X, 3, 2, threads=3)[0]
    # max witness itself must match too (lex-first attaining subset)
    _, w1 = max_in_s_space(X, 2, threads=1)
    _, w2 = max_in_s_space(X, 2, threads=2)
    assert w1 == w2


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("s", [1, 2])
def test_oracle_agreement_random_sets(seed, s):
    pts = list(all_points(3, F2))
    rng = Prng(seed)
    chosen = set()
    while len(chosen) < 8:
        chosen.add(pts[rng.below(len(pts))])
    X = PointSet.from_normalized(F2, 3, tuple(sorted(chosen)))
    count, w = max_in_s_space(X, s)
    assert count == oracle_max_in_s_space(X, s)
    w.recheck(X)


def test_oracle_agreement_structured_sets():
    full_plane = PointSet.from_vectors(F2, 2, all_points(2, F2))
    assert oracle_max_in_s_space(full_plane, 1) == 3
    one = PointSet.from_vectors(F2, 2, [(1, 1, 1)])
    assert oracle_max_in_s_space(one, 1) == 1
    curve = rational_normal_curve(3, F3)  # small enough for full enumeration
    assert oracle_max_in_s_space(curve, 2) == max_in_s_space(curve, 2)[0] == 3


def test_max_monotone_under_adding_points():
    rng = Prng(77)
    pts = list(all_points(3, F3))
    chosen = []
    prev = 0
    for _ in range(10):
        pt = pts[rng.below(len(pts))]
        if pt in chosen:
            continue
        chosen.append(pt)
        X = PointSet.from_normalized(F3, 3, tuple(sorted(chosen)))
        cur = max_in_s_space(X, 2)[0]
        assert cur >= prev
        prev = cur
