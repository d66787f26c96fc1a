import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fareycorona.core import INF, ONE, ZERO
from fareycorona.corona import zero_dna_corona
from fareycorona.equidistribution import (
    CSV_COLUMNS,
    PartialPath,
    StatError,
    concat_bound_check,
    concat_gap,
    delta_p,
    delta_p_interval,
    endpoint_spacing,
    exactness_check,
    height_H,
    local_spacing_check,
    potential,
    random_partial_path,
    refine_bound_check,
    s_n,
    s_terms,
    sorted_sum_corona,
    totient_identity_check,
    totient_identity_table,
    totients,
    trend_csv,
    trend_table,
)
from fareycorona.norms import Linear, build_c_leq

coprime = st.tuples(st.integers(1, 300), st.integers(1, 300)).filter(lambda t: gcd(*t) == 1)


def test_potential_and_height():
    assert potential(ZERO, INF) == 1
    assert potential(ZERO, ONE) == Fraction(1, 2)
    assert exactness_check(ONE)
    assert height_H(ONE) == Fraction(1, 2)
    assert height_H(ZERO) == 0 and height_H(INF) == 1
    assert height_H((2, 3)) == Fraction(3, 5)
    with pytest.raises(StatError):
        potential(ZERO, (2, 3))


@given(coprime)
def test_exactness_and_path_sums(v):
    assert exactness_check(v)
    _, _, lo, up = oracle.descend(v)
    assert potential(lo, v) + potential(v, up) == potential(lo, up)


def test_path_sum_of_potential_is_height():
    c = build_c_leq(Linear(1, 1), 12)
    pts = c.points
    acc = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        acc += potential(a, b)
        assert acc == height_H(b)


def test_sn_values():
    # S_2 = 2/144 and S_3 = 668/14400 are the published values
    assert s_n(1) == 0
    assert s_n(2) == Fraction(2, 144)
    assert s_n(3) == Fraction(668, 14400)


def test_sn_direct_oracle():
    for n in range(1, 6):
        pts = oracle.sorted_points({tuple(v) for v in zero_dna_corona(n).path.interior})
        m = len(pts) - 1
        want = sum((Fraction(j, m) - oracle.height(v)) ** 2 for j, v in enumerate(pts[1:-1], 1))
        assert s_n(n) == want


def test_sn_increasing_and_nested():
    vals = [s_n(n) for n in range(1, 11)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    for n in range(1, 8):
        assert s_terms(n + 1)[1::2] == s_terms(n)


def test_totients():
    phi = totients(100)
    for n in range(1, 101):
        assert phi[n] == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_totient_identity():
    for R, lhs, rhs, ok in totient_identity_table(200):
        assert ok and lhs == rhs
    for R in (3, 10, 37):
        assert totient_identity_table(R)[-1][2] == 1 + len(build_c_leq(Linear(1, 1), R).interior)
    assert totient_identity_check(1000)


def test_delta_p_direct():
    c = build_c_leq(Linear(1, 1), 9)
    pts = sorted(c.interior, key=lambda v: Fraction(v[1], v[0]))
    m = len(pts) + 1
    for p in (1, 2, 3):
        want = sum(abs(Fraction(j, m) - Fraction(v[1], v[0] + v[1])) ** p for j, v in enumerate(pts, 1))
        assert delta_p(c, p) == want
    with pytest.raises(StatError):
        delta_p(c, 0)


def test_partial_path_validation():
    with pytest.raises(StatError):
        PartialPath(((1, 0),))
    with pytest.raises(StatError):
        PartialPath(((1, 0), (2, 3)))
    pp = PartialPath(((1, 1), (2, 3), (1, 2)))
    assert pp.refined().points == ((1, 1), (3, 4), (2, 3), (3, 5), (1, 2))
    assert [q.points for q in pp.split([1])] == [((1, 1), (2, 3)), ((2, 3), (1, 2))]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_refinement_bound(seed):
    c = random_partial_path(random.Random(seed))
    assert refine_bound_check(c)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32), st.data())
def test_concatenation_bound(seed, data):
    c = random_partial_path(random.Random(seed), max_points=16)
    if c.degree < 2:
        return
    cuts = data.draw(st.sets(st.integers(1, c.degree - 1), min_size=1, max_size=4))
    pieces = c.split(sorted(cuts))
    lhs, bound = concat_gap(pieces)
    assert lhs <= bound and concat_bound_check(pieces)


def test_delta_interval_on_full_path_matches_delta():
    c = build_c_leq(Linear(1, 1), 11)
    assert delta_p_interval(PartialPath.of(c), 1) == delta_p(c, 1)


def test_sorted_sum_corona_and_trend_rows():
    x, y = sorted_sum_corona(40)
    pts = list(zip(x.tolist(), y.tolist()))
    assert pts == [tuple(v) for v in build_c_leq(Linear(1, 1), 40).interior]
    rows = trend_table([20, 40])
    for row in rows:
        c = build_c_leq(Linear(1, 1), row["R"])
        assert row["delta1"] == delta_p(c, 1) and row["delta2"] == delta_p(c, 2)
    text = trend_csv(rows)
    assert text.splitlines()[0].split(",") == CSV_COLUMNS
    assert len(text.splitlines()) == 3


def test_local_spacing():
    for R in (10, 25, 60):
        rep = local_spacing_check(R)
        assert rep["shifted"]["ok"]
        assert rep["shifted"]["c1"] == (R, 1)
        assert rep["literal"]["c1"] == (R - 1, 1)
    with pytest.raises(StatError):
        local_spacing_check(3)
    sp = endpoint_spacing([ZERO, (4, 1), (3, 1), (2, 1), ONE, INF])
    assert sp["first"] == Fraction(1, 5) and sp["second"] == Fraction(1, 4) - Fraction(1, 5)
