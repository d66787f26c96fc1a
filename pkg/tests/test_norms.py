from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from fareycorona.core import ONE, Sl2Word
from fareycorona.norms import (
    Custom,
    IteratedNorm,
    Linear,
    MatrixNorm,
    Max,
    NormError,
    Power,
    build_c_leq,
    build_corona,
    corollary112_count,
    iterated_norm_value,
    nesting_chain,
    phi_iterate_check,
    sandwich_check,
    subcorona_transform,
    sublevel_vertices,
    theorem111_lambda,
)
from fareycorona.corona import dna_encode, is_corona
from fareycorona.paths import path_from_interior

NORMS = [
    (Linear(1, 1), lambda v, R: v[0] + v[1] <= R),
    (Linear(1, Fraction(5, 2)), lambda v, R: v[0] + Fraction(5, 2) * v[1] <= R),
    (Power(2), lambda v, R: v[0] ** 2 + v[1] ** 2 <= R * R),
    (Max(), lambda v, R: max(v) <= R),
]


def test_build_examples():
    assert build_c_leq(Linear(1, 1), 3) == path_from_interior([(2, 1), (1, 1), (1, 2)])
    assert len(build_c_leq(Linear(1, 1), 4).interior) == 5
    assert set(build_c_leq(Max(), 2).interior) == {(1, 1), (1, 2), (2, 1)}
    assert build_c_leq(Linear(1, 1), 1).interior == ()


@pytest.mark.parametrize("norm,pred", NORMS, ids=lambda x: str(x) if not callable(x) else "")
def test_sublevel_matches_box_scan(norm, pred):
    for R in (1, 2, 5, 9, 17):
        mine = set(map(tuple, sublevel_vertices(norm, R)))
        assert mine == {v for v in oracle.coprime_box(2 * R) if pred(v, R)}


def test_iterated_norm_values():
    assert iterated_norm_value(Linear(1, 1), ONE, 0) == 2
    assert iterated_norm_value(Linear(1, 1), ONE, 1) == 3
    assert iterated_norm_value(Linear(1, 1), (2, 1), 1) == 5
    with pytest.raises(NormError):
        IteratedNorm(MatrixNorm(), 1)


def test_phi_iterate_examples():
    c4 = build_corona(Linear(1, 1), 4)
    assert c4.tower[1] == path_from_interior([(1, 1)])
    assert phi_iterate_check(Linear(1, 1), 4, 1)
    assert phi_iterate_check(Max(), 7, 0)
    assert phi_iterate_check(Linear(1, 2), 10, 2)


def test_sandwich_examples():
    assert sandwich_check(Linear(1, 1), 20, 2)
    assert sandwich_check(Max(), 50, 3)
    assert sandwich_check(Power(2), 30, 0)
    with pytest.raises(NormError):
        sandwich_check(MatrixNorm(), 10, 1)


def test_matrix_and_custom_norms_give_coronas():
    for R in range(2, 30):
        assert is_corona(build_c_leq(MatrixNorm(((1, 2), (2, 1))), R))
        assert is_corona(build_c_leq(Custom(lambda v: 3 * v[0] + v[1]), R))


def test_nesting_chain():
    assert all(ok for _, ok in nesting_chain(12))


def test_theorem111_examples():
    assert theorem111_lambda(1, 1, 4, 1).values == (-1, 1)
    assert set(theorem111_lambda(1, 1, 3, 1).values) == {0}
    lf = theorem111_lambda(1, 2, 8, 1)
    assert lf.values == lf.extracted


def test_corollary112_examples():
    assert corollary112_count(1, 1, 4, 1) == 6 == build_c_leq(Linear(1, 1), 4).degree
    assert corollary112_count(1, 1, 3, 1) == 4
    assert corollary112_count(1, 1, 1, 1) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 1), (1, 2), (2, 3), (1, Fraction(5, 2)), (3, 1)]), st.integers(2, 80))
def test_theorem111_every_layer(ab, R):
    c = build_corona(Linear(*ab), R)
    layers = dna_encode(c).layers
    for n in range(1, c.height + 1):
        assert theorem111_lambda(*ab, R, n, corona=c).values == layers[c.height - n]
        assert corollary112_count(*ab, R, n, corona=c) == c.tower[n - 1].degree


def test_subcorona_transform_examples():
    assert subcorona_transform(1, 1, 6, Sl2Word())
    assert subcorona_transform(1, 1, 6, Sl2Word.from_letters([1]))
    assert subcorona_transform(1, 1, 10, Sl2Word.from_letters([1, -1]))
    with pytest.raises(NormError):
        subcorona_transform(1, 1, 3, Sl2Word.from_letters([1, 1, 1]))


def test_linear_transformed_weights():
    g = Sl2Word.from_letters([1, -1])
    t = Linear(1, 2).transformed(g)
    assert (t.alpha, t.beta) == (3, 5)
