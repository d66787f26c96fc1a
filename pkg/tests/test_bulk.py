from fractions import Fraction

import numpy as np
import pytest

from fareycorona import bulk
from fareycorona.corona import dna_encode
from fareycorona.norms import Custom, Linear, Max, Power, build_corona, sandwich_check, phi_iterate_check

NORMS = [Linear(1, 1), Linear(2, 3), Linear(1, Fraction(5, 2)), Power(2), Max()]


@pytest.mark.parametrize("norm", NORMS, ids=str)
def test_levels_and_dna_match_exact_code(norm):
    base = bulk.Base.walk(norm, 40)
    bn = bulk.BulkNorm(norm)
    for R, idx in bulk._descending(base, bn, range(1, 41)):
        c = build_corona(norm, R)
        levels, ok = bulk.tower(base, idx)
        assert ok
        assert len(levels) == len(c.tower)
        for lv, ref in zip(levels, c.tower):
            got = list(zip(base.x[lv].tolist(), base.y[lv].tolist()))
            assert got == [tuple(v) for v in ref.interior]
        layers = [tuple(a.tolist()) for a in bulk.dna_layers(base, levels)]
        assert layers[::-1] == list(dna_encode(c).layers)


def test_grids_small():
    for norm in NORMS:
        assert bulk.corona_grid(norm, range(1, 60)).ok
        assert bulk.sandwich_grid(norm, range(1, 60), 4).ok
    for norm in NORMS[:3]:
        assert bulk.phi_iterate_grid(norm, range(1, 60), 4).ok


def test_grids_agree_with_exact_checks():
    for R in (7, 19, 33):
        assert phi_iterate_check(Linear(2, 3), R, 2)
        assert sandwich_check(Power(2), R, 3)


def test_theorem111_grid_small():
    layers, counts = bulk.theorem111_grid(1, 2, range(1, 120))
    assert layers.ok and counts.ok
    assert layers.checked == counts.checked > 100


def test_totient_counts():
    from math import gcd

    got = bulk.totient_counts(60)
    for s in range(2, 61):
        assert got[s] == sum(1 for x in range(1, s) if gcd(x, s - x) == 1)


def test_custom_norm_rejected():
    with pytest.raises(bulk.BulkError):
        bulk.BulkNorm(Custom(lambda v: v[0]))


def test_overflow_guard():
    bn = bulk.BulkNorm(Power(9))
    with pytest.raises(bulk.BulkError):
        bn.within(np.array([1], dtype=np.int64), 10**3)
