import pytest
from hypothesis import given, strategies as st

import oracle
from fareycorona.zeckendorf import (
    STAR_OFFSETS,
    STAR_TAILS,
    bin_add,
    bin_bits,
    bin_decode,
    bin_encode,
    bin_mul,
    fib,
    is_canonical_zeck,
    phi_power,
    star_pattern_report,
    zeck_add,
    zeck_bits,
    zeck_decode,
    zeck_encode,
    zeck_mul,
    zeck_normalize,
    zeck_render,
)

pos = st.integers(1, 10**30)


def test_fibonacci():
    assert [fib(n) for n in range(1, 11)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert [phi_power(n) for n in range(1, 5)] == [1, 2, 3, 5]
    with pytest.raises(ValueError):
        fib(-1)


def test_encode_examples():
    assert zeck_encode(1) == [1]
    assert zeck_encode(4) == [3, 1]
    assert zeck_encode(10) == [5, 2]
    with pytest.raises(ValueError):
        zeck_encode(0)


def test_add_examples():
    assert zeck_add([3], [2]) == [4]
    assert zeck_add([2], [2]) == [3, 1]
    assert zeck_add([1], [1]) == [2]


def test_mul_examples():
    assert zeck_mul([1], [7]) == [7]
    assert zeck_mul([2], [4]) == [5, 2]
    assert zeck_mul([3], [3]) == [5, 1]


def test_binary_examples():
    assert bin_encode(5) == [2, 0]
    assert bin_add([1], [1]) == [2]
    assert bin_mul([2, 0], [1]) == [3, 1]


def test_rendering():
    assert zeck_bits([5, 2]) == "10010"
    assert bin_bits([3, 1]) == "1010"
    assert "11" not in zeck_bits(zeck_encode(10**12))
    assert zeck_render([5, 2]) == "φ^5+φ^2"


def test_exhaustive_small_pairs():
    for a in range(1, 150):
        for b in range(a, 150):
            s = zeck_add(zeck_encode(a), zeck_encode(b))
            assert zeck_decode(s) == a + b and is_canonical_zeck(s)
            assert zeck_decode(zeck_mul(zeck_encode(a), zeck_encode(b))) == a * b
            assert bin_decode(bin_add(bin_encode(a), bin_encode(b))) == a + b
            assert bin_decode(bin_mul(bin_encode(a), bin_encode(b))) == a * b


@given(pos)
def test_encode_matches_greedy_oracle(n):
    z = zeck_encode(n)
    assert z == oracle.zeck_greedy(n)
    assert is_canonical_zeck(z) and zeck_decode(z) == n
    assert bin_decode(bin_encode(n)) == n


@given(pos, pos)
def test_add_mul_match_integers(a, b):
    za, zb = zeck_encode(a), zeck_encode(b)
    assert zeck_add(za, zb, debug=True) == zeck_encode(a + b)
    assert zeck_mul(za, zb) == zeck_encode(a * b)
    assert bin_add(bin_encode(a), bin_encode(b)) == bin_encode(a + b)
    assert bin_mul(bin_encode(a), bin_encode(b)) == bin_encode(a * b)


@given(st.lists(st.integers(0, 40), min_size=1, max_size=30))
def test_normalize_any_multiset(terms):
    # phi^0 counts as 1 like phi^1
    z = zeck_normalize(terms, debug=True)
    assert is_canonical_zeck(z)
    assert zeck_decode(z) == sum(phi_power(k) for k in terms)


def test_star_report_structure():
    rep = star_pattern_report(1, 1)
    assert rep["product"] == 1
    assert len(rep["conventions"]) == len(STAR_OFFSETS) * len(STAR_TAILS)
    assert star_pattern_report(2, 4)["zeckendorf"] == [5, 2]
    assert star_pattern_report(3, 3)["zeckendorf"] == [5, 1]
    with pytest.raises(ValueError):
        star_pattern_report(3, 2)


def test_star_report_agreement_table():
    # reported, not asserted as truth: which readings reproduce the products
    hits = {}
    for n in range(1, 21):
        for m in range(n, 21):
            for conv in star_pattern_report(n, m)["matching"]:
                hits[conv] = hits.get(conv, 0) + 1
    assert hits.get((2, "merge")) == hits.get((2, "replace")) == 210
    assert hits.get((0, "merge"), 0) <= 1
