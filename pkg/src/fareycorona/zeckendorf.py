"""Fibonacci numbers and the binary and Zeckendorf number systems.

Zeckendorf exponents follow ``phi^n = a_{n+1}``, so ``phi^1 = 1``, ``phi^2 = 2``,
``phi^3 = 3``, ``phi^4 = 5``.  Canonical expansions use exponents ``>= 1`` with
no two adjacent; ``phi^0`` (also 1) only shows up while normalizing.
"""

from __future__ import annotations

import bisect
from collections import Counter
from typing import Iterable, Sequence

_FIB = [0, 1, 1]


def fib(n: int) -> int:
    """``a_n`` with ``a_0 = 0``, ``a_1 = a_2 = 1``."""
    if n < 0:
        raise ValueError("index must be >= 0")
    while len(_FIB) <= n:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[n]


def phi_power(n: int) -> int:
    return fib(n + 1)


def _grow_to(value: int) -> None:
    while _FIB[-1] <= value:
        _FIB.append(_FIB[-1] + _FIB[-2])


# -- Zeckendorf --------------------------------------------------------------

def zeck_encode(n: int) -> list[int]:
    """Greedy expansion, exponents in decreasing order."""
    if n < 1:
        raise ValueError("Zeckendorf expansion needs a positive integer")
    _grow_to(n)
    out = []
    while n:
        i = bisect.bisect_right(_FIB, n) - 1  # largest a_i <= n
        out.append(i - 1)
        n -= _FIB[i]
    return out


def zeck_decode(z: Iterable[int]) -> int:
    return sum(phi_power(k) for k in z)


def is_canonical_zeck(z: Sequence[int]) -> bool:
    return all(k >= 1 for k in z) and all(a > b + 1 for a, b in zip(z, z[1:]))


def zeck_normalize(terms: Iterable[int], debug: bool = False) -> list[int]:
    """Rewrite a multiset of exponents into canonical form using carry rules.

    ``phi^n + phi^(n+1) -> phi^(n+2)``, ``phi^n + phi^n -> phi^(n+1) + phi^(n-2)``
    for ``n >= 3``, and the low cases ``1+1 -> 2``, ``2+2 -> 3+1``, ``phi^0 -> phi^1``.
    """
    terms = list(terms)
    if not terms:
        return []
    d = [0] * (max(terms) + 4)
    for k in terms:
        d[k] += 1
    target = zeck_decode(terms) if debug else None
    todo = sorted(set(terms))
    while todo:
        n = todo.pop()
        if n + 3 >= len(d):
            d.extend([0] * 4)
        if n == 0:
            if d[0]:
                d[1] += d[0]
                d[0] = 0
                todo.append(1)
            continue
        if d[n] >= 2:
            d[n] -= 2
            if n >= 3:
                d[n + 1] += 1
                d[n - 2] += 1
            elif n == 2:
                d[3] += 1
                d[1] += 1
            else:
                d[2] += 1
        elif d[n] and d[n + 1]:
            d[n] -= 1
            d[n + 1] -= 1
            d[n + 2] += 1
        elif d[n] and d[n - 1]:
            n -= 1
            d[n] -= 1
            d[n + 1] -= 1
            d[n + 2] += 1
        else:
            continue
        if debug:
            assert sum(phi_power(k) * v for k, v in enumerate(d)) == target, "carry rule changed the value"
        todo.extend(range(max(n - 2, 0), n + 4))
    return [k for k in range(len(d) - 1, 0, -1) if d[k]]


def zeck_add(a: Sequence[int], b: Sequence[int], debug: bool = False) -> list[int]:
    return zeck_normalize(list(a) + list(b), debug=debug)


def zeck_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product through the integers; the exponent pattern is studied separately."""
    return zeck_encode(zeck_decode(a) * zeck_decode(b))


def zeck_bits(z: Sequence[int]) -> str:
    """0/1 string, most significant first, position k <-> phi^k (k >= 1)."""
    if not z:
        return "0"
    top = max(z)
    s = set(z)
    return "".join("1" if k in s else "0" for k in range(top, 0, -1))


def zeck_render(z: Sequence[int]) -> str:
    return "+".join(f"φ^{k}" for k in z)


# -- the phi^n * phi^m pattern ----------------------------------------------

STAR_OFFSETS = (0, 1, 2)  # phi^k read as a_{k+offset}
STAR_TAILS = ("merge", "extend", "replace")


def star_tail(n: int, m: int) -> list[int]:
    if n % 2 == 0:
        return [m - n + 4, m - n]
    if n < m:
        return [m - n + 2, m - n - 1]
    return [2, 0]


def star_terms(n: int, m: int, tail_mode: str) -> list[int]:
    """Exponents of the conjectured right-hand side for ``phi^n * phi^m``."""
    tail = star_tail(n, m)
    prog = []
    k = n + m
    while k >= tail[0]:
        prog.append(k)
        k -= 4
    if tail_mode == "merge":
        return sorted(set(prog) | set(tail), reverse=True)
    if tail_mode == "extend":
        return sorted(prog + tail, reverse=True)
    if tail_mode == "replace":
        return sorted(prog[:-1] + tail, reverse=True)
    raise ValueError(f"unknown tail mode {tail_mode!r}")


def star_pattern_report(n: int, m: int) -> dict:
    """Evaluate the pattern under every reading and compare with the true product."""
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    rows = []
    for offset in STAR_OFFSETS:
        product = fib(n + offset) * fib(m + offset)
        for mode in STAR_TAILS:
            terms = star_terms(n, m, mode)
            value = sum(fib(k + offset) for k in terms if k + offset >= 0)
            rows.append({
                "offset": offset,
                "tail": mode,
                "terms": terms,
                "value": value,
                "product": product,
                "match": value == product,
            })
    product = phi_power(n) * phi_power(m)
    return {
        "n": n,
        "m": m,
        "product": product,
        "zeckendorf": zeck_encode(product),
        "conventions": rows,
        "matching": [(r["offset"], r["tail"]) for r in rows if r["match"]],
    }


# -- binary -----------------------------------------------------------------

def bin_encode(n: int) -> list[int]:
    if n < 1:
        raise ValueError("binary expansion needs a positive integer")
    return [k for k in range(n.bit_length() - 1, -1, -1) if n >> k & 1]


def bin_decode(b: Iterable[int]) -> int:
    return sum(1 << k for k in b)


def bin_normalize(terms: Iterable[int]) -> list[int]:
    """Apply ``2^n + 2^n -> 2^(n+1)`` until every exponent is distinct."""
    c = Counter(terms)
    k = min(c) if c else 0
    top = max(c) if c else -1
    while k <= top:
        q, r = divmod(c[k], 2)
        c[k] = r
        if q:
            c[k + 1] += q
            top = max(top, k + 1)
        k += 1
    return sorted((k for k, v in c.items() if v), reverse=True)


def bin_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return bin_normalize(list(a) + list(b))


def bin_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return bin_normalize(i + j for i in a for j in b)


def bin_bits(b: Sequence[int]) -> str:
    if not b:
        return "0"
    s = set(b)
    return "".join("1" if k in s else "0" for k in range(max(b), -1, -1))
