"""Slow, independent reference implementations used by the tests.

Everything here walks the tree one mediant at a time or scans integer boxes;
nothing imports the package's own navigation code.
"""

from fractions import Fraction
from math import comb, gcd

ZERO, INF, ONE = (1, 0), (0, 1), (1, 1)


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def descend(v):
    """Walk from the root to ``v`` by comparing slopes.

    Returns ``(ancestors, letters, lo, up)``: the strict ancestors in root-first
    order, the step signs (+1 towards INF), and the final bounds of ``v``.
    """
    x, y = v
    lo, up, cur = ZERO, INF, ONE
    anc, letters = [], []
    while cur != (x, y):
        anc.append(cur)
        if y * cur[0] > cur[1] * x:  # v is to the right of cur
            lo, letters = cur, letters + [1]
        else:
            up, letters = cur, letters + [-1]
        cur = add(lo, up)
    return anc, letters, lo, up


def mother(v):
    anc = descend(v)[0]
    return anc[-1] if anc else None


def runs(letters):
    """Run lengths with the first run counting +1 steps (possibly empty)."""
    out = [0]
    want = 1
    for s in letters:
        if s != want:
            out.append(0)
            want = s
        out[-1] += 1
    return out


def cf_exponents(v):
    return runs(descend(v)[1])


def coprime_box(n):
    return [(x, y) for x in range(1, n + 1) for y in range(1, n + 1) if gcd(x, y) == 1]


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def mother_closed_sets(k):
    """All mother-closed vertex sets of size ``k``, as frozensets."""
    level = {frozenset()}
    for _ in range(k):
        nxt = set()
        for s in level:
            if not s:
                nxt.add(frozenset([ONE]))
                continue
            for v in s:
                _, _, lo, up = descend(v)
                for ch in (add(v, lo), add(v, up)):
                    if ch not in s:
                        nxt.add(s | {ch})
        level = nxt
    return level


def sorted_points(s):
    inner = sorted(s, key=lambda v: Fraction(v[1], v[0]))
    return [ZERO] + inner + [INF]


def has_both_children(v, s):
    _, _, lo, up = descend(v)
    return add(v, lo) in s and add(v, up) in s


def star_ok(s):
    p = sorted_points(s)
    for i in range(1, len(p) - 1):
        a, v, b = p[i - 1], p[i], p[i + 1]
        if v == add(a, b) or has_both_children(v, s) or (2 * v[0], 2 * v[1]) == add(a, b):
            continue
        return False
    return True


def is_corona(s):
    s = frozenset(s)
    while s:
        if not star_ok(s):
            return False
        s = frozenset(v for v in s if has_both_children(v, s))
    return True


def tower(s):
    out = [frozenset(s)]
    while out[-1]:
        cur = out[-1]
        out.append(frozenset(v for v in cur if has_both_children(v, cur)))
    return out


def sublevel(measure, R, box):
    return {v for v in coprime_box(box) if measure(v) <= R}


def zeck_greedy(n):
    fibs = [1, 2]
    while fibs[-1] <= n:
        fibs.append(fibs[-1] + fibs[-2])
    out = []
    for i in range(len(fibs) - 1, -1, -1):
        if fibs[i] <= n:
            out.append(i + 1)  # fibs[i] = phi^(i+1)
            n -= fibs[i]
    return out


def height(v):
    return Fraction(v[1], v[0] + v[1])
