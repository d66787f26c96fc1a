"""Vectorised versions of the corona computations for large sub-level sets.

Sub-level sets of a monotone norm are nested, and all of them are sorted
subsequences of the largest one.  So the tree is walked once at ``R_max``
(recording each vertex with its two bounds) and every smaller ``R`` becomes a
mask.  Towers, star tests, d.n.a. extraction and the closed-form layers are
then whole-array numpy operations on int64.  The exact implementations in
:mod:`.corona` and :mod:`.norms` stay the reference; the test-suite compares
the two on small ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .norms import Linear, Max, Norm, Power
from .zeckendorf import fib

_LIMIT = 1 << 62


class BulkError(ValueError):
    pass


@dataclass
class Base:
    """Every vertex of ``c(|.| <= R_max)`` in real order, with its bounds."""

    x: np.ndarray
    y: np.ndarray
    lx: np.ndarray
    ly: np.ndarray
    ux: np.ndarray
    uy: np.ndarray

    def __len__(self):
        return len(self.x)

    @classmethod
    def walk(cls, norm: Norm, R_max) -> "Base":
        t = norm.threshold(R_max)
        rows = []
        # (x, y, lower, upper, expanded); endpoints as plain tuples for speed
        stack = [(1, 1, (1, 0), (0, 1), False)]
        measure = norm.measure
        while stack:
            x, y, lo, up, expanded = stack.pop()
            if expanded:
                rows.append((x, y, lo[0], lo[1], up[0], up[1]))
                continue
            if measure((x, y)) > t:
                continue
            stack.append((x + up[0], y + up[1], (x, y), up, False))
            stack.append((x, y, lo, up, True))
            stack.append((x + lo[0], y + lo[1], lo, (x, y), False))
        a = np.array(rows, dtype=np.int64).reshape(-1, 6)
        return cls(*(np.ascontiguousarray(a[:, k]) for k in range(6)))


class BulkNorm:
    """Integer-valued version of a norm: ``|v| <= q`` iff ``M * den^e <= (num*scale)^e``."""

    def __init__(self, norm: Norm):
        self.norm = norm
        if isinstance(norm, Linear):
            self.scale = lcm(norm.alpha.denominator, norm.beta.denominator)
            self.A = int(norm.alpha * self.scale)
            self.B = int(norm.beta * self.scale)
            self.e = 1
        elif isinstance(norm, Power):
            self.scale, self.e = 1, norm.p
        elif isinstance(norm, Max):
            self.scale, self.e = 1, 1
        else:
            raise BulkError(f"no vectorised form for {norm}")

    def measure(self, x, y):
        n = self.norm
        if isinstance(n, Linear):
            return self.A * x + self.B * y
        if isinstance(n, Power):
            return x ** n.p + y ** n.p
        return np.maximum(x, y)

    def within(self, M, q) -> np.ndarray:
        q = Fraction(q)
        rhs = (q.numerator * self.scale) ** self.e
        den = q.denominator ** self.e
        if rhs >= _LIMIT or int(M.max(initial=0)) * den >= _LIMIT:
            raise BulkError("int64 range exceeded")
        return M * den <= rhs

    def bound(self, R) -> int:
        """Largest integer measure allowed at ``R`` (valid when ``e == 1``)."""
        q = Fraction(R) * self.scale
        return q.numerator // q.denominator


# -- levels as index arrays into the base -------------------------------------

def padded(base: Base, idx: np.ndarray):
    """Coordinates of ``ZERO, c_1, ..., c_{m-1}, INF``."""
    px = np.concatenate(([1], base.x[idx], [0]))
    py = np.concatenate(([0], base.y[idx], [1]))
    return px, py


def minima_mask(px, py) -> np.ndarray:
    s = px + py
    return (s[1:-1] < s[:-2]) & (s[1:-1] < s[2:])


def star_ok(px, py) -> bool:
    if len(px) <= 2:
        return True
    sx = px[:-2] + px[2:]
    sy = py[:-2] + py[2:]
    vx, vy = px[1:-1], py[1:-1]
    leaf = (vx == sx) & (vy == sy)
    mid = (2 * vx == sx) & (2 * vy == sy)
    return bool(np.all(leaf | mid | minima_mask(px, py)))


def tower(base: Base, idx: np.ndarray) -> tuple[list[np.ndarray], bool]:
    """Index arrays of ``c, phi c, ...`` and whether every level is a star-set."""
    levels = [idx]
    ok = True
    while len(levels[-1]):
        px, py = padded(base, levels[-1])
        ok = ok and star_ok(px, py)
        levels.append(levels[-1][minima_mask(px, py)])
    return levels, ok


def extract_layer(base: Base, lower: np.ndarray) -> np.ndarray:
    """Signed fin lengths of ``lower`` over the edges of its local minima.

    Raises when the gaps are not the straight fins that expansion produces.
    """
    px, py = padded(base, lower)
    mins = np.flatnonzero(minima_mask(px, py)) + 1
    pos = np.concatenate(([0], mins, [len(px) - 1]))
    count = np.diff(pos) - 1
    if np.any(count < 1):
        raise BulkError("adjacent local minima")
    s = px + py
    up_side = s[pos[1:] - 1] > s[pos[:-1] + 1]
    lam = np.where(count == 1, 0, np.where(up_side, count - 1, 1 - count))
    # every gap point must sit on the fin prescribed by its sign
    is_min = np.zeros(len(px), dtype=bool)
    is_min[pos] = True
    j = np.flatnonzero(~is_min)
    g = np.cumsum(is_min)[j] - 1
    lo, hi = pos[g], pos[g + 1]
    pos_side = lam[g] >= 0
    kx = np.where(pos_side, px[lo] + (j - lo) * px[hi], px[hi] + (hi - j) * px[lo])
    ky = np.where(pos_side, py[lo] + (j - lo) * py[hi], py[hi] + (hi - j) * py[lo])
    if not (np.array_equal(kx, px[j]) and np.array_equal(ky, py[j])):
        raise BulkError("gap is not a straight fin")
    return lam


def dna_layers(base: Base, levels: list[np.ndarray]) -> list[np.ndarray]:
    """``lambda^1, ..., lambda^ht`` (bottom first)."""
    return [extract_layer(base, levels[n - 1]) for n in range(1, len(levels))]


# -- closed forms for linear norms ------------------------------------------

@dataclass
class LayerCheck:
    formula: np.ndarray
    neighbour_ok: bool
    k0_ok: bool
    single_fin: bool
    corollary_degree: int


def closed_layer(base: Base, bn: BulkNorm, R, n: int, level: np.ndarray, above: np.ndarray) -> LayerCheck:
    """Layer ``lambda^n`` from the floor formulas, plus the side identities.

    ``level`` indexes ``phi^n c`` and ``above`` is a boolean mask over it that
    marks the points of ``phi^(n+1) c``.
    """
    Ri = bn.bound(R)
    a0, a1, a2 = fib(n), fib(n + 1), fib(n + 2)
    px, py = padded(base, level)
    m = len(px) - 1
    N = bn.measure(px, py)
    N[0], N[-1] = bn.A, bn.B
    if int(N.max()) * a2 * 4 + abs(Ri) >= _LIMIT:
        raise BulkError("int64 range exceeded")
    i = np.flatnonzero(above) + 1
    bx = np.concatenate([base.ux[level[i - 1]], base.lx[level[i - 1]]])
    by = np.concatenate([base.uy[level[i - 1]], base.ly[level[i - 1]]])
    nb = np.concatenate([i + 1, i - 1])
    pt = np.concatenate([i, i])
    # endpoint fins: ZERO reaching up along (k, 1), INF reaching down along (1, k)
    c_norm = np.concatenate([N[pt], [bn.A, bn.B]])
    b_norm = np.concatenate([bn.measure(bx, by), [bn.B, bn.A]])
    nb_norm = np.concatenate([N[nb], [N[1], N[m - 1]]])
    edge = np.concatenate([i + 1, i, [1, m]])
    sign = np.concatenate([-np.ones(len(i), np.int64), np.ones(len(i), np.int64), [-1, 1]])
    cx = np.concatenate([px[pt], [1, 0]])
    cy = np.concatenate([py[pt], [0, 1]])
    k0 = np.where(
        cx > 0,
        (np.concatenate([px[nb], [px[1], px[m - 1]]]) - np.concatenate([bx, [0, 1]])) // np.maximum(cx, 1),
        (np.concatenate([py[nb], [py[1], py[m - 1]]]) - np.concatenate([by, [1, 0]])) // np.maximum(cy, 1),
    )

    near = (Ri - a1 * nb_norm - a0 * c_norm) // (a1 * c_norm)
    closed = (
        (Ri - a1 * b_norm - a0 * c_norm) // (a1 * c_norm)
        - (Ri - a2 * b_norm - a1 * c_norm) // (a2 * c_norm)
        - 1
    )
    closed = np.where(a2 * c_norm + a1 * nb_norm > Ri, 0, closed)
    nz = closed != 0
    neighbour_ok = bool(np.array_equal(closed[nz], near[nz]))
    k0_ok = m == 1 or bool(np.all((k0[nz] >= 1) & (closed[nz] + k0[nz] + 1 >= 3)))
    values = np.zeros(m + 1, dtype=np.int64)
    np.add.at(values, edge, sign * closed)
    hits = np.zeros(m + 1, dtype=np.int64)
    np.add.at(hits, edge, nz.astype(np.int64))
    degree = 2 * m + int(np.maximum(near, 0).sum())
    return LayerCheck(values[1:], neighbour_ok, k0_ok, bool(hits.max(initial=0) <= 1), degree)


# -- grid drivers ------------------------------------------------------------

@dataclass
class GridResult:
    label: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures


def _descending(base: Base, bn: BulkNorm, Rs):
    """Yield ``(R, idx)`` for each ``R`` from large to small, reusing the previous mask."""
    M = bn.measure(base.x, base.y)
    idx = np.arange(len(base))
    for R in sorted(Rs, reverse=True):
        idx = idx[bn.within(M[idx], R)]
        yield R, idx


def corona_grid(norm: Norm, Rs, base: Base | None = None) -> GridResult:
    """Every level of every ``c(|.| <= R)`` is a star-set."""
    base = base or Base.walk(norm, max(Rs))
    bn = BulkNorm(norm)
    fails = []
    for R, idx in _descending(base, bn, Rs):
        if not tower(base, idx)[1]:
            fails.append(R)
    return GridResult(f"corona {norm}", len(Rs), sorted(fails))


def iterated_mask(base: Base, bn: BulkNorm, n: int, R) -> np.ndarray:
    p, q = fib(n + 2), fib(n + 1)
    w1 = bn.measure(p * base.ux + q * base.lx, p * base.uy + q * base.ly)
    w2 = bn.measure(q * base.ux + p * base.lx, q * base.uy + p * base.ly)
    return bn.within(np.maximum(w1, w2), R)


def phi_iterate_grid(norm: Norm, Rs, n_max: int, base: Base | None = None) -> GridResult:
    base = base or Base.walk(norm, max(Rs))
    bn = BulkNorm(norm)
    fails, checked = [], 0
    for R, idx in _descending(base, bn, Rs):
        levels, _ = tower(base, idx)
        for n in range(n_max + 1):
            lhs = levels[n] if n < len(levels) else levels[-1]
            rhs = np.flatnonzero(iterated_mask(base, bn, n, R))
            checked += 1
            if not np.array_equal(lhs, rhs):
                fails.append((R, n))
    return GridResult(f"iterate {norm}", checked, sorted(fails))


def sandwich_grid(norm: Norm, Rs, n_max: int, base: Base | None = None) -> GridResult:
    base = base or Base.walk(norm, max(Rs))
    bn = BulkNorm(norm)
    M = bn.measure(base.x, base.y)
    fails, checked = [], 0
    for R, idx in _descending(base, bn, Rs):
        levels, _ = tower(base, idx)
        for n in range(n_max + 1):
            mid = np.zeros(len(base), dtype=bool)
            if n < len(levels):
                mid[levels[n]] = True
            inner = bn.within(M, Fraction(R) / fib(n + 2))
            outer = bn.within(M, Fraction(2 * R) / fib(n + 3))
            checked += 1
            if np.any(inner & ~mid) or np.any(mid & ~outer):
                fails.append((R, n))
    return GridResult(f"sandwich {norm}", checked, sorted(fails))


def theorem111_grid(alpha, beta, Rs, base: Base | None = None):
    """Closed-form layers against extraction, and the degree count, for every R and layer.

    Returns ``(layer result, count result, details)`` where ``details`` maps
    ``R`` to the extracted layers (bottom first) for the smallest few R.
    """
    norm = Linear(alpha, beta)
    base = base or Base.walk(norm, max(Rs))
    bn = BulkNorm(norm)
    lam_fail, count_fail, side_fail = [], [], []
    layers_checked = 0
    for R, idx in _descending(base, bn, Rs):
        levels, ok = tower(base, idx)
        if not ok:
            lam_fail.append((R, "not a corona"))
            continue
        ht = len(levels) - 1
        for n in range(1, ht + 1):
            layers_checked += 1
            extracted = extract_layer(base, levels[n - 1])
            px, py = padded(base, levels[n])
            above = minima_mask(px, py)
            chk = closed_layer(base, bn, R, n, levels[n], above)
            if not np.array_equal(chk.formula, extracted):
                lam_fail.append((R, n))
            if not (chk.neighbour_ok and chk.k0_ok and chk.single_fin):
                side_fail.append((R, n))
            if chk.corollary_degree != len(levels[n - 1]) + 1:
                count_fail.append((R, n))
    label = f"({Fraction(alpha)},{Fraction(beta)})"
    return (
        GridResult(f"closed-form layers {label}", layers_checked, sorted(lam_fail) + sorted(side_fail)),
        GridResult(f"degree count {label}", layers_checked, sorted(count_fail)),
    )


def totient_counts(R_max: int) -> np.ndarray:
    """Number of coprime ``(x, y)``, ``x, y >= 1``, with ``x + y = s``, for each s."""
    out = np.zeros(R_max + 1, dtype=np.int64)
    for s in range(2, R_max + 1):
        x = np.arange(1, s, dtype=np.int64)
        out[s] = int(np.count_nonzero(np.gcd(x, s - x) == 1))
    return out
