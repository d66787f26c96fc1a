"""How evenly a path spreads the rationals over [0, 1].

``H(x, y) = y / (x + y)`` maps the Stern-Brocot tree onto the unit interval,
and ``delta_p`` measures how far the points of a path sit from an even
spacing.  Everything here is exact: ``Fraction`` for small inputs and
integer sums grouped by ``x + y`` for the large trend tables.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .bulk import totient_counts
from .core import INF, ZERO, Vertex, as_vertex, bounds, det
from .corona import zero_dna_corona
from .paths import FareyPath


class StatError(ValueError):
    pass


def _size(v) -> int:
    return v[0] + v[1]


def potential(lo, up) -> Fraction:
    """``1 / (|lo| |up|)`` on a Farey edge, with ``|(x, y)| = x + y``."""
    lo, up = as_vertex(lo), as_vertex(up)
    if det(lo, up) != 1:
        raise StatError(f"{tuple(lo)}, {tuple(up)} is not a Farey edge")
    return Fraction(1, _size(lo) * _size(up))


def exactness_check(v) -> bool:
    lo, up = bounds(v)
    v = as_vertex(v)
    return potential(lo, up) == potential(lo, v) + potential(v, up)


def height_H(v) -> Fraction:
    x, y = v
    return Fraction(y, x + y)


def delta_p(c: FareyPath, p: int = 1) -> Fraction:
    """``sum_j |j/m - H(c_j)|^p`` over the interior points."""
    _check_p(p)
    m = c.degree
    return sum((abs(Fraction(j, m) - height_H(v)) ** p for j, v in enumerate(c.interior, 1)), Fraction(0))


def _check_p(p):
    if int(p) != p or p < 1:
        raise StatError("p must be an integer >= 1")


# -- partial paths ----------------------------------------------------------

@dataclass(frozen=True)
class PartialPath:
    """A Farey path between arbitrary endpoints, in increasing order."""

    points: tuple[Vertex, ...]

    def __post_init__(self):
        pts = tuple(as_vertex(v) for v in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise StatError("a partial path needs two endpoints")
        for a, b in zip(pts, pts[1:]):
            if det(a, b) != 1:
                raise StatError(f"{tuple(a)}, {tuple(b)} is not a Farey edge")

    @classmethod
    def of(cls, c: FareyPath) -> "PartialPath":
        return cls(c.points)

    @property
    def degree(self) -> int:
        return len(self.points) - 1

    def real_length(self) -> Fraction:
        return height_H(self.points[-1]) - height_H(self.points[0])

    def refined(self) -> "PartialPath":
        """Same endpoints, every mediant added."""
        out = [self.points[0]]
        for a, b in zip(self.points, self.points[1:]):
            out += [a + b, b]
        return PartialPath(tuple(out))

    def split(self, cuts: Sequence[int]) -> list["PartialPath"]:
        """Pieces between the given interior indices; neighbours share endpoints."""
        idx = [0] + sorted(cuts) + [self.degree]
        return [PartialPath(self.points[a : b + 1]) for a, b in zip(idx, idx[1:])]


def delta_p_interval(c: PartialPath, p: int = 1) -> Fraction:
    """Discrepancy against the straight line between the endpoint heights."""
    _check_p(p)
    pts = c.points
    m = c.degree
    h0 = height_H(pts[0])
    span = height_H(pts[-1]) - h0
    return sum(
        (abs(h0 + Fraction(i, m) * span - height_H(v)) ** p for i, v in enumerate(pts[1:-1], 1)),
        Fraction(0),
    )


def refine_bound_check(c: PartialPath) -> bool:
    """``delta_1(refined) <= 2 delta_1(c) + h(c) / 2``."""
    return delta_p_interval(c.refined(), 1) <= 2 * delta_p_interval(c, 1) + c.real_length() / 2


def concat_gap(pieces: Sequence[PartialPath]) -> tuple[Fraction, Fraction]:
    """``(|delta_1(whole) - sum delta_1(piece)|, bound)`` for consecutive pieces."""
    for a, b in zip(pieces, pieces[1:]):
        if a.points[-1] != b.points[0]:
            raise StatError("pieces do not share endpoints")
    whole = PartialPath(pieces[0].points + tuple(v for q in pieces[1:] for v in q.points[1:]))
    lhs = abs(delta_p_interval(whole, 1) - sum(delta_p_interval(q, 1) for q in pieces))
    bound = Fraction(0)
    for i, a in enumerate(pieces):
        for b in pieces[i + 1 :]:
            bound += abs(a.real_length() * b.degree - b.real_length() * a.degree)
    return lhs, bound / 2


def concat_bound_check(pieces: Sequence[PartialPath]) -> bool:
    lhs, bound = concat_gap(pieces)
    return lhs <= bound


def random_partial_path(rng: random.Random, max_depth: int = 6, max_points: int = 12) -> PartialPath:
    """A random path between the two rows of a random word."""
    lo, up = ZERO, INF
    for _ in range(rng.randint(0, max_depth)):
        mid = lo + up
        lo, up = (lo, mid) if rng.random() < 0.5 else (mid, up)
    pts = [lo, up]
    for _ in range(rng.randint(0, max_points)):
        i = rng.randrange(len(pts) - 1)
        pts.insert(i + 1, pts[i] + pts[i + 1])
    return PartialPath(tuple(pts))


# -- the zero-d.n.a. sequence -------------------------------------------------

def s_terms(n: int) -> list[Fraction]:
    c = zero_dna_corona(n).path
    m = c.degree
    return [(Fraction(j, m) - height_H(v)) ** 2 for j, v in enumerate(c.interior, 1)]


def s_n(n: int, max_points: int = 1 << 20) -> Fraction:
    if n < 1:
        raise StatError("n must be >= 1")
    if (1 << n) - 1 > max_points:
        raise StatError(f"c({n}) has more than {max_points} points")
    return sum(s_terms(n), Fraction(0))


# -- totients ------------------------------------------------------------------

def totients(n_max: int) -> list[int]:
    """Euler's phi for ``0..n_max`` by a linear sieve (``phi(0)`` is set to 0)."""
    phi = list(range(n_max + 1))
    primes: list[int] = []
    composite = [False] * (n_max + 1)
    for i in range(2, n_max + 1):
        if not composite[i]:
            primes.append(i)
            phi[i] = i - 1
        for p in primes:
            if i * p > n_max:
                break
            composite[i * p] = True
            if i % p == 0:
                phi[i * p] = phi[i] * p
                break
            phi[i * p] = phi[i] * (p - 1)
    if n_max >= 0:
        phi[0] = 0
    return phi


def totient_identity_table(R_max: int) -> list[tuple[int, int, int, bool]]:
    """``(R, sum_{n<=R} phi(n), 1 + #c_R, equal)`` for ``R = 1..R_max``.

    The corona is counted stratum by stratum (coprime pairs with ``x + y = s``)
    without building it.
    """
    phi = totients(R_max)
    strata = totient_counts(R_max)
    rows = []
    lhs = 0
    count = 0
    for R in range(1, R_max + 1):
        lhs += phi[R]
        count += int(strata[R])
        rows.append((R, lhs, 1 + count, lhs == 1 + count))
    return rows


def totient_identity_check(R: int) -> bool:
    return totient_identity_table(R)[-1][3]


# -- large coronas c_R = {x + y <= R} -------------------------------------------

def sorted_sum_corona(R_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of ``{x + y <= R_max}`` in increasing order of ``y / x``.

    The order comes from a float sort and is then certified exactly: every
    consecutive pair (endpoints included) must have determinant 1.
    """
    xs, ys = [], []
    for s in range(2, R_max + 1):
        x = np.arange(1, s, dtype=np.int64)
        y = s - x
        keep = np.gcd(x, y) == 1
        xs.append(x[keep])
        ys.append(y[keep])
    x = np.concatenate(xs) if xs else np.zeros(0, np.int64)
    y = np.concatenate(ys) if ys else np.zeros(0, np.int64)
    order = np.argsort(y / x, kind="stable")
    x, y = x[order], y[order]
    px = np.concatenate(([1], x, [0]))
    py = np.concatenate(([0], y, [1]))
    if not np.all(px[:-1] * py[1:] - py[:-1] * px[1:] == 1):
        raise StatError("float ordering failed to produce a Farey path")
    return x, y


def _group_sum(values: np.ndarray, s: np.ndarray, R: int, square: bool) -> list[int]:
    """Exact per-stratum sums of ``values`` (or their squares)."""
    if square:
        big = int(np.abs(values).max(initial=0)) ** 2 * max(1, len(values))
        if big < (1 << 63):
            v = values * values
            return _bincount_int(v, s, R)
        out = [0] * (R + 1)
        for val, k in zip(values.tolist(), s.tolist()):
            out[k] += val * val
        return out
    return _bincount_int(np.abs(values), s, R)


def _bincount_int(v: np.ndarray, s: np.ndarray, R: int) -> list[int]:
    order = np.argsort(s, kind="stable")
    v, s = v[order], s[order]
    starts = np.searchsorted(s, np.arange(R + 1), side="left")
    sums = np.add.reduceat(np.concatenate((v, [0])), starts) if len(v) else np.zeros(R + 1, np.int64)
    out = [0] * (R + 1)
    present = np.diff(np.concatenate((starts, [len(v)]))) > 0
    for k in np.flatnonzero(present):
        out[k] = int(sums[k])
    return out


def deltas_for_sum_corona(x: np.ndarray, y: np.ndarray, R: int) -> tuple[Fraction, Fraction]:
    """Exact ``(delta_1, delta_2)`` of ``c_R`` given its sorted coordinates.

    With ``d_j = j s_j - y_j m`` the terms are ``|d_j| / (m s_j)`` and
    ``d_j^2 / (m s_j)^2``; the integer numerators are summed per ``s``.
    """
    keep = x + y <= R
    x, y = x[keep], y[keep]
    m = len(x) + 1
    s = x + y
    j = np.arange(1, m, dtype=np.int64)
    d = j * s - y * m
    one = _group_sum(d, s, R, square=False)
    two = _group_sum(d, s, R, square=True)
    d1 = sum((Fraction(one[k], m * k) for k in range(2, R + 1) if one[k]), Fraction(0))
    d2 = sum((Fraction(two[k], (m * k) ** 2) for k in range(2, R + 1) if two[k]), Fraction(0))
    return d1, d2


def trend_table(Rs: Iterable[int]) -> list[dict]:
    """``delta_1``, ``delta_2`` of ``c_R`` with the Franel/Landau-style ratios, for display."""
    Rs = sorted(Rs)
    x, y = sorted_sum_corona(max(Rs))
    rows = []
    for R in Rs:
        d1, d2 = deltas_for_sum_corona(x, y, R)
        logR = float(np.log(R))
        rows.append({
            "R": R,
            "delta1": d1,
            "delta2": d2,
            "delta2_R_over_logR": float(d2) * R / logR,
            "delta1_over_sqrtR_logR": float(d1) / (R ** 0.5 * logR),
        })
    return rows


CSV_COLUMNS = [
    "R",
    "delta1_num",
    "delta1_den",
    "delta2_num",
    "delta2_den",
    "delta1",
    "delta2",
    "delta2_R_over_logR",
    "delta1_over_sqrtR_logR",
]


def trend_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([
            r["R"],
            r["delta1"].numerator,
            r["delta1"].denominator,
            r["delta2"].numerator,
            r["delta2"].denominator,
            f"{float(r['delta1']):.12g}",
            f"{float(r['delta2']):.12g}",
            f"{r['delta2_R_over_logR']:.12g}",
            f"{r['delta1_over_sqrtR_logR']:.12g}",
        ])
    return buf.getvalue()


# -- spacing next to the endpoints ------------------------------------------

def endpoint_spacing(points: Sequence) -> dict:
    """Height gaps between the first three and the last three points of a path."""
    p = [as_vertex(v) for v in points]
    if len(p) < 5:
        raise StatError("need at least three interior points")
    H = [height_H(v) for v in p]
    return {
        "c1": p[1],
        "c2": p[2],
        "first": H[1] - H[0],
        "second": H[2] - H[1],
        "last": H[-1] - H[-2],
        "second_last": H[-2] - H[-3],
    }


def _ends_of_sum_corona(bound: int) -> list[Vertex]:
    x, y = sorted_sum_corona(bound)
    inner = [Vertex(int(a), int(b)) for a, b in zip(x[[0, 1, -2, -1]], y[[0, 1, -2, -1]])]
    return [ZERO, inner[0], inner[1], inner[2], inner[3], INF]


def local_spacing_check(R: int) -> dict:
    """Endpoint gaps of ``{x + y <= R + 1}``, whose first points are ``(R, 1)`` and
    ``(R - 1, 1)``, against ``1/(R+1)`` and ``1/(R(R+1))``.

    ``literal`` repeats the comparison on ``{x + y <= R}``, where the first
    points are ``(R - 1, 1)``, ``(R - 2, 1)`` and the gaps ``1/R``, ``1/(R(R-1))``.
    """
    if R < 4:
        raise StatError("R must be >= 4")
    out = {}
    for key, bound in (("shifted", R + 1), ("literal", R)):
        sp = endpoint_spacing(_ends_of_sum_corona(bound))
        want1, want2 = Fraction(1, bound), Fraction(1, (bound - 1) * bound)
        out[key] = {
            "c1": tuple(sp["c1"]),
            "c2": tuple(sp["c2"]),
            "first": sp["first"],
            "second": sp["second"],
            "ok": sp["first"] == want1 == sp["last"] and sp["second"] == want2 == sp["second_last"],
        }
    return out
