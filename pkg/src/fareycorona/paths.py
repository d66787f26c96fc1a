"""Finite subtrees of the Stern-Brocot tree, seen as paths from ZERO to INF.

A :class:`FareyPath` stores its interior vertices in increasing real order;
consecutive points (endpoints included) always form a Farey edge.  The module
also carries the formal-sum operators that add a mediant or drop a leaf, the
operad composition, and the expansion ``c o nu`` together with its inverse on
star-sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .core import INF, ONE, ZERO, Vertex, as_vertex, bounds, det, mother, value


class PathError(ValueError):
    pass


class FareyPath:
    """A finite, mother-closed set of vertices, stored as the path it spans.

    Use :func:`path_from_interior` to validate arbitrary input.
    """

    __slots__ = ("interior", "_members", "_hash")

    def __init__(self, interior: Iterable[Vertex] = ()):
        self.interior: tuple[Vertex, ...] = tuple(interior)
        self._members = None
        self._hash = None

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self.interior)
        return self._members

    @property
    def points(self) -> tuple[Vertex, ...]:
        """``c_0 = ZERO, c_1, ..., c_m = INF``."""
        return (ZERO,) + self.interior + (INF,)

    @property
    def degree(self) -> int:
        """Number of edges ``m = #c + 1``."""
        return len(self.interior) + 1

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        p = self.points
        return list(zip(p[:-1], p[1:]))

    def __contains__(self, v) -> bool:
        return v in self.members

    def __len__(self):
        return len(self.interior)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.interior)

    def __eq__(self, other):
        return isinstance(other, FareyPath) and self.interior == other.interior

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.interior)
        return self._hash

    def __lt__(self, other):  # canonical ordering for deterministic output
        return (self.degree, self.interior) < (other.degree, other.interior)

    def __repr__(self):
        return "FareyPath({" + ", ".join(f"({v.x},{v.y})" for v in self.interior) + "})"

    def key(self) -> str:
        """Canonical encoding: the sorted interior as decimal pairs."""
        return ";".join(f"{v.x},{v.y}" for v in self.interior)

    def to_json(self) -> dict:
        return {"interior": [v.to_json() for v in self.interior]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FareyPath":
        return path_from_interior(Vertex.from_json(p) for p in data["interior"])

    def insert(self, i: int) -> "FareyPath":
        """Add the mediant of edge ``i`` (1-based, edge ``[c_{i-1}, c_i]``)."""
        p = self.points
        new = p[i - 1] + p[i]
        return FareyPath(self.interior[: i - 1] + (new,) + self.interior[i - 1 :])

    def remove(self, v: Vertex) -> "FareyPath":
        return FareyPath(w for w in self.interior if w != v)


EMPTY = FareyPath()


def _real_key(v: Vertex):
    return value(v)


def path_from_interior(vertices: Iterable) -> FareyPath:
    """Validate a set of vertices as a mother-closed subtree and sort it."""
    vs = [as_vertex(v) for v in vertices]
    if len(set(vs)) != len(vs):
        raise PathError("duplicate vertices")
    members = set(vs)
    for v in vs:
        if v.is_endpoint:
            raise PathError(f"endpoint {tuple(v)} cannot be an interior vertex")
        if v != ONE and mother(v) not in members:
            raise PathError(f"not mother-closed: {tuple(v)} present, mother {tuple(mother(v))} missing")
    path = FareyPath(sorted(vs, key=_real_key))
    pts = path.points
    for a, b in zip(pts[:-1], pts[1:]):
        if det(a, b) != 1:
            raise PathError(f"{tuple(a)}, {tuple(b)} is not a Farey edge")
    return path


# -- leaves, local minima and friez indices ---------------------------------

def maxima(c: FareyPath) -> list[Vertex]:
    """Leaves: points equal to the mediant of their two neighbours."""
    p = c.points
    return [p[i] for i in range(1, len(p) - 1) if p[i] == p[i - 1] + p[i + 1]]


def maxima_positions(c: FareyPath) -> list[int]:
    p = c.points
    return [i for i in range(1, len(p) - 1) if p[i] == p[i - 1] + p[i + 1]]


def phi_positions(c: FareyPath) -> list[int]:
    # a neighbour of v lies on one of its fins exactly when it is larger in size
    p = c.points
    return [
        i
        for i in range(1, len(p) - 1)
        if p[i - 1].size > p[i].size < p[i + 1].size
    ]


def phi_set(c: FareyPath) -> list[Vertex]:
    """Local minima: points with both offspring in ``c``."""
    p = c.points
    return [p[i] for i in phi_positions(c)]


def phi(c: FareyPath) -> FareyPath:
    return FareyPath(phi_set(c))


def minima(c: FareyPath) -> list[Vertex]:
    return [ZERO] + phi_set(c) + [INF]


@dataclass(frozen=True)
class FriezData:
    """Friez indices of a path.

    ``n_minus[i]``, ``n_plus[i]`` and ``f[i]`` are indexed by the position in
    :attr:`FareyPath.points`; the endpoint entries of ``n_minus``/``n_plus``
    are ``None``.
    """

    n_minus: tuple
    n_plus: tuple
    f: tuple


def friez(c: FareyPath) -> FriezData:
    p = c.points
    m = len(p) - 1
    n_minus: list = [None] * (m + 1)
    n_plus: list = [None] * (m + 1)
    f = [0] * (m + 1)
    for i in range(1, m):
        v = p[i]
        lo, up = bounds(v)
        n_minus[i] = _fin_index(p[i - 1], lo, v)
        n_plus[i] = _fin_index(p[i + 1], up, v)
        f[i] = 1 + n_minus[i] + n_plus[i]
    # endpoints: c_1 = INF + n*ZERO, c_{m-1} = ZERO + n*INF
    f[0] = _fin_index(p[1], INF, ZERO)
    f[m] = _fin_index(p[m - 1], ZERO, INF)
    return FriezData(tuple(n_minus), tuple(n_plus), tuple(f))


def _fin_index(w: Vertex, base: Vertex, v: Vertex) -> int:
    """The ``n >= 0`` with ``w = base + n*v``."""
    dx, dy = w.x - base.x, w.y - base.y
    n = dx // v.x if v.x else dy // v.y
    if n < 0 or (dx, dy) != (n * v.x, n * v.y):
        raise AssertionError(f"{tuple(w)} is not on the fin of {tuple(v)} from {tuple(base)}")
    return n


def is_star(c: FareyPath) -> bool:
    """Every interior point is a leaf, a local minimum, or the midpoint of its neighbours."""
    p = c.points
    for i in range(1, len(p) - 1):
        a, v, b = p[i - 1], p[i], p[i + 1]
        sx, sy = a.x + b.x, a.y + b.y
        if (v.x, v.y) == (sx, sy):
            continue
        if a.size > v.size < b.size:
            continue
        if (2 * v.x, 2 * v.y) == (sx, sy):
            continue
        return False
    return True


# -- formal sums and the creation/annihilation operators ---------------------

class FormalSum(dict):
    """Finitely supported integer combination of paths; zero terms are dropped."""

    @classmethod
    def of(cls, *paths: FareyPath) -> "FormalSum":
        s = cls()
        for c in paths:
            s.add(c, 1)
        return s

    def add(self, c, coeff: int) -> None:
        v = self.get(c, 0) + coeff
        if v:
            self[c] = v
        else:
            self.pop(c, None)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(self)
        for c, k in other.items():
            out.add(c, k)
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scaled(-1)

    def scaled(self, k: int) -> "FormalSum":
        return FormalSum({c: k * v for c, v in self.items()} if k else {})

    def to_json(self) -> list:
        return [{"path": c.to_json(), "coefficient": k} for c, k in sorted(self.items())]


def create(s: FormalSum) -> FormalSum:
    """Insert every mediant: ``d*[c] = sum_i [c + {c_i + c_{i-1}}]``."""
    out = FormalSum()
    for c, k in s.items():
        for i in range(1, c.degree + 1):
            out.add(c.insert(i), k)
    return out


def annihilate(s: FormalSum) -> FormalSum:
    """Remove every leaf: ``d[c] = sum_{leaves} [c - {leaf}]``."""
    out = FormalSum()
    for c, k in s.items():
        for v in maxima(c):
            out.add(c.remove(v), k)
    return out


def number(s: FormalSum) -> FormalSum:
    return annihilate(create(s)) - create(annihilate(s))


# -- operad -----------------------------------------------------------------

def transport(v: Vertex, lo: Vertex, up: Vertex) -> Vertex:
    """Image of ``v`` under the matrix with rows ``(lo, up)``."""
    return Vertex(v.x * lo.x + v.y * up.x, v.x * lo.y + v.y * up.y)


def operad_compose(c: FareyPath, blocks: Sequence[FareyPath]) -> FareyPath:
    """Replace edge ``i`` of ``c`` by block ``i`` transported onto that edge."""
    if len(blocks) != c.degree:
        raise PathError(f"need {c.degree} blocks, got {len(blocks)}")
    p = c.points
    out: list[Vertex] = []
    for i, b in enumerate(blocks):
        lo, up = p[i], p[i + 1]
        out.extend(transport(v, lo, up) for v in b.interior)
        if i + 1 < len(p) - 1:
            out.append(up)
    return FareyPath(out)


def nu(n: int) -> FareyPath:
    """The straight-line path with single leaf ``(1, n+1)`` or ``(|n|+1, 1)``."""
    if n >= 0:
        return FareyPath(Vertex(1, k) for k in range(1, n + 2))
    return FareyPath(Vertex(k, 1) for k in range(-n + 1, 0, -1))


def expand(c: FareyPath, lam: Sequence[int]) -> FareyPath:
    """``c o lam``: on edge ``[lo, up]`` put ``lo + k*up`` (k <= n+1) for ``n >= 0``
    or ``up + k*lo`` (k <= |n|+1) for ``n < 0``."""
    if len(lam) != c.degree:
        raise PathError(f"need {c.degree} entries, got {len(lam)}")
    p = c.points
    out: list[Vertex] = []
    for i, n in enumerate(lam):
        lo, up = p[i], p[i + 1]
        if n >= 0:
            out.extend(lo + up.scale(k) for k in range(1, n + 2))
        else:
            out.extend(up + lo.scale(k) for k in range(-n + 1, 0, -1))
        if i + 1 < len(p) - 1:
            out.append(up)
    return FareyPath(out)


def extract_lambda(c: FareyPath) -> tuple[FareyPath, tuple[int, ...]]:
    """Split a star-set as ``c = phi(c) o lam``."""
    if not is_star(c):
        raise PathError(f"{c!r} is not a star-set")
    p = c.points
    pos = [0] + phi_positions(c) + [len(p) - 1]
    lam = []
    for a, b in zip(pos[:-1], pos[1:]):
        count = b - a - 1
        if count < 1:
            raise PathError("consecutive local minima without a leaf between them")
        if count == 1:
            lam.append(0)
        elif p[b - 1].size > p[a + 1].size:
            lam.append(count - 1)
        else:
            lam.append(1 - count)
    base = FareyPath(p[i] for i in pos[1:-1])
    lam_t = tuple(lam)
    if expand(base, lam_t) != c:
        raise PathError(f"{c!r} does not decompose over its local minima")
    return base, lam_t


# -- enumeration ------------------------------------------------------------

def enumerate_paths(max_degree: int) -> dict[int, list[FareyPath]]:
    """All paths of degree ``<= max_degree``, level by level, canonically sorted."""
    levels = {1: [EMPTY]}
    for m in range(1, max_degree):
        nxt = set()
        for c in levels[m]:
            for i in range(1, c.degree + 1):
                nxt.add(c.insert(i))
        levels[m + 1] = sorted(nxt)
    return levels


def iter_paths_bfs(max_degree: int) -> Iterator[FareyPath]:
    seen = {EMPTY}
    queue = deque([EMPTY])
    while queue:
        c = queue.popleft()
        yield c
        if c.degree >= max_degree:
            continue
        for i in range(1, c.degree + 1):
            d = c.insert(i)
            if d not in seen:
                seen.add(d)
                queue.append(d)
