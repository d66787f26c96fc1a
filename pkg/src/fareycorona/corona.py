"""Coronas: paths whose whole tower of local minima consists of star-sets.

The tower ``c, phi(c), phi(phi(c)), ...`` is cached on each :class:`Corona`.
A corona is rebuilt from the empty path by its d.n.a., the list of signed fin
lengths extracted at every level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import Vertex, is_ancestor
from .paths import (
    EMPTY,
    FareyPath,
    FormalSum,
    PathError,
    expand,
    extract_lambda,
    is_star,
    maxima_positions,
    nu as _nu,
    path_from_interior,
    phi,
    phi_positions,
)


class CoronaError(ValueError):
    pass


def tower(c: FareyPath) -> list[FareyPath] | None:
    """``[c, phi c, ..., empty]`` if every member is a star-set, else None."""
    out = [c]
    while out[-1].interior:
        if not is_star(out[-1]):
            return None
        out.append(phi(out[-1]))
    return out


def is_corona(c: FareyPath) -> bool:
    return tower(c) is not None


class Corona:
    """A validated corona with its cached tower."""

    __slots__ = ("path", "tower")

    def __init__(self, c: FareyPath | Iterable):
        if not isinstance(c, FareyPath):
            c = path_from_interior(c)
        t = tower(c)
        if t is None:
            raise CoronaError(f"{c!r} is not a corona")
        self.path = c
        self.tower = t

    @property
    def height(self) -> int:
        return len(self.tower) - 1

    @property
    def degree(self) -> int:
        return self.path.degree

    @property
    def interior(self):
        return self.path.interior

    def phi(self) -> "Corona":
        return _from_tower(self.tower[1:]) if self.height else self

    def __eq__(self, other):
        return isinstance(other, Corona) and self.path == other.path

    def __hash__(self):
        return hash(self.path)

    def __lt__(self, other):
        return self.path < other.path

    def __repr__(self):
        return "Corona" + repr(self.path)[len("FareyPath"):]


def _from_tower(t: list[FareyPath]) -> Corona:
    c = Corona.__new__(Corona)
    c.path = t[0]
    c.tower = t
    return c


def as_corona(c) -> Corona:
    return c if isinstance(c, Corona) else Corona(c)


def height(c) -> int:
    return as_corona(c).height


# -- d.n.a. -----------------------------------------------------------------

@dataclass(frozen=True)
class Dna:
    """Layers ``lambda^ht, ..., lambda^1``, top of the tower first."""

    layers: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    @property
    def height(self) -> int:
        return len(self.layers)

    def lengths(self) -> list[int]:
        """``l_n`` for ``n = ht, ..., 1`` (the degree of the level each layer lives on)."""
        return [len(layer) for layer in self.layers]

    def degree(self) -> int:
        """Degree of the decoded corona, from the lengths alone."""
        m = 1
        for layer in self.layers:
            m = 2 * m + sum(abs(n) for n in layer)
        return m

    def to_json(self) -> dict:
        return {"layers": [list(layer) for layer in self.layers]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Dna":
        return cls(tuple(tuple(int(n) for n in layer) for layer in data["layers"]))


def dna_encode(c) -> Dna:
    c = as_corona(c)
    layers = []
    for upper, lower in zip(c.tower[1:], c.tower[:-1]):
        base, lam = extract_lambda(lower)
        assert base == upper
        layers.append(lam)
    return Dna(tuple(reversed(layers)))


def dna_decode(d: Dna | Sequence) -> Corona:
    if not isinstance(d, Dna):
        d = Dna(tuple(tuple(layer) for layer in d))
    t = [EMPTY]
    for layer in d.layers:
        if len(layer) != t[-1].degree:
            raise CoronaError(
                f"layer of length {len(layer)} does not fit a level of degree {t[-1].degree}"
            )
        t.append(expand(t[-1], layer))
    return _from_tower(t[::-1])


def size_law(d: Dna) -> bool:
    """Layer lengths follow ``l_n = 2 l_{n+1} + |lambda^{n+1}|`` with ``l_ht = 1``."""
    expected = 1
    for layer in d.layers:
        if len(layer) != expected:
            return False
        expected = 2 * expected + sum(abs(n) for n in layer)
    return True


def nu(n: int) -> Corona:
    return Corona(_nu(n))


def zero_dna_corona(n: int) -> Corona:
    """``n`` rounds of full mediant insertion starting from the empty path."""
    if n < 0:
        raise CoronaError("n must be >= 0")
    return dna_decode(Dna(tuple((0,) * (1 << k) for k in range(n))))


# -- closed points, open edges and the corona operators ---------------------

def closed_points(c) -> list[Vertex]:
    """Leaves whose removal leaves a corona."""
    p = as_corona(c).path
    return [v for v in p.interior if _is_leaf(p, v) and is_corona(p.remove(v))]


def _is_leaf(p: FareyPath, v: Vertex) -> bool:
    i = p.interior.index(v) + 1
    pts = p.points
    return pts[i] == pts[i - 1] + pts[i + 1]


def open_edges(c) -> list[int]:
    """1-based indices ``i`` of edges ``[c_{i-1}, c_i]`` whose mediant keeps a corona."""
    p = as_corona(c).path
    return [i for i in range(1, p.degree + 1) if is_corona(p.insert(i))]


def h0(c) -> int:
    c = as_corona(c)
    return 1 + len(c.tower[1].interior if c.height else ()) - len(closed_points(c))


def h1(c) -> int:
    c = as_corona(c)
    return 2 + 2 * len(c.tower[1].interior if c.height else ()) - len(open_edges(c))


def eigenvalue(c) -> int:
    """``#Op(c) - #cl(c)``."""
    return len(open_edges(c)) - len(closed_points(c))


def corona_d(s: FormalSum) -> FormalSum:
    out = FormalSum()
    for c, k in s.items():
        for v in closed_points(c):
            out.add(c.remove(v), k)
    return out


def corona_dstar(s: FormalSum) -> FormalSum:
    out = FormalSum()
    for c, k in s.items():
        for i in open_edges(c):
            out.add(c.insert(i), k)
    return out


def corona_number(s: FormalSum) -> FormalSum:
    return corona_d(corona_dstar(s)) - corona_dstar(corona_d(s))


# -- structural cross-checks (reported, never used as definitions) ----------

def _anc(a: Vertex, b: Vertex) -> bool:
    """Strict tree order with the endpoints below every interior vertex."""
    if a == b:
        return False
    if a.is_endpoint:
        return not b.is_endpoint
    if b.is_endpoint:
        return False
    return is_ancestor(a, b)


def neighbour_rule_open_leaves(c) -> list[Vertex]:
    """Leaves declared not closed by the neighbour criterion, read literally."""
    p = as_corona(c).path
    pts = p.points
    mins = set(phi_positions(p)) | {0, len(pts) - 1}
    out = []
    for j in maxima_positions(p):
        if j - 1 not in mins or j + 1 not in mins:
            continue
        bad = False
        if j - 2 >= 0:
            a, b, d = pts[j + 1], pts[j - 1], pts[j - 2]
            if _anc(a, b) and _anc(b, d) and (2 * b.x, 2 * b.y) != (a.x + d.x, a.y + d.y):
                bad = True
        if j + 2 < len(pts):
            a, b, d = pts[j - 1], pts[j + 1], pts[j + 2]
            if _anc(a, b) and _anc(b, d) and (2 * b.x, 2 * b.y) != (a.x + d.x, a.y + d.y):
                bad = True
        if bad:
            out.append(pts[j])
    return out


def fin_rule_open_edges(c) -> list[int]:
    """Open edges predicted from the fin between consecutive local minima.

    In a gap holding a single mediant both edges are open.  Otherwise the edge
    between the deepest point and the minimum owning the fin is open, the edge
    at the far minimum is open iff the gap is open one level up, and the
    remaining edges are not.
    """
    c = as_corona(c)
    if not c.height:
        return [1]
    p = c.path
    pts = p.points
    up = c.phi()
    up_open = set(open_edges(up))
    pos = [0] + phi_positions(p) + [len(pts) - 1]
    out = []
    for gap, (a, b) in enumerate(zip(pos[:-1], pos[1:]), start=1):
        if b - a == 2:
            out += [a + 1, b]  # a lone mediant grows a fin on either side
            continue
        # the fin belongs to whichever minimum the deepest point touches
        deep_low = pts[a + 1].size > pts[b - 1].size
        near, far = (a + 1, b) if deep_low else (b, a + 1)
        out.append(near)
        if gap in up_open:
            out.append(far)
    return sorted(set(out))


def structure_report(c) -> dict:
    c = as_corona(c)
    cl = set(closed_points(c))
    leaves = {c.path.points[j] for j in maxima_positions(c.path)}
    rule_cl = leaves - set(neighbour_rule_open_leaves(c))
    op = open_edges(c)
    rule_op = fin_rule_open_edges(c)
    return {
        "closed": sorted(cl),
        "closed_by_neighbour_rule": sorted(rule_cl),
        "closed_agree": cl == rule_cl,
        "open": op,
        "open_by_fin_rule": rule_op,
        "open_agree": op == rule_op,
    }


# -- enumeration ------------------------------------------------------------

@dataclass
class CoronaLevels:
    """Coronas by degree, with the single-insertion edges between levels."""

    levels: dict[int, list[FareyPath]]
    edges: dict[int, list[tuple[int, int]]]  # level m -> (index in m, index in m+1)

    def all(self) -> Iterable[FareyPath]:
        for m in sorted(self.levels):
            yield from self.levels[m]


def enumerate_coronas(max_m: int, with_edges: bool = True) -> CoronaLevels:
    if max_m < 1:
        raise CoronaError("max_m must be >= 1")
    levels = {1: [EMPTY]}
    edges: dict[int, list[tuple[int, int]]] = {}
    for m in range(1, max_m):
        children: dict[FareyPath, list[int]] = {}
        for k, c in enumerate(levels[m]):
            for i in open_edges_path(c):
                children.setdefault(c.insert(i), []).append(k)
        nxt = sorted(children)
        levels[m + 1] = nxt
        if with_edges:
            index = {c: j for j, c in enumerate(nxt)}
            edges[m] = sorted((k, index[c]) for c, ks in children.items() for k in ks)
    return CoronaLevels(levels, edges)


def open_edges_path(p: FareyPath) -> list[int]:
    return [i for i in range(1, p.degree + 1) if is_corona(p.insert(i))]
