"""Sub-level sets of monotone functionals on the Stern-Brocot tree.

``build_c_leq(norm, R)`` collects ``{v : |v| <= R}`` by walking the tree and
pruning below the first vertex that fails; children always dominate their
parent in the fundamental order, so a monotone functional never needs to look
further.  For linear norms ``alpha*x + beta*y`` the d.n.a. of the resulting
corona has a closed form, implemented in :func:`theorem111_lambda`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import INF, ONE, ZERO, Sl2Word, Vertex, as_vertex, bounds
from .corona import Corona
from .paths import FareyPath, PathError, phi_positions
from .zeckendorf import fib


class NormError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Norm:
    """A fundamentally monotone functional compared against a bound ``R``.

    ``measure`` and ``threshold`` return values on a common scale, so that
    ``|v| <= R`` is ``measure(v) <= threshold(R)``.  Vector norms also accept
    arbitrary lattice vectors, which is what the iterated norms need.
    """

    vector = True
    subadditive = False

    def measure(self, v: Vertex):
        raise NotImplementedError

    def threshold(self, R):
        return _q(R)

    def within(self, v: Vertex, R) -> bool:
        return self.measure(v) <= self.threshold(R)


@dataclass(frozen=True)
class Linear(Norm):
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)
    subadditive = True

    def __post_init__(self):
        object.__setattr__(self, "alpha", _q(self.alpha))
        object.__setattr__(self, "beta", _q(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise NormError("linear norms need alpha, beta > 0")

    def measure(self, v):
        return self.alpha * v[0] + self.beta * v[1]

    def value(self, v) -> Fraction:
        return self.measure(v)

    def transformed(self, g: Sl2Word) -> "Linear":
        """The norm ``w -> |w g|``: its weights are the norms of the rows of ``g``."""
        return Linear(self.measure(g.lower), self.measure(g.upper))

    def __str__(self):
        return f"linear({self.alpha},{self.beta})"


@dataclass(frozen=True)
class Power(Norm):
    """``x^p + y^p <= R^p``, compared without taking roots."""

    p: int = 2
    subadditive = True

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise NormError("p must be a positive integer")

    def measure(self, v):
        return v[0] ** self.p + v[1] ** self.p

    def threshold(self, R):
        return _q(R) ** self.p

    def __str__(self):
        return f"power({self.p})"


@dataclass(frozen=True)
class Max(Norm):
    subadditive = True

    def measure(self, v):
        return max(v[0], v[1])

    def __str__(self):
        return "max"


@dataclass(frozen=True)
class MatrixNorm(Norm):
    """``tr(g_v A^t)`` on the bounds matrix of ``v``; defined on vertices only."""

    a: tuple = ((1, 1), (1, 1))
    vector = False

    def __post_init__(self):
        a = tuple(tuple(_q(x) for x in row) for row in self.a)
        if any(x <= 0 for row in a for x in row):
            raise NormError("matrix entries must be positive")
        object.__setattr__(self, "a", a)

    def measure(self, v):
        lo, up = bounds(v)
        (a11, a12), (a21, a22) = self.a
        return lo.x * a11 + lo.y * a12 + up.x * a21 + up.y * a22

    def __str__(self):
        return f"matrix({self.a})"


@dataclass(frozen=True)
class Custom(Norm):
    """Any callable; the caller vouches for fundamental monotonicity."""

    fn: Callable = None
    vector: bool = True
    name: str = "custom"

    def measure(self, v):
        return self.fn(v)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class IteratedNorm(Norm):
    """``|v|_n = max(|a_{n+2} v+ + a_{n+1} v-|, |a_{n+1} v+ + a_{n+2} v-|)``."""

    base: Norm = Linear()
    n: int = 0
    vector = False

    def __post_init__(self):
        if not self.base.vector:
            raise NormError("iterated norms need a norm defined on lattice vectors")
        if self.n < 0:
            raise NormError("level must be >= 0")

    def measure(self, v):
        lo, up = bounds(v)
        p, q = fib(self.n + 2), fib(self.n + 1)
        w1 = (p * up.x + q * lo.x, p * up.y + q * lo.y)
        w2 = (q * up.x + p * lo.x, q * up.y + p * lo.y)
        return max(self.base.measure(w1), self.base.measure(w2))

    def threshold(self, R):
        return self.base.threshold(R)

    def __str__(self):
        return f"{self.base}_{self.n}"


def iterated_norm_value(norm: Norm, v, n: int):
    """``|v|_n`` on the norm's own scale (``x^p + y^p`` for power norms)."""
    return IteratedNorm(norm, n).measure(as_vertex(v))


# -- building sub-level sets -------------------------------------------------

def sublevel_vertices(norm: Norm, R, root: Vertex = ONE, max_size: int | None = None) -> list[Vertex]:
    """In-order list of ``{v under root : |v| <= R}``."""
    t = norm.threshold(R)
    out: list[Vertex] = []
    root = as_vertex(root)
    lo, up = bounds(root)
    # explicit stack of (vertex, lower, upper, expanded?) to survive deep trees
    stack = [(root, lo, up, False)]
    while stack:
        v, lo, up, expanded = stack.pop()
        if expanded:
            out.append(v)
            if max_size is not None and len(out) > max_size:
                raise NormError(f"sub-level set has more than {max_size} points")
            continue
        if norm.measure(v) > t:
            continue
        # in-order: lower child, v, upper child (children pushed in reverse)
        stack.append((v + up, v, up, False))
        stack.append((v, lo, up, True))
        stack.append((v + lo, lo, v, False))
    return out


def build_c_leq(norm: Norm, R, max_size: int | None = None) -> FareyPath:
    return FareyPath(sublevel_vertices(norm, R, max_size=max_size))


def build_corona(norm: Norm, R, max_size: int | None = None) -> Corona:
    return Corona(build_c_leq(norm, R, max_size))


def phi_iterate_check(norm: Norm, R, n: int, corona: Corona | None = None) -> bool:
    c = corona or build_corona(norm, R)
    lhs = c.tower[n] if n < len(c.tower) else FareyPath()
    return lhs == build_c_leq(IteratedNorm(norm, n), R)


def sandwich_check(norm: Norm, R, n: int, corona: Corona | None = None) -> bool:
    """``c(R / a_{n+2}) <= phi^n c(R) <= c(2R / a_{n+3})`` as sets."""
    if not norm.subadditive:
        raise NormError("the inclusions need a homogeneous, subadditive norm")
    R = _q(R)
    c = corona or build_corona(norm, R)
    mid = c.tower[n].members if n < len(c.tower) else frozenset()
    inner = set(sublevel_vertices(norm, R / fib(n + 2)))
    outer = set(sublevel_vertices(norm, 2 * R / fib(n + 3)))
    return inner <= mid <= outer


def nesting_chain(R, rounds: int = 2) -> list[tuple[str, bool]]:
    """Inclusions ``c^1_R <= c^2_R <= c^max_R <= c^1_2R <= ...``."""
    R = _q(R)
    chain = []
    for k in range(rounds + 1):
        S = R * (1 << k)
        chain += [(f"power(1)@{S}", Power(1), S), (f"power(2)@{S}", Power(2), S), (f"max@{S}", Max(), S)]
    sets = [set(sublevel_vertices(norm, S)) for _, norm, S in chain]
    return [
        (f"{chain[i][0]} <= {chain[i + 1][0]}", sets[i] <= sets[i + 1])
        for i in range(len(chain) - 1)
    ]


# -- closed-form d.n.a. for linear norms ------------------------------------

@dataclass(frozen=True)
class FinTerm:
    label: str  # "0+", "inf-", "(x,y)+" or "(x,y)-"
    edge: int  # 1-based edge of the level the layer lives on
    value: int  # signed
    neighbour_form: int  # magnitude from the neighbour expression
    k0: int


@dataclass(frozen=True)
class LayerFormula:
    values: tuple[int, ...]
    terms: tuple[FinTerm, ...]
    extracted: tuple[int, ...] | None = None

    @property
    def matches(self) -> bool:
        return self.extracted is None or self.values == self.extracted


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def fin_magnitude(R, n: int, c_norm, bound_norm, nb_norm) -> tuple[int, int]:
    """``(closed form, neighbour form)`` for the fin of length ``|lambda|`` at a point.

    ``c_norm`` is the norm of the point, ``bound_norm`` that of its tree bound on
    the side of the fin and ``nb_norm`` that of its neighbour on that side.
    """
    R = _q(R)
    a0, a1, a2 = fib(n), fib(n + 1), fib(n + 2)
    if a2 * c_norm + a1 * nb_norm > R:
        return 0, max(0, _floor((R - a1 * nb_norm - a0 * c_norm) / (a1 * c_norm)))
    closed = (
        _floor((R - a1 * bound_norm - a0 * c_norm) / (a1 * c_norm))
        - _floor((R - a2 * bound_norm - a1 * c_norm) / (a2 * c_norm))
        - 1
    )
    near = _floor((R - a1 * nb_norm - a0 * c_norm) / (a1 * c_norm))
    return closed, near


def _fin_k0(nb: Vertex, base: Vertex, v: Vertex) -> int:
    dx = nb.x - base.x
    return dx // v.x if v.x else (nb.y - base.y) // v.y


def theorem111_lambda(alpha, beta, R, n: int, corona: Corona | None = None, check: bool = True) -> LayerFormula:
    """Layer ``lambda^n`` of ``c_R^(alpha,beta)`` from the floor formulas.

    Fins hang off the endpoints and off the points of level ``n+1``; their
    signs are negative on the upper side of a point and positive on the lower
    side.  With ``check`` the layer is compared against extraction and the
    auxiliary identities (both magnitude forms agree, ``k0 >= 1``, ``k1 >= 3``)
    are asserted.
    """
    norm = Linear(alpha, beta)
    c = corona or build_corona(norm, R)
    if not 1 <= n <= c.height:
        raise NormError(f"layer {n} outside 1..{c.height}")
    level = c.tower[n]
    pts = level.points
    m = level.degree
    above = c.tower[n + 1].members if n + 1 < len(c.tower) else frozenset()
    values = [0] * (m + 1)
    terms = []

    def add(label, edge, sign, c_norm, b_norm, nb, nb_norm, base, v):
        closed, near = fin_magnitude(R, n, c_norm, b_norm, nb_norm)
        k0 = _fin_k0(nb, base, v)
        if check and closed:
            assert closed == near, f"{label}: closed form {closed} != neighbour form {near}"
            # on the empty level ZERO and INF are adjacent and k0 = 0 is possible
            if level.interior:
                assert k0 >= 1 and closed + k0 + 1 >= 3, f"{label}: k0={k0}"
        values[edge] += sign * closed
        terms.append(FinTerm(label, edge, sign * closed, near, k0))

    # the lowest edge carries the upper fin of ZERO, the highest the lower fin of INF
    add("0+", 1, -1, norm.alpha, norm.beta, pts[1], norm.measure(pts[1]), INF, ZERO)
    add("inf-", m, +1, norm.beta, norm.alpha, pts[m - 1], norm.measure(pts[m - 1]), ZERO, INF)
    for i in range(1, m):
        v = pts[i]
        if v not in above:
            continue
        lo, up = bounds(v)
        cv = norm.measure(v)
        tag = f"({v.x},{v.y})"
        add(tag + "+", i + 1, -1, cv, norm.measure(up), pts[i + 1], norm.measure(pts[i + 1]), up, v)
        add(tag + "-", i, +1, cv, norm.measure(lo), pts[i - 1], norm.measure(pts[i - 1]), lo, v)
    values_t = tuple(values[1:])
    extracted = None
    if check:
        from .corona import dna_encode

        layers = dna_encode(c).layers
        extracted = layers[c.height - n]
        if any(
            sum(1 for t in terms if t.edge == e and t.value) > 1 for e in range(1, m + 1)
        ):
            raise AssertionError("two fins on one edge")
    return LayerFormula(values_t, tuple(terms), extracted)


def corollary112_count(alpha, beta, R, n: int, corona: Corona | None = None) -> int:
    """Degree of ``phi^(n-1) c_R`` predicted from level ``n`` and the points of level ``n+1``."""
    norm = Linear(alpha, beta)
    R = _q(R)
    c = corona or build_corona(norm, R)
    if n < 1:
        raise NormError("n must be >= 1")
    if n > c.height:
        return 1  # level n-1 is already empty
    level = c.tower[n]
    pts = level.points
    m = level.degree
    above = c.tower[n + 1].members if n + 1 < len(c.tower) else frozenset()
    a0, a1 = fib(n), fib(n + 1)

    def term(v_norm, nb_norm):
        return max(0, _floor(R / (a1 * v_norm) - Fraction(nb_norm) / v_norm - Fraction(a0, a1)))

    total = 2 * m
    for i in range(1, m):
        if pts[i] in above:
            cv = norm.measure(pts[i])
            total += term(cv, norm.measure(pts[i + 1])) + term(cv, norm.measure(pts[i - 1]))
    total += term(norm.alpha, norm.measure(pts[1])) + term(norm.beta, norm.measure(pts[m - 1]))
    return total


def subcorona_transform(alpha, beta, R, g: Sl2Word) -> bool:
    """The part of ``c_R`` strictly between the rows of ``g`` is ``c_R`` for the
    transformed norm, moved by ``g``."""
    norm = Linear(alpha, beta)
    lo, up = g.lower, g.upper
    for w in (lo, up):
        if not w.is_endpoint and not norm.within(w, R):
            raise NormError(f"{tuple(w)} is outside c_R")
    # the open interval between the rows is exactly the subtree under (1,1)g
    sliced = sublevel_vertices(norm, R, root=g.vertex())
    moved = [
        Vertex(w.x * lo.x + w.y * up.x, w.x * lo.y + w.y * up.y)
        for w in sublevel_vertices(norm.transformed(g), R)
    ]
    return sliced == moved
