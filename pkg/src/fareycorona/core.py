"""Vertices of the Farey graph, SL2(N) words and Stern-Brocot navigation.

A vertex is a coprime lattice point ``(x, y)`` standing for the positive
rational ``y/x``.  The two endpoints ``ZERO = (1, 0)`` and ``INF = (0, 1)``
close the graph.  Every interior vertex ``v`` corresponds to a unique matrix
``g_v`` of SL2(N) whose rows are its lower and upper bounds ``(v-, v+)``, and
``v = v- + v+``.

All arithmetic is on Python integers, so coordinates may grow without bound.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Sequence


class Vertex(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # mediant, not tuple concatenation
        return Vertex(self.x + other[0], self.y + other[1])

    def scale(self, n: int) -> "Vertex":
        return Vertex(n * self.x, n * self.y)

    @property
    def is_endpoint(self) -> bool:
        return self.x == 0 or self.y == 0

    @property
    def size(self) -> int:
        """The l1 size ``x + y``; strictly grows along every tree edge."""
        return self.x + self.y

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    @classmethod
    def from_json(cls, pair: Sequence) -> "Vertex":
        return as_vertex((int(pair[0]), int(pair[1])))


ZERO = Vertex(1, 0)
INF = Vertex(0, 1)
ONE = Vertex(1, 1)


class EndpointPair(NamedTuple):
    """Mother and father of the root: both endpoints at once."""

    lower: Vertex
    upper: Vertex


ROOT_PARENTS = EndpointPair(ZERO, INF)


class _EndpointFather:
    def __repr__(self):
        return "ENDPOINT_FATHER"

    def __bool__(self):
        return False


#: returned by :func:`father_grandmother_index` when the father is an endpoint
ENDPOINT_FATHER = _EndpointFather()


def as_vertex(v) -> Vertex:
    """Validate a pair and return it as a :class:`Vertex`."""
    x, y = int(v[0]), int(v[1])
    if x < 0 or y < 0 or (x, y) == (0, 0):
        raise ValueError(f"not a Farey vertex: {(x, y)}")
    if gcd(x, y) != 1:
        raise ValueError(f"coordinates of {(x, y)} are not coprime")
    return Vertex(x, y)


def _interior(v) -> Vertex:
    v = as_vertex(v)
    if v.is_endpoint:
        raise ValueError(f"{tuple(v)} is an endpoint, an interior vertex is required")
    return v


def mediant(a, b) -> Vertex:
    return Vertex(a[0] + b[0], a[1] + b[1])


def det(a, b) -> int:
    """``x_a*y_b - y_a*x_b``; equals 1 exactly on Farey edges ``a < b``."""
    return a[0] * b[1] - a[1] * b[0]


def value(v) -> Fraction:
    """The rational ``y/x`` of an interior vertex."""
    return Fraction(v[1], v[0])


# -- SL2(N) words -----------------------------------------------------------

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
G_PLUS: Matrix = ((1, 1), (0, 1))
G_MINUS: Matrix = ((1, 0), (1, 1))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def act(v, g: Matrix) -> Vertex:
    """Right action of a matrix on a row vector: ``(x, y) g = x*row0 + y*row1``."""
    return Vertex(v[0] * g[0][0] + v[1] * g[1][0], v[0] * g[0][1] + v[1] * g[1][1])


def _check_exponents(exponents) -> tuple[int, ...]:
    exps = tuple(int(a) for a in exponents)
    if not exps:
        raise ValueError("a word needs at least the a0 block (possibly 0)")
    if exps[0] < 0 or any(a < 1 for a in exps[1:]):
        raise ValueError(f"malformed exponent sequence {exps}: need a0 >= 0, a_i >= 1")
    return exps


def _matrix_of(exps: tuple[int, ...]) -> Matrix:
    # g = g_delta^{a_l} ... g_-^{a_1} g_+^{a_0}; build from the right
    m = IDENTITY
    for i, a in enumerate(exps):
        gen = ((1, a), (0, 1)) if i % 2 == 0 else ((1, 0), (a, 1))
        m = matmul(gen, m)
    return m


class Sl2Word:
    """An element ``g_delta^{a_l} ... g_-^{a_1} g_+^{a_0}`` of the free monoid.

    ``exponents`` is ``(a_0, ..., a_l)`` with ``a_0 >= 0`` and the rest ``>= 1``.
    The matrix rows are the pair of Farey vertices ``(v-, v+)``.
    """

    __slots__ = ("exponents", "matrix")

    def __init__(self, exponents=(0,), matrix: Matrix | None = None):
        self.exponents = _check_exponents(exponents)
        self.matrix = _matrix_of(self.exponents) if matrix is None else matrix

    @classmethod
    def from_matrix(cls, g) -> "Sl2Word":
        """Decompose a matrix of SL2(N) by peeling generators off the right."""
        (a, b), (c, d) = g
        if min(a, b, c, d) < 0 or a * d - b * c != 1:
            raise ValueError(f"{g} is not in SL2(N)")
        g = ((a, b), (c, d))
        blocks = []  # (generator sign, count), rightmost first
        while (a, b, c, d) != (1, 0, 0, 1):
            if b >= a and d >= c:
                # g * g_+^{-k}: subtract k times column 0 from column 1
                k = min(b // a if a else d // c, d // c if c else b // a)
                b, d = b - k * a, d - k * c
                blocks.append((+1, k))
            else:
                k = min(a // b if b else c // d, c // d if d else a // b)
                a, c = a - k * b, c - k * d
                blocks.append((-1, k))
        exps: list[int] = []
        if not blocks or blocks[0][0] == -1:
            exps.append(0)
        for sign, k in blocks:
            parity = +1 if len(exps) % 2 == 0 else -1
            if sign == parity:
                exps.append(k)
            else:
                exps[-1] += k
        return cls(exps, g)

    @classmethod
    def generator(cls, sign: int) -> "Sl2Word":
        return cls((1,)) if sign > 0 else cls((0, 1))

    @property
    def lower(self) -> Vertex:
        return Vertex(*self.matrix[0])

    @property
    def upper(self) -> Vertex:
        return Vertex(*self.matrix[1])

    @property
    def ell(self) -> int:
        return len(self.exponents) - 1

    @property
    def sign(self) -> int:
        """``delta = (-1)^l``: the generator of the leftmost block."""
        return -1 if self.ell % 2 else 1

    @property
    def length(self) -> int:
        return sum(self.exponents)

    def letters(self) -> list[int]:
        """Generator signs in application order from the root (rightmost first)."""
        out = []
        for i, a in enumerate(self.exponents):
            out.extend([1 if i % 2 == 0 else -1] * a)
        return out

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "Sl2Word":
        m = IDENTITY
        for s in letters:
            m = matmul(G_PLUS if s > 0 else G_MINUS, m)
        return cls.from_matrix(m)

    def __mul__(self, other: "Sl2Word") -> "Sl2Word":
        return Sl2Word.from_matrix(matmul(self.matrix, other.matrix))

    def star(self) -> "Sl2Word":
        """Swap conjugation: ``g_+ <-> g_-``, multiplicative."""
        (xm, ym), (xp, yp) = self.matrix
        return Sl2Word.from_matrix(((yp, xp), (ym, xm)))

    def transpose(self) -> "Sl2Word":
        """Matrix transpose: ``g_+ <-> g_-``, order reversing."""
        (xm, ym), (xp, yp) = self.matrix
        return Sl2Word.from_matrix(((xm, xp), (ym, yp)))

    def vertex(self) -> Vertex:
        return vertex_of_word(self)

    def __eq__(self, other):
        return isinstance(other, Sl2Word) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Sl2Word({list(self.exponents)})"


def _exponents(x: int, y: int) -> tuple[int, ...]:
    # peel the rightmost blocks off (x, y) = (1, 1) g
    exps = []
    k = (y - 1) // x if y > x else 0
    y -= k * x
    exps.append(k)
    while x != y:
        if x > y:
            k = (x - 1) // y
            x -= k * y
        else:
            k = (y - 1) // x
            y -= k * x
        exps.append(k)
    return tuple(exps)


def word_of_vertex(v) -> Sl2Word:
    """The unique word ``g_v`` with ``(1, 1) g_v = v``."""
    v = _interior(v)
    return Sl2Word(_exponents(v.x, v.y))


def vertex_of_word(w: Sl2Word) -> Vertex:
    (xm, ym), (xp, yp) = w.matrix
    return Vertex(xm + xp, ym + yp)


@lru_cache(maxsize=1 << 18)
def _bounds(x: int, y: int) -> tuple[Vertex, Vertex]:
    m = _matrix_of(_exponents(x, y))
    return Vertex(*m[0]), Vertex(*m[1])


def bounds(v) -> tuple[Vertex, Vertex]:
    """Lower and upper bounds ``(v-, v+)``: the rows of ``g_v``."""
    v = _interior(v)
    return _bounds(v.x, v.y)


def lower(v) -> Vertex:
    return bounds(v)[0]


def upper(v) -> Vertex:
    return bounds(v)[1]


def sign(v) -> int:
    """Convexity ``delta(v)``: +1 when the last tree step was towards infinity."""
    v = _interior(v)
    return -1 if (len(_exponents(v.x, v.y)) - 1) % 2 else 1


def depth(v) -> int:
    v = _interior(v)
    return sum(_exponents(v.x, v.y))


def mother(v):
    """The tree parent; the root returns :data:`ROOT_PARENTS`."""
    v = _interior(v)
    if v == ONE:
        return ROOT_PARENTS
    lo, up = _bounds(v.x, v.y)
    return lo if sign(v) > 0 else up


def father(v):
    """The bound that is not the mother; may be an endpoint."""
    v = _interior(v)
    if v == ONE:
        return ROOT_PARENTS
    lo, up = _bounds(v.x, v.y)
    return up if sign(v) > 0 else lo


def children(v) -> tuple[Vertex, Vertex]:
    """``(v + v-, v + v+)``, the lower and upper offspring."""
    v = _interior(v)
    lo, up = bounds(v)
    return v + lo, v + up


def father_grandmother_index(v):
    """The ``m >= 1`` with ``F(v) = M^(1+m)(v)``.

    Returns :data:`ENDPOINT_FATHER` for the root and for every vertex whose
    father is an endpoint, where no such ``m`` exists.
    """
    v = _interior(v)
    f = father(v)
    if v == ONE or f.is_endpoint:
        return ENDPOINT_FATHER
    m, w = 0, mother(v)
    while w != f:
        w = mother(w)
        m += 1
        if isinstance(w, EndpointPair):
            raise AssertionError(f"father of {v} is not an ancestor")
    # reconstruction v = (1+m) F + t_{-delta}(F)
    lo_f, up_f = bounds(f)
    other = lo_f if sign(v) > 0 else up_f
    if f.scale(1 + m) + other != v:
        raise AssertionError(f"grandmother reconstruction fails at {v}")
    return m


# -- continued fractions ----------------------------------------------------

def continued_fraction(v) -> list[int]:
    """Exponents ``[a_0, ..., a_l]`` with ``y/x = [[a_0, ..., a_l]]``.

    The last partial quotient carries the ``+1`` of the bracket convention,
    so ``(1, 1)`` is ``[0]`` and ``(2, 3)`` is ``[1, 1]``.
    """
    v = _interior(v)
    # ordinary Euclid on y/x, then move the final quotient down by one
    num, den = v.y, v.x
    quotients = []
    while den:
        q, r = divmod(num, den)
        quotients.append(q)
        num, den = den, r
    quotients[-1] -= 1
    return quotients


def cf_value(seq: Sequence[int]) -> Fraction:
    """Evaluate ``[[a_0, ..., a_l]] = a_0 + 1/(a_1 + ... 1/(a_l + 1))``."""
    exps = _check_exponents(seq)
    acc = Fraction(exps[-1] + 1)
    for a in reversed(exps[:-1]):
        acc = a + 1 / acc
    return acc


def cf_to_vertex(seq: Sequence[int]) -> Vertex:
    q = cf_value(seq)
    return Vertex(q.denominator, q.numerator)


def cf_parent_formula_report(v) -> dict:
    """Compare the continued-fraction shortcut for mother and father with the tree.

    The shortcut reads: for ``a_l > 1``, ``M = [[a_0..a_l - 1]]`` and
    ``F = [[a_0..a_{l-1}]]``; for ``a_l = 1``, ``M = [[a_0..a_{l-1}]]`` and
    ``F = [[a_0..a_{l-2}]]`` (``l >= 2``), ``F = a_0`` for ``l = 1`` and
    ``F = INF`` for ``l = 0``.  Nothing is asserted; mismatches are reported.
    """
    v = _interior(v)
    a = continued_fraction(v)
    ell = len(a) - 1
    if v == ONE:
        return {"vertex": v, "cf": a, "applicable": False}
    if a[-1] > 1:
        m_f = cf_to_vertex(a[:-1] + [a[-1] - 1])
        f_f = cf_to_vertex(a[:-1]) if ell >= 1 else INF
    else:
        m_f = cf_to_vertex(a[:-1])
        if ell >= 2:
            f_f = cf_to_vertex(a[:-2])
        elif ell == 1:
            f_f = Vertex(1, a[0]) if a[0] > 0 else ZERO
        else:
            f_f = INF
    m_t, f_t = mother(v), father(v)
    return {
        "vertex": v,
        "cf": a,
        "applicable": True,
        "mother_formula": m_f,
        "father_formula": f_f,
        "mother": m_t,
        "father": f_t,
        "mother_agrees": m_f == m_t,
        "father_agrees": f_f == f_t,
    }


# -- orders -----------------------------------------------------------------

class Order(enum.Enum):
    REAL = "real"
    TREE = "tree"
    POINTWISE = "pointwise"
    FUNDAMENTAL = "fundamental"


class Cmp(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    OTHER = "incomparable-or-greater"


def _extended_bounds(v) -> tuple[Vertex, Vertex]:
    if v == ZERO:
        return ZERO, INF
    if v == INF:
        return ZERO, INF
    return bounds(v)


def is_ancestor(a, b) -> bool:
    """``a <| b``: ``a`` lies on the tree path from the root to ``b`` (reflexive)."""
    a, b = _interior(a), _interior(b)
    ea, eb = _exponents(a.x, a.y), _exponents(b.x, b.y)
    # compare run-length encodings of the move sequences
    if len(ea) > len(eb):
        return False
    last = len(ea) - 1
    for i in range(last):
        if ea[i] != eb[i]:
            return False
    return ea[last] <= eb[last]


def precedes(a, b, order: Order) -> bool:
    """Non-strict ``a <= b`` in the requested order."""
    order = Order(order)
    if order is Order.REAL:
        return a[1] * b[0] <= b[1] * a[0]
    if order is Order.POINTWISE:
        return a[0] <= b[0] and a[1] <= b[1]
    if order is Order.FUNDAMENTAL:
        (am, ap), (bm, bp) = _extended_bounds(a), _extended_bounds(b)
        return am.x <= bm.x and am.y <= bm.y and ap.x <= bp.x and ap.y <= bp.y
    return is_ancestor(a, b)


def compare(a, b, order: Order) -> Cmp:
    if tuple(a) == tuple(b):
        return Cmp.EQUAL
    return Cmp.LESS if precedes(a, b, order) else Cmp.OTHER


def meet(v1, v2) -> Vertex:
    """Deepest common tree ancestor of two interior vertices."""
    v1, v2 = _interior(v1), _interior(v2)
    e1, e2 = _exponents(v1.x, v1.y), _exponents(v2.x, v2.y)
    common = []
    for a, b in zip(e1, e2):
        common.append(min(a, b))
        if a != b:
            break
    return vertex_of_word(Sl2Word(common))


def fin(v, side: int | None, n: int) -> Vertex:
    """``v_side + n*v``; on the endpoints only the single fin exists."""
    if n < 1:
        raise ValueError("fin index starts at 1")
    v = as_vertex(v)
    if v == INF:
        if side not in (None, -1):
            raise ValueError("INF only has the negative fin (1, n)")
        return Vertex(1, n)
    if v == ZERO:
        if side not in (None, +1):
            raise ValueError("ZERO only has the positive fin (n, 1)")
        return Vertex(n, 1)
    if side not in (+1, -1):
        raise ValueError("side must be +1 or -1 for an interior vertex")
    lo, up = bounds(v)
    return (up if side > 0 else lo) + v.scale(n)


def involution_star(v) -> Vertex:
    v = _interior(v)
    return Vertex(v.y, v.x)


def involution_transpose(v) -> Vertex:
    lo, up = bounds(v)
    return Vertex(lo.size, up.size)
