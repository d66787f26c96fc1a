"""Verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult`; the CLI's ``verify`` subcommand and
the acceptance tests both run these.  Defaults are the full acceptance ranges;
the keyword arguments shrink them for quick runs.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd
from typing import Callable

from . import bulk
from .core import (
    Order,
    Sl2Word,
    Vertex,
    continued_fraction,
    cf_to_vertex,
    cf_value,
    precedes,
    vertex_of_word,
    word_of_vertex,
)
from .corona import (
    closed_points,
    dna_decode,
    dna_encode,
    corona_number,
    enumerate_coronas,
    h0,
    h1,
    size_law,
    Corona,
)
from .equidistribution import (
    concat_gap,
    delta_p,
    local_spacing_check,
    random_partial_path,
    refine_bound_check,
    s_n,
    s_terms,
    totient_identity_table,
    trend_table,
)
from .norms import Linear, Max, Power, build_c_leq, subcorona_transform
from .paths import FormalSum, enumerate_paths, maxima, number
from .zeckendorf import (
    bin_add,
    bin_decode,
    bin_encode,
    bin_mul,
    is_canonical_zeck,
    star_pattern_report,
    zeck_add,
    zeck_decode,
    zeck_encode,
    zeck_mul,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self, timings: bool = True) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {len(self.failures)} failures" if self.failures else ""
        clock = f" ({self.seconds:.1f}s)" if timings else ""
        return f"[{status}] {self.name}: {self.checked} checks{extra}{clock}"

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [_jsonable(f) for f in self.failures[:50]],
            "failure_count": len(self.failures),
            "details": _jsonable(self.details),
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if abs(x) < 1 << 53 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _run(name: str, fn: Callable[[], tuple[int, list, dict]]) -> SuiteResult:
    t = time.perf_counter()
    checked, failures, details = fn()
    return SuiteResult(name, checked > 0 and not failures, checked, failures, details, time.perf_counter() - t)


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


LINEAR_GRID = [(1, 1), (1, 2), (2, 3), (1, Fraction(5, 2))]
SCALE_NORMS = [Linear(1, 1), Linear(1, 2), Linear(2, 3), Power(2), Max()]


# 1 -------------------------------------------------------------------------

def suite_sn(n_max: int = 3, **_) -> SuiteResult:
    expected = {1: Fraction(0), 2: Fraction(2, 144), 3: Fraction(668, 14400)}

    def body():
        vals = {n: s_n(n) for n in range(1, n_max + 1)}
        fails = [(n, vals[n], expected[n]) for n in vals if n in expected and vals[n] != expected[n]]
        return len(vals), fails, {"values": vals}

    return _run("sn-values", body)


# 2 -------------------------------------------------------------------------

def suite_sn_monotone(n_max: int = 12, **_) -> SuiteResult:
    def body():
        vals = [s_n(n) for n in range(1, n_max + 1)]
        fails = [(n, vals[n - 1], vals[n]) for n in range(1, n_max) if not vals[n - 1] < vals[n]]
        # the S_n terms reappear at the even places of S_{n+1}
        embed = []
        for n in range(1, min(n_max, 10) + 1):
            small, big = s_terms(n), s_terms(n + 1)
            if big[1::2] != small:
                embed.append(n)
        fails += [("embedding", n) for n in embed]
        return n_max - 1 + min(n_max, 10), fails, {"values": vals}

    return _run("sn-monotone", body)


# 3 -------------------------------------------------------------------------

def suite_totient(r_max: int = 5000, **_) -> SuiteResult:
    def body():
        rows = totient_identity_table(r_max)
        fails = [r for r in rows if not r[3]]
        # a few R also against an actual build
        spot = list(range(1, min(r_max, 200) + 1, 13))
        for R in spot:
            if rows[R - 1][1] != 1 + len(build_c_leq(Linear(1, 1), R)):
                fails.append(("build", R))
        return len(rows) + len(spot), fails, {"last": rows[-1]}

    return _run("totient", body)


# 4 -------------------------------------------------------------------------

def _corona_unit(args):
    norm, r_max = args
    return bulk.corona_grid(norm, range(1, r_max + 1))


def suite_thm84(r_max: int = 500, jobs: int = 1, **_) -> SuiteResult:
    def body():
        res = _map(_corona_unit, [(n, r_max) for n in SCALE_NORMS], jobs)
        fails = [(r.label, R) for r in res for R in r.failures]
        return sum(r.checked for r in res), fails, {r.label: r.ok for r in res}

    return _run("thm84-corona", body)


# 5 -------------------------------------------------------------------------

def _iterate_unit(args):
    norm, r_max, n_max = args
    return bulk.phi_iterate_grid(norm, range(1, r_max + 1), n_max)


def suite_iterate(r_max: int = 300, n_max: int = 5, jobs: int = 1, **_) -> SuiteResult:
    def body():
        res = _map(_iterate_unit, [(n, r_max, n_max) for n in SCALE_NORMS[:3]], jobs)
        fails = [(r.label,) + f for r in res for f in r.failures]
        return sum(r.checked for r in res), fails, {r.label: r.ok for r in res}

    return _run("phi-iterate", body)


# 6, 7 ---------------------------------------------------------------------

def _thm111_unit(args):
    ab, r_max = args
    return bulk.theorem111_grid(*ab, range(1, r_max + 1))


_THM111_CACHE: dict = {}


def _thm111_results(r_max: int, jobs: int, grid):
    key = (r_max, tuple(grid))
    if key not in _THM111_CACHE:
        _THM111_CACHE[key] = _map(_thm111_unit, [(ab, r_max) for ab in grid], jobs)
    return _THM111_CACHE[key]


def _anchor() -> tuple:
    from .norms import theorem111_lambda

    return theorem111_lambda(1, 1, 4, 1).values


def suite_thm111(r_max: int = 1000, jobs: int = 1, grid=None, **_) -> SuiteResult:
    grid = grid or LINEAR_GRID

    def body():
        res = _thm111_results(r_max, jobs, grid)
        fails = [(lay.label,) + tuple(f) for lay, _ in res for f in lay.failures]
        anchor = _anchor()
        if anchor != (-1, 1):
            fails.append(("anchor R=4", anchor))
        return sum(lay.checked for lay, _ in res) + 1, fails, {"anchor": anchor}

    return _run("thm111-layers", body)


def suite_cor112(r_max: int = 1000, jobs: int = 1, grid=None, **_) -> SuiteResult:
    grid = grid or LINEAR_GRID

    def body():
        res = _thm111_results(r_max, jobs, grid)
        fails = [(cnt.label,) + tuple(f) for _, cnt in res for f in cnt.failures]
        return sum(cnt.checked for _, cnt in res), fails, {}

    return _run("cor112-count", body)


# 8 -------------------------------------------------------------------------

def _sandwich_unit(args):
    norm, r_max, n_max = args
    return bulk.sandwich_grid(norm, range(1, r_max + 1), n_max)


def suite_sandwich(r_max: int = 500, n_max: int = 6, jobs: int = 1, **_) -> SuiteResult:
    def body():
        res = _map(_sandwich_unit, [(n, r_max, n_max) for n in SCALE_NORMS], jobs)
        fails = [(r.label,) + f for r in res for f in r.failures]
        return sum(r.checked for r in res), fails, {r.label: r.ok for r in res}

    return _run("sandwich", body)


# 9 -------------------------------------------------------------------------

def random_word(rng: random.Random, max_len: int = 8) -> Sl2Word:
    return Sl2Word.from_letters([rng.choice((1, -1)) for _ in range(rng.randint(0, max_len))])


def suite_transport(words: int = 200, r_max: int = 500, seed: int = 0, grid=None, **_) -> SuiteResult:
    grid = grid or LINEAR_GRID

    def body():
        rng = random.Random(seed)
        fails, cases = [], []
        for k in range(words):
            g = random_word(rng)
            ab = grid[k % len(grid)]
            norm = Linear(*ab)
            need = max((norm.measure(w) for w in (g.lower, g.upper) if not w.is_endpoint), default=0)
            lo_R = max(1, ceil(need))
            if lo_R > r_max:
                continue
            R = rng.randint(lo_R, r_max)
            cases.append((g.exponents, ab, R))
            if not subcorona_transform(*ab, R, g):
                fails.append((g.exponents, str(norm), R))
        return len(cases), fails, {"cases": len(cases)}

    return _run("transport", body)


# 10 ------------------------------------------------------------------------

def suite_dna(max_m: int = 12, eigen_m: int = 10, path_m: int = 6, **_) -> SuiteResult:
    """Round trip and size law, then the number operators on coronas and on paths.

    For coronas the diagonal coefficient of ``N[c]`` is checked against
    ``#Op - #cl = 1 + #phi + h0 - h1`` and its range; any off-diagonal term is a
    failure (tagged ``offdiag``), since then ``c`` is not an eigenvector.
    """

    def body():
        fails = []
        checked = 0
        offdiag: dict = {}
        levels = enumerate_coronas(max_m, with_edges=False).levels
        for m, cs in levels.items():
            for p in cs:
                c = Corona(p)
                d = dna_encode(c)
                checked += 1
                if dna_decode(d) != c or not size_law(d) or d.degree() != c.degree:
                    fails.append(("dna", p.key()))
                if m > 1 and not closed_points(c):
                    fails.append(("no-closed-point", p.key()))
                if m > eigen_m:
                    continue
                checked += 1
                nphi = len(c.tower[1].interior) if c.height else 0
                a, b = h0(c), h1(c)
                e = 1 + nphi + a - b
                ok = 1 <= e <= 1 + 2 * nphi
                # the empty path has h0 = h1 = 1 and no maxima
                if m > 1 and not (0 <= a <= nphi and 0 <= b <= nphi):
                    ok = False
                if m > 1 and a == b and e != len(maxima(p)):
                    ok = False
                image = corona_number(FormalSum.of(p))
                if image.get(p, 0) != e:
                    ok = False
                if not ok:
                    fails.append(("diagonal", p.key()))
                if any(q != p for q in image):
                    offdiag[m] = offdiag.get(m, 0) + 1
                    fails.append(("offdiag", p.key()))
        paths = enumerate_paths(path_m)
        for m, ps in paths.items():
            for p in ps:
                checked += 1
                e = m - len(maxima(p))
                if number(FormalSum.of(p)) != FormalSum({p: e} if e else {}):
                    fails.append(("number", p.key()))
        counts = {m: len(v) for m, v in levels.items()}
        return checked, fails, {"coronas_per_degree": counts, "offdiagonal_per_degree": offdiag}

    return _run("dna", body)


# 11 ------------------------------------------------------------------------

def suite_zeck(limit: int = 2000, random_pairs: int = 10_000, star_max: int = 20, seed: int = 0, **_) -> SuiteResult:
    def body():
        fails = []
        checked = 0
        z = [None] + [zeck_encode(i) for i in range(1, limit + 1)]
        bz = [None] + [bin_encode(i) for i in range(1, limit + 1)]
        # both operations depend only on the multiset of input exponents,
        # so a <= b covers every ordered pair
        for a in range(1, limit + 1):
            za, ba = z[a], bz[a]
            for b in range(a, limit + 1):
                s = zeck_add(za, z[b])
                if zeck_decode(s) != a + b or not is_canonical_zeck(s):
                    fails.append(("zadd", a, b))
                if zeck_decode(zeck_mul(za, z[b])) != a * b:
                    fails.append(("zmul", a, b))
                if bin_decode(bin_add(ba, bz[b])) != a + b or bin_decode(bin_mul(ba, bz[b])) != a * b:
                    fails.append(("bin", a, b))
                checked += 4
        rng = random.Random(seed)
        for _ in range(random_pairs):
            a, b = rng.getrandbits(64) or 1, rng.getrandbits(64) or 1
            za, zb = zeck_encode(a), zeck_encode(b)
            s, p = zeck_add(za, zb), zeck_mul(za, zb)
            if s != zeck_encode(a + b) or p != zeck_encode(a * b) or not is_canonical_zeck(s):
                fails.append(("zrand", a, b))
            if bin_add(bin_encode(a), bin_encode(b)) != bin_encode(a + b):
                fails.append(("brand", a, b))
            if bin_mul(bin_encode(a), bin_encode(b)) != bin_encode(a * b):
                fails.append(("brand*", a, b))
            checked += 5
        for n in range(1, 10**5 + 1, 7):
            if zeck_decode(zeck_encode(n)) != n or bin_decode(bin_encode(n)) != n:
                fails.append(("roundtrip", n))
        # the product pattern is reported, never asserted
        tally: dict = {}
        reports = 0
        for n in range(1, star_max + 1):
            for m in range(n, star_max + 1):
                r = star_pattern_report(n, m)
                reports += 1
                for conv in r["matching"]:
                    tally[f"offset={conv[0]},tail={conv[1]}"] = tally.get(f"offset={conv[0]},tail={conv[1]}", 0) + 1
        return checked, fails, {"star_reports": reports, "star_matches": tally}

    return _run("zeck", body)


# 12 ------------------------------------------------------------------------

def suite_equidist(samples: int = 1000, seed: int = 0, **_) -> SuiteResult:
    def body():
        rng = random.Random(seed)
        fails = []
        tight = 0
        for k in range(samples):
            c = random_partial_path(rng)
            if not refine_bound_check(c):
                fails.append(("refine", k))
        done = 0
        while done < samples:
            c = random_partial_path(rng, max_points=20)
            if c.degree < 2:
                continue
            cuts = rng.sample(range(1, c.degree), rng.randint(1, min(4, c.degree - 1)))
            lhs, bound = concat_gap(c.split(cuts))
            done += 1
            tight += lhs == bound
            if lhs > bound:
                fails.append(("concat", done))
        return 2 * samples, fails, {"concat_equalities": tight}

    return _run("equidist", body)


# 13 ------------------------------------------------------------------------

def suite_trends(r_lo: int = 100, r_hi: int = 2000, step: int = 100, spacing_lo: int = 10, spacing_hi: int = 200, **_) -> SuiteResult:
    def body():
        fails = []
        Rs = list(range(r_lo, r_hi + 1, step))
        rows = trend_table(Rs)
        again = trend_table(Rs)
        if [(r["delta1"], r["delta2"]) for r in rows] != [(r["delta1"], r["delta2"]) for r in again]:
            fails.append("nondeterministic")
        for R in Rs[:2]:
            c = build_c_leq(Linear(1, 1), R)
            row = rows[Rs.index(R)]
            if (delta_p(c, 1), delta_p(c, 2)) != (row["delta1"], row["delta2"]):
                fails.append(("direct-sum", R))
        literal = 0
        for R in range(spacing_lo, spacing_hi + 1):
            r = local_spacing_check(R)
            if not r["shifted"]["ok"]:
                fails.append(("spacing", R))
            literal += r["literal"]["ok"]
        n_sp = spacing_hi - spacing_lo + 1
        return len(Rs) + 2 + n_sp, fails, {"rows": rows, "literal_reading_ok": literal, "spacing_cases": n_sp}

    return _run("trends", body)


# 14 ------------------------------------------------------------------------

def suite_core(max_sum: int = 200, order_sum: int = 60, pairs: int = 10_000, seed: int = 0, **_) -> SuiteResult:
    def body():
        fails = []
        checked = 0
        for s in range(2, max_sum + 1):
            for x in range(1, s):
                y = s - x
                if gcd(x, y) != 1:
                    continue
                v = Vertex(x, y)
                w = word_of_vertex(v)
                cf = continued_fraction(v)
                checked += 1
                if (
                    vertex_of_word(w) != v
                    or list(w.exponents) != cf
                    or cf_value(cf) != Fraction(y, x)
                    or cf_to_vertex(cf) != v
                    or Sl2Word.from_matrix(w.matrix) != w
                ):
                    fails.append(("roundtrip", x, y))
        vs = [Vertex(x, s - x) for s in range(2, order_sum + 1) for x in range(1, s) if gcd(x, s - x) == 1]
        strict = {"fundamental-not-tree": 0, "pointwise-not-fundamental": 0}
        for a in vs:
            for b in vs:
                t = precedes(a, b, Order.TREE)
                f = precedes(a, b, Order.FUNDAMENTAL)
                p = precedes(a, b, Order.POINTWISE)
                checked += 1
                if (t and not f) or (f and not p):
                    fails.append(("order", tuple(a), tuple(b)))
                strict["fundamental-not-tree"] += f and not t
                strict["pointwise-not-fundamental"] += p and not f
        rng = random.Random(seed)
        for _ in range(pairs):
            g1, g2 = random_word(rng, 12), random_word(rng, 12)
            checked += 1
            if (
                (g1 * g2).star() != g1.star() * g2.star()
                or (g1 * g2).transpose() != g2.transpose() * g1.transpose()
                or g1.star().star() != g1
                or g1.transpose().transpose() != g1
                or g1.star().transpose() != g1.transpose().star()
            ):
                fails.append(("involution", g1.exponents, g2.exponents))
        if not all(strict.values()):
            fails.append(("implications not strict", strict))
        return checked, fails, {"strictness": strict}

    return _run("core", body)


SUITES = {
    "sn": suite_sn,
    "sn-monotone": suite_sn_monotone,
    "totient": suite_totient,
    "thm84": suite_thm84,
    "iterate": suite_iterate,
    "thm111": suite_thm111,
    "cor112": suite_cor112,
    "sandwich": suite_sandwich,
    "transport": suite_transport,
    "dna": suite_dna,
    "zeck": suite_zeck,
    "equidist": suite_equidist,
    "trends": suite_trends,
    "core": suite_core,
}

# acceptance criterion number -> suite name
CRITERIA = {
    1: "sn",
    2: "sn-monotone",
    3: "totient",
    4: "thm84",
    5: "iterate",
    6: "thm111",
    7: "cor112",
    8: "sandwich",
    9: "transport",
    10: "dna",
    11: "zeck",
    12: "equidist",
    13: "trends",
    14: "core",
}

# reduced ranges for smoke runs (``verify --quick``)
QUICK = {
    "sn-monotone": {"n_max": 6},
    "totient": {"r_max": 300},
    "thm84": {"r_max": 40},
    "iterate": {"r_max": 40},
    "thm111": {"r_max": 40},
    "cor112": {"r_max": 40},
    "sandwich": {"r_max": 40},
    "transport": {"words": 20, "r_max": 60},
    "dna": {"max_m": 8, "eigen_m": 6, "path_m": 5},
    "zeck": {"limit": 60, "random_pairs": 100, "star_max": 6},
    "equidist": {"samples": 50},
    "trends": {"r_lo": 20, "r_hi": 60, "step": 20, "spacing_hi": 20},
    "core": {"max_sum": 30, "order_sum": 15, "pairs": 100},
}
