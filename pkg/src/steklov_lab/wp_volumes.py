"""Exact Weil-Petersson volume polynomials and checks of their growth lemmas.

``V_{g,n}(x_1, ..., x_n)`` is stored as a symmetric polynomial in the squares
``x_i**2``.  Because the volume is homogeneous of degree ``6g - 6 + 2n`` when
``pi`` is given weight one, the coefficient of ``prod x_i**(2 d_i)`` is always a
rational number times ``pi**(2 (3g - 3 + n - sum(d)))``.  Only the rational part
is stored; the power of ``pi`` is implied by the multi-degree, so no float
touches the table until evaluation.

Polynomials with boundary are produced by Mirzakhani's recursion written on
coefficients, using the moments

    F_{2k+1}(t) = int_0^oo x^(2k+1) H(x, t) dx
               = (2k+1)! sum_{i=0}^{k+1} zeta(2i) (2^(2i+1) - 4) t^(2k+2-2i) / (2k+2-2i)!

of the kernel ``H(x, t) = 1/(1 + e^((x+t)/2)) + 1/(1 + e^((x-t)/2))``.
Closed volumes come from the dilaton relation
``dV_{g,1}/dL (2 pi i) = 2 pi i (2g - 2) V_{g,0}``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import mpmath
import numpy as np

DEFAULT_BUDGET = 12
ROUTES = ("max", "min")


class VolumeError(ValueError):
    """Invalid (g, n) or request outside the configured budget."""


def dimension(g: int, n: int) -> int:
    """Complex dimension ``3g - 3 + n`` of the moduli space."""
    return 3 * g - 3 + n


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def _canon(degrees: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(degrees, reverse=True))


@lru_cache(maxsize=None)
def _zeta_even_rational(i: int) -> Fraction:
    """Rational part of zeta(2i) / pi^(2i); zeta(0) = -1/2."""
    if i == 0:
        return Fraction(-1, 2)
    # zeta(2i) = (-1)^(i+1) B_2i (2 pi)^(2i) / (2 (2i)!)
    b = _bernoulli(2 * i)
    return Fraction((-1) ** (i + 1)) * b * Fraction(2 ** (2 * i), 2 * math.factorial(2 * i))


@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    # Akiyama-Tanigawa; B_1 = +1/2 convention is irrelevant since only even m are used
    a = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        a[k] = Fraction(1, k + 1)
        for j in range(k, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


@lru_cache(maxsize=None)
def _kernel_weight(i: int) -> Fraction:
    """``(2^(2i+1) - 4) * zeta(2i) / pi^(2i)``; equals 1 at i = 0."""
    return (2 ** (2 * i + 1) - 4) * _zeta_even_rational(i)


@lru_cache(maxsize=None)
def _fact(k: int) -> int:
    return math.factorial(k)


@dataclass(frozen=True)
class VolumePolynomial:
    """Symmetric volume polynomial ``V_{g,n}`` with exact coefficients.

    ``coeffs`` maps a non-increasing multi-degree ``(d_1, ..., d_n)`` in the
    variables ``x_i**2`` to the rational part of its coefficient; the full
    coefficient of every permutation of that monomial is
    ``coeffs[d] * pi**(2 * pi_power(d))``.
    """

    g: int
    n: int
    coeffs: dict = field(compare=True, hash=False)

    @property
    def dim(self) -> int:
        return dimension(self.g, self.n)

    def pi_power(self, degrees: tuple[int, ...]) -> int:
        """Exponent ``k`` such that the coefficient carries ``pi**(2k)``."""
        return self.dim - sum(degrees)

    def coefficient(self, degrees: Iterable[int]) -> Fraction:
        degrees = tuple(degrees)
        if len(degrees) != self.n:
            raise VolumeError(f"expected {self.n} degrees, got {len(degrees)}")
        return self.coeffs.get(_canon(degrees), Fraction(0))

    @property
    def degree(self) -> int:
        """Total degree in the ``x_i**2`` grading."""
        return max(sum(k) for k, v in self.coeffs.items() if v != 0)

    def terms(self):
        """Yield ``(multi-degree, coefficient, pi power)`` for every monomial."""
        for key in sorted(self.coeffs):
            for perm in sorted(set(itertools.permutations(key))):
                yield perm, self.coeffs[key], self.pi_power(key)

    def constant(self) -> Fraction:
        """Rational part of ``V_{g,n} = V_{g,n}(0, ..., 0)``; carries ``pi**(2 dim)``."""
        return self.coeffs.get((0,) * self.n, Fraction(0))

    def value_at_zero(self, precision: int | None = None):
        return evaluate(self, (0,) * self.n, precision=precision)


def evaluate(poly: VolumePolynomial, x, precision: int | None = None):
    """Evaluate ``poly`` at boundary lengths ``x``.

    Returns a float by default; with ``precision`` (decimal digits) returns an
    ``mpmath.mpf`` computed at that working precision.
    """
    x = tuple(x)
    if len(x) != poly.n:
        raise VolumeError(f"V_{{{poly.g},{poly.n}}} takes {poly.n} arguments, got {len(x)}")
    dps = precision if precision is not None else 30
    with mpmath.workdps(dps + 10):
        pi2 = mpmath.pi ** 2
        ys = [mpmath.mpf(v) ** 2 for v in x]
        total = mpmath.mpf(0)
        for key, c in poly.coeffs.items():
            if c == 0:
                continue
            m = _monomial_symmetric(key, ys)
            total += mpmath.mpf(c.numerator) / c.denominator * pi2 ** poly.pi_power(key) * m
        if precision is None:
            return float(total)
        return +total


def evaluate_many(poly: VolumePolynomial, points) -> np.ndarray:
    """Float64 evaluation at many points at once, shape ``(P, n)`` -> ``(P,)``.

    Used for grid sweeps where 15-16 significant digits suffice.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != poly.n:
        raise VolumeError(f"V_{{{poly.g},{poly.n}}} takes {poly.n} arguments, got {pts.shape[1]}")
    ys = pts**2
    pi2 = math.pi**2
    total = np.zeros(len(pts))
    for key, c in poly.coeffs.items():
        if c:
            total += float(c) * pi2 ** poly.pi_power(key) * _monomial_symmetric(key, ys.T, one=np.ones(len(pts)))
    return total


def _monomial_symmetric(key: tuple[int, ...], ys, one=None):
    """Monomial symmetric function ``m_key(ys)``: sum over distinct placements."""
    counts = Counter(key)
    parts = sorted(counts)
    states = {tuple(counts[p] for p in parts): mpmath.mpf(1) if one is None else one}
    for y in ys:
        nxt: dict = {}
        for state, acc in states.items():
            for idx, p in enumerate(parts):
                if state[idx] == 0:
                    continue
                s2 = state[:idx] + (state[idx] - 1,) + state[idx + 1:]
                nxt[s2] = nxt.get(s2, 0) + acc * (y ** p if p else 1)
        states = nxt
    (value,) = states.values()
    return value


def _base_polynomial(g: int, n: int) -> VolumePolynomial | None:
    if (g, n) == (0, 3):
        return VolumePolynomial(0, 3, {(0, 0, 0): Fraction(1)})
    if (g, n) == (1, 1):
        # (x^2 + 4 pi^2) / 48; the normalization compatible with V_{0,3} = 1
        return VolumePolynomial(1, 1, {(1,): Fraction(1, 48), (0,): Fraction(1, 12)})
    return None


class VolumeTable:
    """Lazily built, memoized table of volume polynomials.

    ``route`` selects which boundary plays the distinguished role in the
    recursion: ``"max"`` takes the variable of largest degree, ``"min"`` the
    smallest.  Both must agree; comparing them is the internal oracle.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, route: str = "max"):
        if route not in ROUTES:
            raise ValueError(f"route must be one of {ROUTES}")
        self.budget = budget
        self.route = route
        self._polys: dict[tuple[int, int], VolumePolynomial] = {}

    def in_budget(self, g: int, n: int) -> bool:
        if not is_stable(g, n):
            return False
        if n == 0:
            return dimension(g, 1) <= self.budget
        return dimension(g, n) <= self.budget

    def __call__(self, g: int, n: int) -> VolumePolynomial:
        return self.polynomial(g, n)

    def polynomial(self, g: int, n: int) -> VolumePolynomial:
        if not is_stable(g, n):
            raise VolumeError(f"(g, n) = ({g}, {n}) is not hyperbolic (need 2g - 2 + n > 0)")
        if not self.in_budget(g, n):
            raise VolumeError(
                f"V_{{{g},{n}}} exceeds budget {self.budget} (3g - 3 + n = {dimension(g, max(n, 1))})"
            )
        key = (g, n)
        if key not in self._polys:
            self._polys[key] = self._compute(g, n)
        return self._polys[key]

    def constant(self, g: int, n: int) -> Fraction:
        return self.polynomial(g, n).constant()

    def value(self, g: int, n: int, precision: int = 30):
        """``V_{g,n}`` as an mpf (includes the power of pi)."""
        return self.polynomial(g, n).value_at_zero(precision)

    def stable_pairs(self) -> list[tuple[int, int]]:
        out = []
        for g in range(0, self.budget // 3 + 2):
            for n in range(0, self.budget + 4):
                if self.in_budget(g, n):
                    out.append((g, n))
        return out

    def build_all(self) -> dict[tuple[int, int], VolumePolynomial]:
        return {gn: self.polynomial(*gn) for gn in self.stable_pairs()}

    # -- recursion -------------------------------------------------------

    def _compute(self, g: int, n: int) -> VolumePolynomial:
        base = _base_polynomial(g, n)
        if base is not None:
            return base
        if n == 0:
            return self._closed(g)
        D = dimension(g, n)
        coeffs: dict[tuple[int, ...], Fraction] = {}
        xcache: dict[tuple[int, ...], list[Fraction]] = {}
        for total in range(D + 1):
            for key in _partitions_padded(total, n):
                if self.route == "max":
                    a1, rest = key[0], key[1:]
                else:
                    a1, rest = key[-1], key[:-1]
                if rest not in xcache:
                    xcache[rest] = self._kernel_sums(g, n, rest)
                val = self._rhs(g, n, a1, rest, xcache[rest])
                if val:
                    coeffs[key] = val / (2 * a1 + 1)
        return VolumePolynomial(g, n, coeffs)

    def _kernel_sums(self, g: int, n: int, rest: tuple[int, ...]) -> list[Fraction]:
        """``X[s]``: weight of ``F_{2s+3}`` from the two-boundary gluing terms.

        X[s] = 1/2 sum_{a+b=s} (2a+1)! (2b+1)! [c_{g-1,n+1}(a,b,rest)
                                               + sum_splits c_{g1}(a,I) c_{g2}(b,J)]
        """
        D = dimension(g, n)
        smax = D - 2 - sum(rest)
        X = [Fraction(0)] * (max(smax, -1) + 1)
        if smax < 0:
            return X
        # connected term
        if is_stable(g - 1, n + 1):
            inner = self.polynomial(g - 1, n + 1)
            for s in range(smax + 1):
                acc = Fraction(0)
                for a in range(s + 1):
                    c = inner.coeffs.get(_canon((a, s - a) + rest))
                    if c:
                        acc += c * _fact(2 * a + 1) * _fact(2 * (s - a) + 1)
                X[s] += acc / 2
        # disconnected terms: split the remaining boundaries between two pieces
        counts = Counter(rest)
        vals = sorted(counts)
        for pick in itertools.product(*(range(counts[v] + 1) for v in vals)):
            mult = 1
            left: list[int] = []
            right: list[int] = []
            for v, k in zip(vals, pick):
                mult *= math.comb(counts[v], k)
                left.extend([v] * k)
                right.extend([v] * (counts[v] - k))
            n1, n2 = len(left), len(right)
            for g1 in range(0, g + 1):
                g2 = g - g1
                if not (is_stable(g1, n1 + 1) and is_stable(g2, n2 + 1)):
                    continue
                p1 = self.polynomial(g1, n1 + 1)
                p2 = self.polynomial(g2, n2 + 1)
                u = _slice_first(p1, tuple(left))
                w = _slice_first(p2, tuple(right))
                for a, ua in enumerate(u):
                    if not ua:
                        continue
                    for b, wb in enumerate(w):
                        if wb and a + b <= smax:
                            X[a + b] += Fraction(mult, 2) * ua * wb
        return X

    def _rhs(self, g: int, n: int, a1: int, rest: tuple[int, ...], X: list[Fraction]) -> Fraction:
        total = Fraction(0)
        # A terms: F_{2s+3}(L1) contributes L1^(2 a1) with i = s + 2 - a1
        for s, xs in enumerate(X):
            if not xs:
                continue
            i = s + 2 - a1
            if i < 0:
                continue
            total += xs * _kernel_weight(i) / _fact(2 * a1)
        # B terms: one boundary merges with the distinguished one
        if rest and is_stable(g, n - 1):
            inner = self.polynomial(g, n - 1)
            counts = Counter(rest)
            for bj, mult in counts.items():
                others = list(rest)
                others.remove(bj)
                others_t = tuple(others)
                amax = dimension(g, n - 1) - sum(others_t)
                for a in range(amax + 1):
                    i = a + 1 - a1 - bj
                    if i < 0:
                        continue
                    c = inner.coeffs.get(_canon((a,) + others_t))
                    if c:
                        total += (
                            mult * c * _fact(2 * a + 1) * _kernel_weight(i)
                            / (_fact(2 * a1) * _fact(2 * bj))
                        )
        return total

    def _closed(self, g: int) -> VolumePolynomial:
        if self.route == "min" and dimension(g, 2) <= self.budget:
            # second path: peel two boundaries through V_{g,2}
            v1 = _dilaton_drop(self.polynomial(g, 2), g, 1)
        else:
            v1 = self.polynomial(g, 1)
        const = Fraction(0)
        for (a,), c in v1.coeffs.items():
            if a:
                const += 2 * a * c * Fraction(-4) ** (a - 1)
        return VolumePolynomial(g, 0, {(): const / (2 * g - 2)})


def _dilaton_drop(poly: VolumePolynomial, g: int, n: int) -> VolumePolynomial:
    """Recover ``V_{g,n}`` from ``V_{g,n+1}`` via the dilaton relation."""
    out: dict[tuple[int, ...], Fraction] = {}
    for key in poly.coeffs:
        for perm in set(itertools.permutations(key)):
            head, last = perm[:-1], perm[-1]
            if last == 0:
                continue
            k = _canon(head)
            contrib = poly.coeffs[key] * 2 * last * Fraction(-4) ** (last - 1)
            # each distinct permutation with a given head contributes once per key
            out[k] = out.get(k, Fraction(0)) + contrib * Fraction(1, _perm_count(key, head))
    denom = 2 * g - 2 + n
    return VolumePolynomial(g, n, {k: v / denom for k, v in out.items() if v})


def _perm_count(key: tuple[int, ...], head: tuple[int, ...]) -> int:
    """Number of distinct permutations of ``head`` (each symmetric coefficient is shared)."""
    c = Counter(head)
    total = math.factorial(len(head))
    for m in c.values():
        total //= math.factorial(m)
    return total


def _slice_first(poly: VolumePolynomial, rest: tuple[int, ...]) -> list[Fraction]:
    """Coefficients ``[c(a, rest) * (2a+1)!]`` for a = 0, 1, ...."""
    amax = poly.dim - sum(rest)
    if amax < 0:
        return []
    return [poly.coeffs.get(_canon((a,) + rest), Fraction(0)) * _fact(2 * a + 1) for a in range(amax + 1)]


def _partitions_padded(total: int, n: int):
    """Non-increasing n-tuples of non-negative ints summing to ``total``."""

    def rec(remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            if first * slots < remaining:
                break
            for tail in rec(remaining - first, slots - 1, first):
                yield (first,) + tail

    yield from rec(total, n, total)


_DEFAULT_TABLES: dict[tuple[int, str], VolumeTable] = {}


def default_table(budget: int = DEFAULT_BUDGET, route: str = "max") -> VolumeTable:
    key = (budget, route)
    if key not in _DEFAULT_TABLES:
        _DEFAULT_TABLES[key] = VolumeTable(budget, route)
    return _DEFAULT_TABLES[key]


def volume_polynomial(g: int, n: int, budget: int = DEFAULT_BUDGET) -> VolumePolynomial:
    return default_table(budget).polynomial(g, n)


def tilde_w(k: int, table: VolumeTable | None = None) -> tuple[int, int]:
    """Index ``(g, n)`` of the volume used for the half-surface weight ``W~_k``."""
    if k < 1:
        raise VolumeError("W~_k needs k >= 1")
    if k % 2 == 0:
        return (k // 2, 2)
    return ((k + 1) // 2, 1)


def tilde_w_value(k: int, table: VolumeTable, precision: int = 30):
    g, n = tilde_w(k)
    return table.value(g, n, precision)


# -- table I/O -------------------------------------------------------------


def export_table(polys: Iterable[VolumePolynomial]) -> str:
    """Text export: one ``g n | d1,d2,... | num | den | pi_power`` line per monomial class."""
    lines = ["# g n | multi-degree | numerator | denominator | pi^2 power"]
    for p in sorted(polys, key=lambda q: (q.g, q.n)):
        for key in sorted(p.coeffs):
            c = p.coeffs[key]
            deg = ",".join(str(d) for d in key)
            lines.append(f"{p.g} {p.n} | {deg} | {c.numerator} | {c.denominator} | {p.pi_power(key)}")
    return "\n".join(lines) + "\n"


def import_table(text: str) -> dict[tuple[int, int], VolumePolynomial]:
    acc: dict[tuple[int, int], dict] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            gn, deg, num, den, pip = (s.strip() for s in line.split("|"))
            g, n = (int(t) for t in gn.split())
            key = tuple(int(t) for t in deg.split(",")) if deg else ()
            c = Fraction(int(num), int(den))
        except ValueError as exc:
            raise VolumeError(f"line {lineno}: malformed volume record: {line!r}") from exc
        if int(pip) != dimension(g, n) - sum(key):
            raise VolumeError(f"line {lineno}: pi power {pip} inconsistent with degree")
        acc.setdefault((g, n), {})[_canon(key)] = c
    return {gn: VolumePolynomial(gn[0], gn[1], c) for gn, c in acc.items()}


# -- lemma checks ----------------------------------------------------------


@lru_cache(maxsize=None)
def pi_squared_enclosure(digits: int = 40) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < pi**2 < hi`` with ``hi - lo = 10**-digits``."""
    with mpmath.workdps(digits + 20):
        scaled = int(mpmath.floor(mpmath.pi**2 * mpmath.mpf(10) ** digits))
    return Fraction(scaled, 10**digits), Fraction(scaled + 1, 10**digits)


GRID_VALUES = (0.0, 2.5, 5.0, 7.5, 10.0)


@dataclass
class LemmaReport:
    budget: int
    growth_violations: list = field(default_factory=list)
    shift_violations: list = field(default_factory=list)
    sinh_bound_violations: list = field(default_factory=list)
    sinh_fitted_c: dict = field(default_factory=dict)
    sinh_genus0_ok: dict = field(default_factory=dict)
    ratio_rows: list = field(default_factory=list)
    ratio_monotone: dict = field(default_factory=dict)
    genus_ratio_rows: list = field(default_factory=list)
    dual_path_mismatches: list = field(default_factory=list)
    checked_pairs: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.growth_violations
            and not self.shift_violations
            and not self.sinh_bound_violations
            and all(self.ratio_monotone.values())
            and not self.dual_path_mismatches
        )


def _grid_multisets(n: int, values=GRID_VALUES):
    """The 5^n grid up to permutation; volumes are symmetric so this covers it."""
    return itertools.combinations_with_replacement(values, n)


def check_volume_lemmas(
    budget: int = DEFAULT_BUDGET,
    table: VolumeTable | None = None,
    dual: VolumeTable | None = None,
    precision: int = 30,
    grid=GRID_VALUES,
) -> LemmaReport:
    """Check the volume growth lemmas over every stable (g, n) within ``budget``."""
    table = table or default_table(budget, "max")
    dual = dual or default_table(budget, "min")
    rep = LemmaReport(budget=budget)
    pairs = table.stable_pairs()
    rep.checked_pairs = pairs
    rtol = 1e-12
    with mpmath.workdps(precision):
        for g, n in pairs:
            p = table.polynomial(g, n)
            q = dual.polynomial(g, n)
            if p.coeffs != q.coeffs:
                rep.dual_path_mismatches.append((g, n))
            if n == 0:
                continue
            # lower bound V <= V(x) is exact: every coefficient is positive
            if any(c <= 0 for c in p.coeffs.values()):
                rep.growth_violations.append((g, n, "nonpositive coefficient"))
            pts = np.array(list(_grid_multisets(n, grid)))
            vx = evaluate_many(p, pts)
            v0 = float(evaluate(p, (0,) * n))
            ub = np.exp(pts.sum(axis=1) / 2) * v0
            bad = (vx < v0 * (1 - rtol)) | (vx > ub * (1 + rtol))
            rep.growth_violations.extend((g, n, tuple(x)) for x in pts[bad])
            half = pts / 2
            with np.errstate(invalid="ignore", divide="ignore"):
                fac = np.where(half > 0, np.sinh(half) / np.where(half > 0, half, 1), 1.0)
            prod = fac.prod(axis=1)
            ratio = vx / v0
            over = ratio > prod * (1 + rtol)
            if g >= 1:
                rep.sinh_bound_violations.extend((g, n, tuple(x)) for x in pts[over])
                s2 = (pts**2).sum(axis=1)
                mask = s2 > 0
                need = g * (1 - ratio[mask] / prod[mask]) / s2[mask]
                cfit = float(max(need.max(initial=0.0), 0.0))
                rep.sinh_fitted_c[n] = max(rep.sinh_fitted_c.get(n, 0.0), cfit)
            else:
                rep.sinh_genus0_ok[n] = not bool(over.any())
        # V_{g,n+4} <= V_{g+1,n+2}, certified with a rational enclosure of pi^2
        for g, n4 in pairs:
            n = n4 - 4
            if n < 0 or not table.in_budget(g + 1, n + 2):
                continue
            # V_{g+1,n+2} carries one more factor pi^2 than V_{g,n+4}
            quotient = table.constant(g, n + 4) / table.constant(g + 1, n + 2)
            lo, _hi = pi_squared_enclosure()
            if not quotient <= lo:
                rep.shift_violations.append((g, n, quotient))
        # V_{g,n+1} / (2 g V_{g,n}) -> 4 pi^2 and V_{g,n} / V_{g-1,n+2} -> 1
        four_pi2 = 4 * mpmath.pi ** 2
        by_n: dict[int, list] = {}
        for g, n1 in pairs:
            n = n1 - 1
            if n < 0 or g < 1 or not table.in_budget(g, n):
                continue
            r = table.value(g, n + 1, precision) / (2 * g * table.value(g, n, precision))
            dev = abs(r / four_pi2 - 1)
            rep.ratio_rows.append((g, n, r, r / four_pi2))
            by_n.setdefault(n, []).append((g, dev))
        for n, rows in by_n.items():
            rows.sort()
            devs = [d for _, d in rows]
            rep.ratio_monotone[n] = all(b < a for a, b in zip(devs, devs[1:]))
        for g, n in pairs:
            if g >= 1 and table.in_budget(g - 1, n + 2):
                r = table.value(g, n, precision) / table.value(g - 1, n + 2, precision)
                rep.genus_ratio_rows.append((g, n, r))
    return rep


def sum_asymptotics(b: int, k: int, C, g: int, table: VolumeTable, r: int = 0, precision: int = 30):
    """Left sum and right scale of the two-piece splitting estimate.

    lhs = sum_{g1 + g2 = g + 1 - k, r + 1 <= g1 <= g2} e^(C g1) g1^b V_{g1,k} V_{g2,k}
    rhs = V_{g,0} / g^(2r + k)

    Returns ``(lhs, rhs, lhs / rhs)`` as mpf values.
    """
    C = mpmath.mpf(C)
    if not C < 2 * mpmath.log(2):
        raise VolumeError("need C < 2 ln 2")
    if not table.in_budget(g, 0):
        raise VolumeError(f"V_{{{g},0}} outside the table (budget {table.budget})")
    with mpmath.workdps(precision):
        lhs = mpmath.mpf(0)
        total = g + 1 - k
        for g1 in range(r + 1, total // 2 + 1):
            g2 = total - g1
            if g2 < g1:
                continue
            for gg in (g1, g2):
                if not table.in_budget(gg, k):
                    raise VolumeError(f"V_{{{gg},{k}}} outside the table (budget {table.budget})")
            lhs += (
                mpmath.exp(C * g1) * mpmath.mpf(g1) ** b
                * table.value(g1, k, precision) * table.value(g2, k, precision)
            )
        rhs = table.value(g, 0, precision) / mpmath.mpf(g) ** (2 * r + k)
        return lhs, rhs, lhs / rhs
