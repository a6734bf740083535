"""Finite-genus evaluation of the probability and expectation bound expressions.

Implied constants are never known, so every evaluator returns the structural
part of a bound.  Decay is checked as monotone decrease on a finite grid
plus a threshold crossing, never as a limit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from . import wp_volumes
from .wp_volumes import VolumeTable

DEFAULT_GRID = tuple(10.0**k for k in range(3, 10))
DEFAULT_DIGITS = 40


class BoundsError(ValueError):
    """Parameters outside the range where a bound expression applies."""


@dataclass(frozen=True)
class BoundaryLengthSchedule:
    n: int
    lengths: Callable[[float], tuple]
    description: str = ""

    def __call__(self, g: float) -> tuple:
        out = tuple(float(x) for x in self.lengths(g))
        if len(out) != self.n:
            raise BoundsError(f"schedule returned {len(out)} lengths, expected {self.n}")
        return out


def log_schedule(n: int, fraction: float = 0.5, offset: float = 0.0) -> BoundaryLengthSchedule:
    """``n`` equal boundary lengths with total ``fraction * log g + n * offset``."""
    return BoundaryLengthSchedule(
        n,
        lambda g: (offset + fraction * math.log(g) / n,) * n,
        f"sum L = {fraction} log g" + (f" + {n * offset}" if offset else "") + f", n = {n}",
    )


@dataclass
class DecayCurve:
    label: str
    samples: list  # (g, value)

    def __post_init__(self):
        gs = [g for g, _ in self.samples]
        if any(b <= a for a, b in zip(gs, gs[1:])):
            raise BoundsError("grid must be strictly increasing")
        if not all(math.isfinite(v) and v > 0 for _, v in self.samples):
            raise BoundsError(f"{self.label}: values must be finite and positive")

    def values(self) -> list[float]:
        return [v for _, v in self.samples]

    def decreasing_beyond(self, g0: float) -> bool:
        tail = [v for g, v in self.samples if g >= g0]
        return all(b < a for a, b in zip(tail, tail[1:]))

    def value_at(self, g: float) -> float:
        for x, v in self.samples:
            if x == g:
                return v
        raise KeyError(g)

    def below_by(self, threshold: float, g: float) -> bool:
        return any(v < threshold for x, v in self.samples if x <= g)


def _check_eps(eps, hi=0.5):
    if not 0 < eps < hi:
        raise BoundsError(f"eps must lie in (0, {hi}), got {eps}")


# -- collar failure ------------------------------------------------------


def pair_collar_expression(L1: float, L2: float, g: float, eps: float) -> float:
    """``L1 L2 / g^(1/2 + eps)``: two boundary components and a short third curve."""
    return L1 * L2 / g ** (0.5 + eps)


def pants_collar_expression(g: float, eps: float) -> float:
    """``log^2 g / g^(2 eps)``: one boundary component and two short curves."""
    return math.log(g) ** 2 / g ** (2 * eps)


def collar_failure_bounds(schedule: BoundaryLengthSchedule, eps: float, grid: Sequence[float] = DEFAULT_GRID):
    """The two curves bounding the failure of the half-collar condition.

    The first uses the two longest boundary lengths; with a single boundary
    component it is not defined and ``None`` is returned in its place.
    """
    _check_eps(eps)
    first = None
    if schedule.n >= 2:
        samples = []
        for g in grid:
            top = sorted(schedule(g), reverse=True)
            samples.append((g, pair_collar_expression(top[0], top[1], g, eps)))
        first = DecayCurve("pair_collar", samples)
    second = DecayCurve("pants_collar", [(g, pants_collar_expression(g, eps)) for g in grid])
    return first, second


def pants_collar_monotone_from(eps: float) -> float:
    """``log^2 g / g^(2 eps)`` strictly decreases for ``g > e^(1/eps)``."""
    return math.exp(1 / eps)


def complement_index_set(g: int, n: int) -> list[tuple]:
    """Ways the complement of a pants around one boundary component can split.

    ``("connected",)`` or ``(g1, g2, boundary subset)`` with ``g1 + g2 = g``;
    each piece keeps one new boundary curve and must be stable.
    """
    from itertools import combinations

    out = []
    if wp_volumes.is_stable(g - 1, n + 1):
        out.append(("connected",))
    others = list(range(2, n + 1))
    for g1 in range(g + 1):
        g2 = g - g1
        for n1 in range(len(others) + 1):
            for subset in combinations(others, n1):
                if wp_volumes.is_stable(g1, n1 + 1) and wp_volumes.is_stable(g2, n - 1 - n1 + 1):
                    out.append((g1, g2, subset))
    return out


# -- multicurve counts ---------------------------------------------------


def multicurve_expectation_bound(g: float, m: int, L: float, n: int = 1) -> float:
    """Structural part ``e^(2L) / g^m`` of the separating multicurve count bound.

    The constant depending on ``n`` and ``m`` is left out.
    """
    if not L > 1:
        raise BoundsError(f"requires L > 1, got {L}")
    if m < 1:
        raise BoundsError(f"requires m >= 1, got {m}")
    return math.exp(2 * L - m * math.log(g))


def multicurve_decay(g: float, m: int, eps: float) -> float:
    """``e^(2L) / g^m`` at ``L = (1/2 - eps) log g``, i.e. ``g^(1 - 2 eps - m)``."""
    _check_eps(eps)
    return g ** (1 - 2 * eps - m)


def inner_series(L: float, terms: int | None = None) -> float:
    """``sum_s L^s / (s!)^2``, summed until the terms no longer matter."""
    total, term, s = 0.0, 1.0, 0
    while True:
        total += term
        s += 1
        term *= L / (s * s)
        if terms is not None and s >= terms:
            break
        if terms is None and term < 1e-18 * total:
            break
    return total


def inner_sum(L: float) -> tuple[float, float]:
    """``sum_s e^L L^s / (s!)^2`` and its bound ``e^(L + 2 sqrt L)``."""
    return math.exp(L) * inner_series(L), math.exp(L + 2 * math.sqrt(L))


# -- half-surface bounds --------------------------------------------------


@dataclass
class SymbolicBound:
    """A bound whose volume factors lie outside the table."""

    expression: str
    table_limited: bool = True
    prefactor: float = math.nan


def _volume_at_zero(table: VolumeTable, g: int, n: int, digits: int):
    if not table.in_budget(g, n):
        return None
    with mpmath.workdps(digits):
        return table.value(g, n, digits)


def half_surface_bound(
    g: int,
    n: int,
    m: int,
    c1: float,
    c2: float,
    schedule: BoundaryLengthSchedule | Sequence[float],
    table: VolumeTable | None = None,
    digits: int = 30,
):
    """``e^(2 pi m c2 + (c2 / c1) sum L) W~_m W~_(2g-2+n-m) / V_(g,n)``.

    Volumes are taken at zero boundary length.  When a volume is not in the
    table a :class:`SymbolicBound` is returned with the exponential prefactor.
    """
    if not c1 < c2:
        raise BoundsError(f"requires c1 < c2, got c1={c1}, c2={c2}")
    N = 2 * g - 2 + n
    if not 0 <= m <= N - 1:
        raise BoundsError(f"m must lie in [0, {N - 1}]")
    Ls = schedule(g) if callable(schedule) else tuple(schedule)
    table = table or wp_volumes.default_table()
    with mpmath.workdps(digits):
        pref = mpmath.exp(2 * mpmath.pi * m * mpmath.mpf(c2) + mpmath.mpf(c2) / c1 * mpmath.fsum(Ls))
        if m == 0:
            # no arcs: only the boundary term is left
            return pref
        idx = [wp_volumes.tilde_w(m), wp_volumes.tilde_w(N - m), (g, n)]
        vals = [_volume_at_zero(table, *i, digits) for i in idx]
        if any(v is None for v in vals):
            names = [f"V_{a},{b}" for a, b in idx]
            return SymbolicBound(f"exp(...) * {names[0]} * {names[1]} / {names[2]}", True, float(pref))
        return pref * vals[0] * vals[1] / vals[2]


def max_arc_count(c1: float, k: int, eps: float, g: float) -> int:
    """Largest ``m`` with ``m (1 - 2 eps) log g <= c1 k pi``; ``k pi`` is the area."""
    _check_eps(eps)
    if k < 0:
        raise BoundsError("area multiple must be non-negative")
    return math.floor(c1 * k * math.pi / ((1 - 2 * eps) * math.log(g)))


@dataclass
class ReindexCheck:
    pairs: list = field(default_factory=list)  # (N, m, m', holds)

    @property
    def ok(self) -> bool:
        return all(p[3] for p in self.pairs)


def reindex_term_holds(N: int, m: int, c2: Fraction, eps_prime: Fraction, table: VolumeTable) -> bool:
    """Exact comparison of the reindexed terms for ``m`` and ``m' = N - m``.

    The volume products on both sides are the same rational multiple of the
    same power of pi, so the comparison reduces to the exponents.
    """
    mp = N - m
    lhs = (wp_volumes.tilde_w(m), wp_volumes.tilde_w(N - m))
    rhs = (wp_volumes.tilde_w(mp), wp_volumes.tilde_w(N - mp))
    left = [table.polynomial(*i) for i in lhs]
    right = [table.polynomial(*i) for i in rhs]
    lc = left[0].constant() * left[1].constant()
    rc = right[0].constant() * right[1].constant()
    lp = left[0].dim + left[1].dim
    rp = right[0].dim + right[1].dim
    if (lc, lp) != (rc, rp):
        return False
    # exponents: 2 pi c2 m  <=  2 pi c2 m' (1 + e') / (1 - e')
    return c2 * m * (1 - eps_prime) <= c2 * mp * (1 + eps_prime)


def reindex_check(table: VolumeTable, c2: Fraction = Fraction(1, 20), eps_prime: Fraction = Fraction(1, 10)) -> ReindexCheck:
    """Check every index pair whose volumes are in the table."""
    c2, eps_prime = Fraction(c2), Fraction(eps_prime)
    report = ReindexCheck()
    Ns = sorted({2 * g - 2 + n for g, n in table.stable_pairs()})
    for N in Ns:
        if N < 2:
            continue
        lo = Fraction(N, 2)
        hi = (1 + eps_prime) * N / 2
        for m in range(math.ceil(lo), math.floor(hi) + 1):
            if not 1 <= m <= N - 1:
                continue
            needed = [wp_volumes.tilde_w(m), wp_volumes.tilde_w(N - m)]
            if not all(table.in_budget(*i) for i in needed):
                continue
            report.pairs.append((N, m, N - m, reindex_term_holds(N, m, c2, eps_prime, table)))
    return report


# -- constants -------------------------------------------------------------


def threshold_constants(digits: int = DEFAULT_DIGITS) -> dict:
    """``ln 2 / (2 pi)`` and ``ln 2 / (2 pi + ln 2)`` at the requested precision."""
    with mpmath.workdps(digits + 10):
        ln2 = mpmath.log(2)
        c1_max = ln2 / (2 * mpmath.pi)
        cheeger = ln2 / (2 * mpmath.pi + ln2)
        return {"c1_max": +c1_max, "cheeger_threshold": +cheeger}


def assembled_constant(c, c1, digits: int = DEFAULT_DIGITS):
    """``c c1 / 4``, the lower bound obtained from the Jammes-type inequality."""
    with mpmath.workdps(digits + 10):
        return mpmath.mpf(c) * mpmath.mpf(c1) / 4


def assembled_supremum(digits: int = DEFAULT_DIGITS):
    """``c c1 / 4`` at the limits ``c -> 1/2`` and ``c1 -> ln 2 / (2 pi + ln 2)``."""
    t = threshold_constants(digits)
    return assembled_constant(mpmath.mpf(1) / 2, t["cheeger_threshold"], digits)


def significant(x, digits: int = 30) -> str:
    """Decimal string of ``x`` with ``digits`` significant digits."""
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(x), digits, min_fixed=-5, max_fixed=5)


# -- admissibility ---------------------------------------------------------


def admissibility_and_windows(
    schedule: BoundaryLengthSchedule,
    omega: Callable[[float], float] | None = None,
    grid: Sequence[float] = DEFAULT_GRID,
    margin: float = 0.05,
) -> dict:
    """Check the boundary-length hypotheses and tabulate the systole window.

    Each row carries the total length, its ratio to ``log g``, whether all
    lengths exceed 1, the window ``2 log g - 4 log log g`` with ``+- omega``
    and ``omega / log log g``.
    """
    omega = omega or (lambda g: math.sqrt(math.log(math.log(g))))
    rows = []
    for g in grid:
        Ls = schedule(g)
        total = sum(Ls)
        lg = math.log(g)
        llg = math.log(lg)
        center = 2 * lg - 4 * llg
        w = omega(g)
        rows.append(
            {
                "g": g,
                "sum_L": total,
                "ratio": total / lg,
                "all_above_one": all(x > 1 for x in Ls),
                "window_center": center,
                "window": (center - w, center + w),
                "omega_ratio": w / llg,
            }
        )
    totals = [r["sum_L"] for r in rows]
    ratios = [r["omega_ratio"] for r in rows]
    return {
        "rows": rows,
        "lengths_above_one": all(r["all_above_one"] for r in rows),
        "ratio_below_one": all(r["ratio"] <= 1 - margin for r in rows),
        "total_increasing": all(b > a for a, b in zip(totals, totals[1:])),
        "omega_ratio_decreasing": all(b < a for a, b in zip(ratios, ratios[1:])),
    }


def systole_window(g: float, omega: float = 0.0) -> tuple[float, float]:
    c = 2 * math.log(g) - 4 * math.log(math.log(g))
    return c - omega, c + omega


# -- export ---------------------------------------------------------------


def curves_to_csv(curves: Sequence[DecayCurve]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "g", "value"])
    for c in curves:
        for g, v in c.samples:
            w.writerow([c.label, repr(float(g)), repr(float(v))])
    return buf.getvalue()


def curve_svg(curve: DecayCurve, path) -> None:
    """Log-log plot of one curve as a static SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    gs, vs = zip(*curve.samples)
    ax.loglog(gs, vs, marker="o")
    ax.set_xlabel("g")
    ax.set_ylabel(curve.label)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    with matplotlib.rc_context({"svg.hashsalt": "steklov-lab"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
