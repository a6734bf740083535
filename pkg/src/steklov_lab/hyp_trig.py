"""Right-angled hexagon and half-collar trigonometry for pairs of pants.

A pair of pants with cuff lengths ``(l1, l2, l3)`` is two copies of the
right-angled hexagon with alternate sides ``l1/2, l2/2, l3/2``.  The other
three sides (seams) are the orthogeodesics between pairs of cuffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MIN_LENGTH = 1e-6
MAX_LENGTH = 50.0
# arguments above this go through log-domain forms
STABLE_ARG = 20.0

# sup |d - max{(a-e)/2, (b-e)/2, (a+b-e)/4, 0}| over e, a, b in [1.1, 40];
# measured by collar_gap_sweep() (worst 1.855 at e=a=b=1.1) and rounded up
COLLAR_GAP_BOUND = 1.9


class HyperbolicDomainError(ValueError):
    """Length outside the accepted range (non-positive, non-finite, or degenerate)."""


def _check_length(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise HyperbolicDomainError(f"{name} must be positive and finite, got {x!r}")
    if x < MIN_LENGTH or x > MAX_LENGTH:
        raise HyperbolicDomainError(
            f"{name}={x!r} outside [{MIN_LENGTH}, {MAX_LENGTH}]; refusing near-degenerate input"
        )
    return x


def log_cosh(x: float) -> float:
    x = abs(x)
    if x > STABLE_ARG:
        return x - math.log(2.0) + math.log1p(math.exp(-2.0 * x))
    return math.log(math.cosh(x))


def log_sinh(x: float) -> float:
    if x > STABLE_ARG:
        return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


def arccosh_from_log(log_c: float) -> float:
    """``arccosh(exp(log_c))`` without forming ``exp(log_c)`` when it is huge."""
    if log_c < 0:
        if log_c > -1e-15:
            return 0.0
        raise HyperbolicDomainError("cosh value below 1")
    if log_c > STABLE_ARG:
        # arccosh(c) = log(c) + log(1 + sqrt(1 - c^-2))
        return log_c + math.log1p(math.sqrt(-math.expm1(-2.0 * log_c)))
    # c - 1 via expm1 keeps short distances accurate
    cm1 = math.expm1(log_c)
    return math.log1p(cm1 + math.sqrt(cm1 * (cm1 + 2.0)))


def _logsumexp(terms: list[float]) -> float:
    m = max(terms)
    return m + math.log(sum(math.exp(t - m) for t in terms))


@dataclass(frozen=True)
class Hexagon:
    """Right-angled hexagon ``(a1, b1, a2, b2, a3, b3)`` listed cyclically.

    ``a_i`` are cuff half-lengths; ``b_i`` is the seam opposite ``a_i``, so
    ``b1`` joins the cuffs carrying ``a2`` and ``a3``.
    """

    a1: float
    b3: float
    a2: float
    b1: float
    a3: float
    b2: float

    @property
    def sides(self) -> tuple[float, ...]:
        return (self.a1, self.b3, self.a2, self.b1, self.a3, self.b2)

    def relation_residuals(self) -> list[float]:
        """Relative residual of ``cosh b_k = (cosh a_k + cosh a_i cosh a_j) / (sinh a_i sinh a_j)``."""
        a = (self.a1, self.a2, self.a3)
        b = (self.b1, self.b2, self.b3)
        out = []
        for k in range(3):
            i, j = (k + 1) % 3, (k + 2) % 3
            lhs = math.cosh(b[k])
            rhs = (math.cosh(a[k]) + math.cosh(a[i]) * math.cosh(a[j])) / (math.sinh(a[i]) * math.sinh(a[j]))
            out.append(abs(lhs - rhs) / abs(rhs))
        return out


@dataclass(frozen=True)
class CollarData:
    eta: float
    alpha: float
    beta: float
    width: float
    seam: float
    cosh_width: float

    def check(self, rtol: float = 1e-10) -> bool:
        alt = math.sinh(self.alpha / 2) * math.sinh(self.seam)
        return abs(alt - self.cosh_width) <= rtol * self.cosh_width


def seam_length(a_opp: float, a_i: float, a_j: float) -> float:
    """Seam between the sides ``a_i`` and ``a_j`` of a right-angled hexagon (half-lengths)."""
    # coth a_i coth a_j (1 + cosh a_opp / (cosh a_i cosh a_j)), every log factor >= 0
    ratio = log_cosh(a_opp) - log_cosh(a_i) - log_cosh(a_j)
    return arccosh_from_log(_log_coth(a_i) + _log_coth(a_j) + math.log1p(math.exp(ratio)))


def _log_coth(x: float) -> float:
    q = math.exp(-2.0 * x)
    return math.log1p(2.0 * q / -math.expm1(-2.0 * x))


def pants_seams(l1: float, l2: float, l3: float) -> tuple[float, float, float]:
    """Seam lengths ``(b12, b23, b31)`` of the pants with cuffs ``l1, l2, l3``."""
    l1 = _check_length("l1", l1)
    l2 = _check_length("l2", l2)
    l3 = _check_length("l3", l3)
    a1, a2, a3 = l1 / 2, l2 / 2, l3 / 2
    return (seam_length(a3, a1, a2), seam_length(a1, a2, a3), seam_length(a2, a3, a1))


def hexagon(l1: float, l2: float, l3: float) -> Hexagon:
    b12, b23, b31 = pants_seams(l1, l2, l3)
    return Hexagon(a1=l1 / 2, b3=b12, a2=l2 / 2, b1=b23, a3=l3 / 2, b2=b31)


def cuff_halves_from_seams(b12: float, b23: float, b31: float) -> tuple[float, float, float]:
    """Inverse of :func:`pants_seams`: the same hexagon relation read the other way."""
    # a3 is opposite b12 and lies between b23 and b31
    return (
        2 * seam_length(b23, b31, b12),
        2 * seam_length(b31, b12, b23),
        2 * seam_length(b12, b23, b31),
    )


def collar_width(eta: float, alpha: float, beta: float) -> CollarData:
    """Maximal half-collar width ``d`` of ``eta`` inside the pants ``(eta, alpha, beta)``.

    cosh d = sqrt(ch(b/2)^2 + ch(a/2)^2 + ch(e/2)^2 + 2 ch(a/2) ch(b/2) ch(e/2) - 1) / sinh(e/2)
    """
    eta = _check_length("eta", eta)
    alpha = _check_length("alpha", alpha)
    beta = _check_length("beta", beta)
    ha, hb, he = alpha / 2, beta / 2, eta / 2
    la, lb, le = log_cosh(ha), log_cosh(hb), log_cosh(he)
    # the -1 is absorbed exactly: ch(e/2)^2 - 1 = sh(e/2)^2
    terms = [2 * lb, 2 * la, 2 * log_sinh(he), math.log(2.0) + la + lb + le]
    log_cd = 0.5 * _logsumexp(terms) - log_sinh(he)
    width = arccosh_from_log(log_cd)
    seam = seam_length(hb, ha, he)
    return CollarData(eta, alpha, beta, width, seam, math.exp(log_cd) if log_cd < 700 else math.inf)


def collar_gap_terms(eta: float, alpha: float, beta: float) -> float:
    return max((alpha - eta) / 2, (beta - eta) / 2, (alpha + beta - eta) / 4, 0.0)


def collar_asymptotic_gap(eta: float, alpha: float, beta: float) -> float:
    """``d - max{(a-e)/2, (b-e)/2, (a+b-e)/4, 0}``; requires ``eta > 1``."""
    if not eta > 1:
        raise HyperbolicDomainError(f"eta must exceed 1 for the O(1) collar estimate, got {eta!r}")
    return collar_width(eta, alpha, beta).width - collar_gap_terms(eta, alpha, beta)


def collar_length_check(eta: float, alpha: float, beta: float, bound: float = COLLAR_GAP_BOUND) -> bool:
    """``alpha + beta <= 4 d + eta + M`` with ``M = 4 * bound``."""
    d = collar_width(eta, alpha, beta).width
    return alpha + beta <= 4 * d + eta + 4 * bound


def collar_gap_sweep(lo: float = 1.1, hi: float = 40.0, num: int = 40) -> float:
    """Largest ``|collar_asymptotic_gap|`` on a uniform grid of ``[lo, hi]^3``."""
    xs = np.linspace(lo, hi, num)
    worst = 0.0
    for e in xs:
        for a in xs:
            for b in xs:
                worst = max(worst, abs(collar_asymptotic_gap(e, a, b)))
    return worst


def xi_length_bound(eta: float, eta_tilde: float, d: float) -> float:
    """Length bound ``eta + eta_tilde + 2 d`` for the geodesic around ``eta``, the arc and ``eta_tilde``."""
    for name, v in (("eta", eta), ("eta_tilde", eta_tilde)):
        if not v > 0:
            raise HyperbolicDomainError(f"{name} must be positive, got {v!r}")
    if d < 0:
        raise HyperbolicDomainError(f"d must be non-negative, got {d!r}")
    return eta + eta_tilde + 2 * d


def standard_collar_width(length: float) -> float:
    """Collar-lemma width ``arcsinh(1 / sinh(l/2))`` of a simple closed geodesic."""
    return math.asinh(1.0 / math.sinh(length / 2))


def opposite_side_distance(s2: float, s3: float) -> float:
    """Distance between opposite sides s1, s4 of a right-angled hexagon ``(s1, ..., s6)``."""
    return arccosh_from_log(log_sinh(s2) + log_sinh(s3))
