import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steklov_lab import wp_volumes as wp
from steklov_lab.wp_volumes import VolumeError, VolumeTable

PI2 = math.pi**2

# published closed forms, independent of the recursion
KNOWN = {
    (0, 4): lambda x: 2 * PI2 + sum(t * t for t in x) / 2,
    (1, 1): lambda x: (x[0] ** 2 + 4 * PI2) / 48,
    (1, 2): lambda x: (4 * PI2 + x[0] ** 2 + x[1] ** 2) * (12 * PI2 + x[0] ** 2 + x[1] ** 2) / 192,
    (0, 5): lambda x: (
        sum(t**4 for t in x) / 8
        + sum(x[i] ** 2 * x[j] ** 2 for i in range(5) for j in range(i + 1, 5)) / 2
        + 3 * PI2 * sum(t * t for t in x)
        + 10 * PI2**2
    ),
}
KNOWN_CLOSED = {
    (2, 0): Fraction(43, 2160),
    (3, 0): Fraction(176557, 1209600),
    (2, 1): Fraction(29, 192),
    (0, 6): Fraction(244, 3),
}


def test_pants_volume_is_one(table):
    assert table.polynomial(0, 3).coeffs == {(0, 0, 0): Fraction(1)}
    assert wp.evaluate(table(0, 3), (1.0, 2.0, 3.0)) == 1.0


@pytest.mark.parametrize("gn", sorted(KNOWN))
def test_known_polynomials(table, gn):
    poly = table(*gn)
    for x in [(0.0,) * gn[1], tuple(0.5 + i for i in range(gn[1])), (3.0,) * gn[1]]:
        assert wp.evaluate(poly, x) == pytest.approx(KNOWN[gn](x), rel=1e-13)


@pytest.mark.parametrize("gn", sorted(KNOWN_CLOSED))
def test_known_constants(table, gn):
    assert table.constant(*gn) == KNOWN_CLOSED[gn]
    assert table(*gn).pi_power((0,) * gn[1]) == wp.dimension(*gn)


def test_evaluate_at_zero_is_constant(table):
    for g, n in [(1, 1), (1, 3), (2, 2)]:
        with mpmath.workdps(40):
            want = mpmath.mpf(table.constant(g, n).numerator) / table.constant(g, n).denominator
            want *= mpmath.pi ** (2 * wp.dimension(g, n))
        assert mpmath.almosteq(table.value(g, n, 40), want, rel_eps=mpmath.mpf(10) ** -35)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=4, max_size=4), st.permutations(range(4)))
def test_symmetric_in_boundaries(table, x, perm):
    poly = table(1, 4)
    y = [x[i] for i in perm]
    assert wp.evaluate(poly, y) == pytest.approx(wp.evaluate(poly, x), rel=1e-13)


def test_float_and_mp_evaluation_agree(table):
    poly = table(2, 2)
    x = (1.5, 4.0)
    assert wp.evaluate_many(poly, [x])[0] == pytest.approx(float(wp.evaluate(poly, x, precision=40)), rel=1e-13)


def test_two_routes_agree():
    a, b = VolumeTable(9, "max"), VolumeTable(9, "min")
    for gn in a.stable_pairs():
        assert a(*gn).coeffs == b(*gn).coeffs, gn


def test_budget_and_stability():
    t = VolumeTable(4)
    with pytest.raises(VolumeError, match="not hyperbolic"):
        t(0, 2)
    with pytest.raises(VolumeError, match="budget"):
        t(2, 2)
    # closed volumes need V_{g,1} in budget
    assert t.in_budget(2, 0) and not t.in_budget(3, 0)


def test_growth_checks_at_small_budget():
    rep = wp.check_volume_lemmas(6, table=VolumeTable(6, "max"), dual=VolumeTable(6, "min"))
    assert rep.ok
    assert not rep.dual_path_mismatches
    assert len(rep.checked_pairs) > 10
    assert rep.sinh_fitted_c  # fitted constants exist for genus >= 1


def test_ratio_approaches_four_pi_squared(table):
    # V_{g,n+1} / (2 g V_{g,n}) with n = 1, getting closer to 4 pi^2 as g grows
    devs = []
    for g in (1, 2, 3):
        r = table.value(g, 2) / (2 * g * table.value(g, 1))
        devs.append(abs(float(r) / (4 * PI2) - 1))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 0.25


def test_closed_against_two_boundary_ratio(table):
    # the ratio of V_{g,n+4} to V_{g+1,n+2} stays below one by the pi^2 enclosure
    lo, hi = wp.pi_squared_enclosure()
    for g, n in [(0, 0), (0, 1), (1, 0)]:
        q = table.constant(g, n + 4) / table.constant(g + 1, n + 2)
        assert q <= lo


def test_pi_squared_enclosure():
    lo, hi = wp.pi_squared_enclosure(40)
    assert hi - lo == Fraction(1, 10**40)
    with mpmath.workdps(60):
        p = mpmath.pi**2
        assert mpmath.mpf(lo.numerator) / lo.denominator < p < mpmath.mpf(hi.numerator) / hi.denominator


def test_sum_single_term(table):
    # g + 1 - k = 2 leaves only g1 = g2 = 1
    lhs, rhs, ratio = wp.sum_asymptotics(b=1, k=2, C=0.5, g=3, table=table)
    with mpmath.workdps(30):
        want = mpmath.exp(0.5) * table.value(1, 2) ** 2
        assert mpmath.almosteq(lhs, want, rel_eps=mpmath.mpf(10) ** -25)
        assert mpmath.almosteq(rhs, table.value(3, 0) / 9, rel_eps=mpmath.mpf(10) ** -25)


def test_sum_rejects_large_C(table):
    with pytest.raises(VolumeError):
        wp.sum_asymptotics(0, 1, 2 * math.log(2), 3, table)


def test_tilde_w_parity():
    assert wp.tilde_w(1) == (1, 1)
    assert wp.tilde_w(2) == (1, 2)
    assert wp.tilde_w(7) == (4, 1)
    assert wp.tilde_w(8) == (4, 2)
    for k in range(1, 30):
        g, n = wp.tilde_w(k)
        # area 2 pi (2g - 2 + n) equals 2 pi k or 2 pi (k + 1)
        assert 2 * g - 2 + n in (k, k + 1)
    with pytest.raises(VolumeError):
        wp.tilde_w(0)


def test_export_roundtrip(table):
    polys = [table(*gn) for gn in [(0, 3), (1, 1), (0, 5), (2, 0), (1, 3)]]
    back = wp.import_table(wp.export_table(polys))
    for p in polys:
        assert back[(p.g, p.n)] == p


def test_import_rejects_bad_records():
    with pytest.raises(VolumeError, match="line 2"):
        wp.import_table("# header\n1 1 | 1 | x | 48 | 0\n")
    with pytest.raises(VolumeError, match="pi power"):
        wp.import_table("1 1 | 1 | 1 | 48 | 3\n")
