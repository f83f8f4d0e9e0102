import random
from fractions import Fraction

import pytest
from mpmath import mp

from mvlab.asym import (
    compare_report,
    conjectured_C,
    conjectured_m,
    estimate_C,
    estimate_m,
    normalize_vol,
    richardson_fit,
)
from mvlab.genus import agn_from_series


def test_normalize_vol_reference_point():
    r = normalize_vol(2, 0, Fraction(1, 96), 320)
    with mp.workprec(320):
        # independent route: the prefactor collapses to 27/81920 * pi^7
        want = mp.mpf(27) / 81920 * mp.pi**7
        assert abs(r.value - want) < mp.mpf(2) ** -250
        assert abs(r.value - mp.mpf("0.99545797")) < 1e-7


def test_normalize_vol_positive_and_converging():
    r11 = normalize_vol(1, 1, Fraction(1, 12))
    assert r11.value > 0
    devs = [
        abs(normalize_vol(g, 0, agn_from_series(g, 0)).value - 1)
        for g in (4, 8)
    ]
    assert devs[1] < devs[0]


def test_normalize_vol_rejections():
    with pytest.raises(ValueError):
        normalize_vol(0, 3, Fraction(1))
    with pytest.raises(ValueError):
        normalize_vol(0, 2, Fraction(0))
    with pytest.raises(ValueError):
        normalize_vol(1, 1, Fraction(1, 12), precision_bits=32)


def test_richardson_recovers_random_rational_series():
    rng = random.Random(8371)
    for K in range(1, 7):
        cs = [
            Fraction(rng.choice([-1, 1]) * rng.randint(1, 1000), rng.randint(1, 64))
            for _ in range(K + 1)
        ]
        samples = [
            (g, sum(c / Fraction(g) ** k for k, c in enumerate(cs)))
            for g in range(20, 61)
        ]
        fit = richardson_fit(samples, K)
        assert fit.window == (60 - K, 60)
        with mp.workprec(320):
            for k, c in enumerate(cs):
                want = mp.mpf(c.numerator) / c.denominator
                rel = abs(fit.coefficients[k].value - want) / abs(want)
                assert rel < mp.mpf("1e-15"), (K, k)
                rel_ls = abs(fit.ls_coefficients[k].value - want) / abs(want)
                assert rel_ls < mp.mpf("1e-12"), (K, k)


def test_richardson_constant_sequence():
    fit = richardson_fit([(g, 7) for g in range(20, 42)], 3)
    with mp.workprec(320):
        assert abs(fit.coefficients[0].value - 7) < mp.mpf("1e-80")
        for k in range(1, 4):
            assert abs(fit.coefficients[k].value) < mp.mpf("1e-75")


def test_richardson_interpolates_exactly_on_square_window():
    K = 4
    rng = random.Random(99)
    vals = {g: Fraction(rng.randint(1, 9), g) for g in range(50, 50 + K + 2)}
    fit = richardson_fit(list(vals.items()), K)
    assert fit.shift_used == 1
    with mp.workprec(320):
        for g in range(51, 51 + K + 1):
            model = sum(
                fit.coefficients[k].value / mp.mpf(g) ** k for k in range(K + 1)
            )
            want = mp.mpf(vals[g].numerator) / vals[g].denominator
            assert abs(model - want) < mp.mpf("1e-80"), g


def test_richardson_minimal_window_has_no_bars():
    fit = richardson_fit([(g, Fraction(1, g)) for g in (30, 31, 32)], 2)
    assert fit.shift_used == 0
    assert all(b.value == 0 for b in fit.error_estimates)
    assert [c.value for c in fit.ls_coefficients] == [
        c.value for c in fit.coefficients
    ]


def test_richardson_input_errors():
    with pytest.raises(ValueError):
        richardson_fit([(20, 1), (20, 2), (21, 3)], 1)
    with pytest.raises(ValueError):
        richardson_fit([(20, 1), (21, 2)], 2)


def test_estimate_requires_room():
    with pytest.raises(ValueError):
        estimate_m(0, 15, 3)
    with pytest.raises(ValueError):
        estimate_C(0, 19, 5)


def test_window_stability():
    # dropping gmax by 4 decouples the comparison from the bar window
    f40 = estimate_m(0, 40, 3)
    f36 = estimate_m(0, 36, 3)
    with mp.workprec(320):
        for k in range(4):
            d = abs(f40.coefficients[k].value - f36.coefficients[k].value)
            assert d <= 10 * f40.error_estimates[k].value, k


def test_precision_sufficiency():
    lo = estimate_m(0, 40, 3, 320)
    hi = estimate_m(0, 40, 3, 640)
    with mp.workprec(640):
        for k in range(4):
            d = abs(mp.mpf(0) + lo.coefficients[k].value - hi.coefficients[k].value)
            assert d < lo.error_estimates[k].value, k


def test_second_coefficient_is_cubic_in_n():
    # least-squares cubic through n = 0..6 must predict n = 7 within
    # ten times the combined window bars
    fits = {n: estimate_m(n, 60, 5) for n in range(8)}
    with mp.workprec(320):
        X = mp.matrix([[mp.mpf(n) ** j for j in range(4)] for n in range(7)])
        y = mp.matrix([fits[n].coefficients[2].value for n in range(7)])
        beta, _ = mp.qr_solve(X, y)
        pred = sum(beta[j] * mp.mpf(7) ** j for j in range(4))
        got = fits[7].coefficients[2].value
        v7 = mp.matrix([mp.mpf(7) ** j for j in range(4)])
        w = X * mp.lu_solve(X.T * X, v7)
        combined = fits[7].error_estimates[2].value + sum(
            abs(w[n]) * fits[n].error_estimates[2].value for n in range(7)
        )
        assert abs(pred - got) <= 10 * combined


def test_conjectured_polynomials():
    with mp.workprec(320):
        assert abs(conjectured_m(2, 0).eval_mpf() - mp.mpf("0.0103576")) < 1e-6
        assert abs(conjectured_C(1, 0).eval_mpf() - mp.mpf("0.2842695")) < 1e-6
    for n in (0, 3, 11):
        assert conjectured_m(0, n).m_coeffs == (Fraction(1),)
        assert conjectured_C(0, n).m_coeffs == (Fraction(1, 4),)
    assert conjectured_m(1, 5).m_coeffs == (Fraction(0), Fraction(1))
    with pytest.raises(ValueError):
        conjectured_m(4, 0)
    with pytest.raises(ValueError):
        conjectured_C(-1, 0)


def test_compare_report_empty():
    rep = compare_report([], 60, 5)
    assert rep.rows == ()
    assert rep.passed


def test_compare_report_short_window_degrades_gracefully():
    rep = compare_report([0], 20, 5, target="vol")
    assert len(rep.rows) == 4
    for row in rep.rows:
        assert float(row.error_bar) >= 0
        assert row.reference


def test_compare_report_rejects_bad_target():
    with pytest.raises(ValueError):
        compare_report([0], 60, 5, target="everything")
