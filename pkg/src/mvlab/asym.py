"""Numerical extraction of 1/g expansion coefficients.

The exact table supplies r(g, n) (normalized volumes) or area constants
at fixed n for a run of genera; a windowed polynomial-in-1/g fit pulls
out the expansion coefficients, with error bars from re-fitting on a
shifted window. The results are compared against the conjectured
polynomials in n and M = -pi^2/144.

Everything rational is carried exactly until the single rounding into
mpmath floats at a caller-chosen precision; the fits themselves run at
that same precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath as mp

from .exact import BigFloat
from .genus import agn_from_series
from .volumes import sv_constant

__all__ = [
    "MPoly",
    "AsymFit",
    "normalize_vol",
    "richardson_fit",
    "estimate_m",
    "estimate_C",
    "conjectured_m",
    "conjectured_C",
    "CompareRow",
    "CompareReport",
    "compare_report",
]

_a_series = lru_cache(maxsize=None)(agn_from_series)


@dataclass(frozen=True)
class MPoly:
    """A polynomial in M = -pi^2/144 with rational coefficients.

    m_coeffs[i] multiplies M^i. Instances here come from specializing
    the conjectured two-variable polynomials at an integer n.
    """

    m_coeffs: tuple

    def eval_mpf(self, bits: int = 320) -> mp.mpf:
        with mp.workprec(bits):
            m_val = -(mp.pi**2) / 144
            acc = mp.mpf(0)
            for c in reversed(self.m_coeffs):
                acc = acc * m_val + mp.mpf(c.numerator) / c.denominator
            return +acc

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.m_coeffs):
            if c == 0:
                continue
            parts.append(str(c) if i == 0 else f"({c})*M^{i}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AsymFit:
    """Result of a windowed 1/g fit.

    coefficients come from exact interpolation on the top K+1 samples;
    ls_coefficients from least squares over a wider top window. The
    error estimates are coefficient-wise differences against a fit on
    a window shifted down by shift_used (zeros when no shift fits).
    """

    coefficients: tuple
    error_estimates: tuple
    ls_coefficients: tuple
    window: tuple
    K: int
    shift_used: int
    precision_bits: int


def normalize_vol(g: int, n: int, a: Fraction, precision_bits: int = 320) -> BigFloat:
    """r(g, n): the volume relative to its conjectured leading behavior.

    Exact rational prefactor first, one rounding at the end. Tends to 1
    as g grows at fixed n.
    """
    if 2 * g - 2 + n <= 0 or (g, n) == (0, 3):
        raise ValueError(f"no normalization at (g, n) = ({g}, {n})")
    if precision_bits < 64:
        raise ValueError("precision below 64 bits rejected")
    rat = (
        Fraction(a)
        * factorial(4 * g - 4 + n)
        * Fraction(3) ** (4 * g + n - 4)
        / (factorial(6 * g - 7 + 2 * n) * Fraction(2) ** (10 * g + 4 * n - 11))
    )
    with mp.workprec(precision_bits):
        val = +(mp.mpf(rat.numerator) / rat.denominator * mp.pi ** (6 * g - 5 + 2 * n))
    return BigFloat(val, precision_bits)


def _sample_value(s) -> mp.mpf:
    # Never reconvert an existing mpf: mp.mpf(x) rounds to the ambient
    # context precision, which may be far below the sample's own.
    if isinstance(s, BigFloat):
        return s.value
    if isinstance(s, mp.mpf):
        return s
    if isinstance(s, Fraction):
        return mp.mpf(s.numerator) / s.denominator
    return mp.mpf(s)


def _solve_window(pts, K: int):
    rows = [[mp.mpf(1) / mp.mpf(g) ** k for k in range(K + 1)] for g, _ in pts]
    rhs = mp.matrix([v for _, v in pts])
    try:
        sol = mp.lu_solve(mp.matrix(rows), rhs)
    except ZeroDivisionError:
        raise ValueError("singular design matrix")
    return [sol[i] for i in range(K + 1)]


def richardson_fit(samples, K: int, precision_bits: int = 320) -> AsymFit:
    """Fit sum_{k<=K} c_k / g^k to the top of a sampled sequence.

    samples: iterable of (g, value) with distinct g; value may be a
    BigFloat or anything mpmath accepts. Needs at least K+1 samples;
    the square fit uses the top K+1, the least-squares cross-check the
    top 2K (when available), and error bars come from sliding the
    square window down by up to 5 samples.
    """
    with mp.workprec(precision_bits):
        pts = sorted(((int(g), _sample_value(v)) for g, v in samples), key=lambda t: t[0])
        if len({g for g, _ in pts}) != len(pts):
            raise ValueError("duplicate g values in samples")
        if len(pts) < K + 1:
            raise ValueError(f"need at least {K + 1} samples for K = {K}")
        top = pts[-(K + 1):]
        coeffs = _solve_window(top, K)

        shift = min(5, len(pts) - (K + 1))
        if shift > 0:
            shifted = pts[-(K + 1) - shift : len(pts) - shift]
            alt = _solve_window(shifted, K)
            bars = [abs(c - a) for c, a in zip(coeffs, alt)]
        else:
            bars = [mp.mpf(0)] * (K + 1)

        ls_n = min(2 * K, len(pts))
        if ls_n > K + 1:
            wide = pts[-ls_n:]
            rows = [[mp.mpf(1) / mp.mpf(g) ** k for k in range(K + 1)] for g, _ in wide]
            rhs = mp.matrix([v for _, v in wide])
            ls, _ = mp.qr_solve(mp.matrix(rows), rhs)
            ls_coeffs = [ls[i] for i in range(K + 1)]
        else:
            ls_coeffs = list(coeffs)

    wrap = lambda xs: tuple(BigFloat(x, precision_bits) for x in xs)
    return AsymFit(
        coefficients=wrap(coeffs),
        error_estimates=wrap(bars),
        ls_coefficients=wrap(ls_coeffs),
        window=(top[0][0], top[-1][0]),
        K=K,
        shift_used=shift,
        precision_bits=precision_bits,
    )


def _sample_genera(gmax: int, K: int) -> range:
    lo = gmax - max(K + 6, 2 * K)
    return range(max(2, lo), gmax + 1)


def estimate_m(n: int, gmax: int, K: int, precision_bits: int = 320) -> AsymFit:
    """Fit the normalized-volume expansion at fixed n."""
    if gmax < 2 * K + 10:
        raise ValueError("gmax must be at least 2K + 10")
    samples = [
        (g, normalize_vol(g, n, _a_series(g, n), precision_bits))
        for g in _sample_genera(gmax, K)
    ]
    return richardson_fit(samples, K, precision_bits)


def estimate_C(n: int, gmax: int, K: int, precision_bits: int = 320) -> AsymFit:
    """Fit the area-constant expansion at fixed n."""
    if gmax < 2 * K + 10:
        raise ValueError("gmax must be at least 2K + 10")
    samples = []
    with mp.workprec(precision_bits):
        for g in _sample_genera(gmax, K):
            c = sv_constant(g, n, a_source=_a_series)
            val = +(mp.mpf(c.coeff.numerator) / c.coeff.denominator / mp.pi**2)
            samples.append((g, BigFloat(val, precision_bits)))
    return richardson_fit(samples, K, precision_bits)


def _mpoly(*rows) -> MPoly:
    return MPoly(tuple(Fraction(r) for r in rows))


def conjectured_m(k: int, n: int) -> MPoly:
    """The published volume-expansion polynomial m_k at integer n, k <= 3."""
    if not 0 <= k <= 3:
        raise ValueError("published coefficients stop at k = 3")
    if k == 0:
        return _mpoly(1)
    if k == 1:
        return _mpoly(0, 1)
    if k == 2:
        return _mpoly(
            0,
            Fraction(n**3, 24) - Fraction(3 * n**2, 8) + Fraction(4 * n, 6) + Fraction(1, 2),
            Fraction(-17 * n, 6) + Fraction(19, 2),
        )
    return _mpoly(
        0,
        -Fraction(8 * n**4, 288) + Fraction(17 * n**3, 48)
        - Fraction(860 * n**2, 576) + Fraction(104 * n, 48) - Fraction(55, 180),
        -Fraction(27 * n**4, 288) + Fraction(65 * n**3, 48)
        - Fraction(1890 * n**2, 576) - Fraction(373 * n, 48) + Fraction(3615, 180),
        Fraction(14256 * n**2, 576) - Fraction(6156 * n, 48) + Fraction(28650, 180),
        -Fraction(126846, 180),
    )


def conjectured_C(k: int, n: int) -> MPoly:
    """The published area-constant polynomial C_k at integer n, k <= 3."""
    if not 0 <= k <= 3:
        raise ValueError("published coefficients stop at k = 3")
    if k == 0:
        return _mpoly(Fraction(1, 4))
    if k == 1:
        return _mpoly(
            Fraction(n**2, 48) - Fraction(3 * n, 16) + Fraction(1, 4),
            Fraction(-1, 2),
        )
    if k == 2:
        return _mpoly(
            -Fraction(5 * n**3, 576) + Fraction(59 * n**2, 576)
            - Fraction(11 * n, 32) + Fraction(23, 72),
            -Fraction(12 * n**3, 576) + Fraction(180 * n**2, 576)
            - Fraction(6 * n, 32) + Fraction(15, 72),
            Fraction(72 * n, 32) - Fraction(648, 72),
        )
    return _mpoly(
        Fraction(4 * n**4, 1152) - Fraction(179 * n**3, 3456)
        + Fraction(929 * n**2, 3456) - Fraction(989 * n, 1728) + Fraction(295, 720),
        Fraction(17 * n**4, 1152) - Fraction(978 * n**3, 3456)
        + Fraction(5169 * n**2, 3456) - Fraction(4851 * n, 1728) + Fraction(1165, 720),
        Fraction(54 * n**4, 1152) - Fraction(3564 * n**3, 3456)
        + Fraction(13554 * n**2, 3456) + Fraction(4428 * n, 1728) - Fraction(16140, 720),
        -Fraction(42768 * n**2, 3456) + Fraction(192456 * n, 1728) - Fraction(105300, 720),
        Fraction(253692, 720),
    )


@dataclass(frozen=True)
class CompareRow:
    target: str
    n: int
    k: int
    estimate: str
    error_bar: str
    reference: str
    rel_deviation: str
    passed: bool


@dataclass(frozen=True)
class CompareReport:
    gmax: int
    K: int
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


# Tolerances keyed by expansion order; order three is judged by sign,
# order of magnitude, and error-bar overlap instead.
_TOL_M = {0: ("abs", 1e-8), 1: ("rel", 1e-5), 2: ("rel", 1e-3)}
_TOL_C = {0: ("abs", 1e-8), 1: ("rel", 1e-3), 2: ("rel", 1e-3)}


def _judge(k: int, est, bar, ref, tol_table) -> tuple[bool, mp.mpf]:
    dev = abs(est - ref)
    rel = dev / abs(ref) if ref != 0 else mp.inf
    if k <= 2:
        kind, tol = tol_table[k]
        return (dev < tol) if kind == "abs" else (rel < tol), rel
    same_sign = mp.sign(est) == mp.sign(ref)
    magnitude = abs(est) / abs(ref) if ref != 0 else mp.inf
    # Shift-window bars understate slow power-law truncation bias at the
    # top retained order; grant them the same factor 10 the window
    # stability check uses.
    overlap = dev <= 10 * bar
    return same_sign and mp.mpf("0.1") <= magnitude <= 10 and overlap, rel


def compare_report(
    n_list, gmax: int, K: int, target: str = "both", precision_bits: int = 320
) -> CompareReport:
    """Fit, then compare each coefficient against its published polynomial.

    One row per (target, n, k <= min(3, K)). target chooses normalized
    volumes ("vol"), area constants ("sv"), or both.
    """
    if target not in ("vol", "sv", "both"):
        raise ValueError("target must be vol, sv, or both")
    jobs = []
    if target in ("vol", "both"):
        jobs.append(("vol", estimate_m, conjectured_m, _TOL_M))
    if target in ("sv", "both"):
        jobs.append(("sv", estimate_C, conjectured_C, _TOL_C))
    rows = []
    with mp.workprec(precision_bits):
        for label, fit_fn, ref_fn, tol_table in jobs:
            for n in n_list:
                fit = fit_fn(n, gmax, K, precision_bits)
                for k in range(min(3, K) + 1):
                    est = fit.coefficients[k].value
                    bar = fit.error_estimates[k].value
                    ref = ref_fn(k, n).eval_mpf(precision_bits)
                    ok, rel = _judge(k, est, bar, ref, tol_table)
                    rows.append(
                        CompareRow(
                            target=label,
                            n=n,
                            k=k,
                            estimate=mp.nstr(est, 12),
                            error_bar=mp.nstr(bar, 3),
                            reference=mp.nstr(ref, 12),
                            rel_deviation=mp.nstr(rel, 3),
                            passed=ok,
                        )
                    )
    return CompareReport(gmax, K, tuple(rows))
