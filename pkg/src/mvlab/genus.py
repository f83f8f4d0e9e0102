"""Genus-by-genus Laurent data in T and everything derived from it.

Two independent recursions produce the genus profiles u^[g] of the second
x-derivative of the free energy: one goes through the auxiliary profiles
tu^[g] and a Bernoulli-weighted change of variables, the other is a
self-contained double sum. Their agreement is a core consistency check.
From u^[g] we extract the coefficients C_{g,j}, run an independent
recursion for c_{g,j} = C_{g,j}*(5g-5-j)*(5g-3-j), rebuild the numbers
a_{g,n} via a rising-factorial formula, and check the genus blocks H_g
against a second-order ODE in x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import (
    GenusBlock,
    LaurentT,
    bernoulli,
    double_factorial,
    laurent_dt,
    pochhammer,
)

__all__ = [
    "GenusCoeffs",
    "tilde_u",
    "u_from_tilde",
    "u_direct",
    "coeffs_C",
    "kazarian_c",
    "agn_from_series",
    "closed_H",
    "hg_block",
    "genus_ode_residual",
]


class SupportError(Exception):
    """Genus profile has a T-exponent outside its proven support."""


def _check_support(p: LaurentT, g: int, what: str, exact: bool) -> None:
    if g < 2:
        return
    lo, hi = -(5 * g - 1), -(4 * g - 1)
    sup = p.support()
    if not sup or sup[0] < lo or sup[-1] > hi:
        raise SupportError(f"{what}[{g}] supported on {sup}, expected within [{lo},{hi}]")
    if exact and sup != list(range(lo, hi + 1)):
        raise SupportError(f"{what}[{g}] support {sup} is not exactly [{lo},{hi}]")


_tilde: list[LaurentT] = [LaurentT({0: 1, 1: -1})]


def tilde_u(g: int) -> LaurentT:
    """Profile tu^[g], by the Bernoulli-weighted genus recursion."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    while len(_tilde) <= g:
        gg = len(_tilde)
        acc = LaurentT.zero()
        for g1 in range(1, gg):
            acc = acc + _tilde[g1] * _tilde[gg - g1]
        acc = acc.scale(Fraction(1, 2))
        for g1 in range(1, gg + 1):
            w = abs(bernoulli(2 * g1)) / factorial(2 * g1)
            acc = acc + laurent_dt(_tilde[gg - g1], 2 * g1).scale(w)
        res = acc * LaurentT.monomial(-1)
        _check_support(res, gg, "tu", exact=False)
        _tilde.append(res)
    return _tilde[g]


_u_tilde_path: dict[int, LaurentT] = {}


def u_from_tilde(g: int) -> LaurentT:
    """Profile u^[g] assembled from the tu tower."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g not in _u_tilde_path:
        acc = tilde_u(g)
        for g1 in range(1, g + 1):
            w = (
                Fraction(2 ** (2 * g1 - 1) - 1, 2 ** (2 * g1 - 1))
                * abs(bernoulli(2 * g1))
                / factorial(2 * g1)
            )
            acc = acc + laurent_dt(tilde_u(g - g1), 2 * g1).scale(w)
        _check_support(acc, g, "u", exact=True)
        _u_tilde_path[g] = acc
    return _u_tilde_path[g]


_u_direct: list[LaurentT] = [LaurentT({0: 1, 1: -1})]
_u_direct_dt: dict[tuple[int, int], LaurentT] = {}


def _dt_u(g: int, k: int) -> LaurentT:
    if (g, k) not in _u_direct_dt:
        _u_direct_dt[(g, k)] = laurent_dt(_u_direct[g], k)
    return _u_direct_dt[(g, k)]


def u_direct(g: int) -> LaurentT:
    """Profile u^[g] by the self-contained double-sum recursion.

    The quadratic sum runs over ordered pairs (g1, g2) with
    0 <= g1, g2 <= g-1 and derivative orders j1, j2 >= 0 satisfying
    g1 + g2 + j1 + j2 = g, weighted by (-1/4)^(j1+j2) and odd factorials.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    while len(_u_direct) <= g:
        gg = len(_u_direct)
        quad = LaurentT.zero()
        for g1 in range(gg):
            for g2 in range(min(gg - g1, gg - 1) + 1):
                jtot = gg - g1 - g2
                for j1 in range(jtot + 1):
                    j2 = jtot - j1
                    w = Fraction(
                        (-1) ** jtot,
                        4**jtot * factorial(2 * j1 + 1) * factorial(2 * j2 + 1),
                    )
                    quad = quad + (_dt_u(g1, 2 * j1) * _dt_u(g2, 2 * j2)).scale(w)
        lin = LaurentT.zero()
        for j in range(1, gg + 1):
            w = Fraction((-1) ** j, 4**j * factorial(2 * j))
            lin = lin + _dt_u(gg - j, 2 * j).scale(w)
        res = (quad.scale(Fraction(1, 2)) - lin) * LaurentT.monomial(-1)
        _check_support(res, gg, "u", exact=True)
        _u_direct.append(res)
    return _u_direct[g]


@dataclass(frozen=True)
class GenusCoeffs:
    g: int
    C: tuple[Fraction, ...]


def coeffs_C(g: int) -> GenusCoeffs:
    """C_{g,j} for j = 0..g, read off the u^[g] profile.

    C_{g,j} is the coefficient of T^-(5g-1-j) in u^[g] divided by
    (5g-3-j)*(5g-5-j). The support of u^[g] must be exactly the g+1
    exponents -(5g-1)..-(4g-1); anything else is an internal error.
    """
    if g < 2:
        raise ValueError("coeffs_C needs g >= 2")
    u = u_from_tilde(g)
    vals = []
    for j in range(g + 1):
        c = u.coeff(-(5 * g - 1 - j))
        vals.append(c / ((5 * g - 3 - j) * (5 * g - 5 - j)))
    return GenusCoeffs(g, tuple(vals))


_kaz_rows: dict[int, tuple[Fraction, ...]] = {1: (Fraction(1, 12), Fraction(1, 24))}


def kazarian_c(g: int) -> tuple[Fraction, ...]:
    """Row c_{g,j}, j = 0..g, of the quadratic genus recursion.

    Seeded at g = 1 with (1/12, 1/24), the two coefficients of u^[1].
    The linear-in-row factor is (g+1-j)/(5g-2-j) acting on c_{g,j-1}.
    """
    if g < 1:
        raise ValueError("kazarian_c needs g >= 1")
    for gg in range(2, g + 1):
        if gg in _kaz_rows:
            continue
        prev = _kaz_rows[gg - 1]
        row: list[Fraction] = []
        for j in range(gg + 1):
            t = Fraction(0)
            if j >= 1:
                t += Fraction(gg + 1 - j, 5 * gg - 2 - j) * row[j - 1]
            if j <= gg - 1:
                t += Fraction((5 * gg - 6 - j) * (5 * gg - 4 - j), 12) * prev[j]
            conv = Fraction(0)
            for g1 in range(1, gg):
                g2 = gg - g1
                r1, r2 = _kaz_rows[g1], _kaz_rows[g2]
                for j1 in range(j + 1):
                    j2 = j - j1
                    if j1 <= g1 and j2 <= g2:
                        conv += r1[j1] * r2[j2]
            row.append(t + conv / 2)
        _kaz_rows[gg] = tuple(row)
    return _kaz_rows[g]


def agn_from_series(g: int, n: int) -> Fraction:
    """a_{g,n} rebuilt from genus data, no table recursion involved.

    Genus 0 and 1 come from derivatives of the closed genus blocks;
    genus >= 2 uses 2^n * sum_j C_{g,j} * rising((5g-5-j)/2, n).
    """
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        return Fraction(0)
    if g == 0:
        return Fraction(double_factorial(2 * n - 7)) if n >= 3 else Fraction(0)
    if g == 1:
        return Fraction(2 ** (n - 1) * factorial(n - 1) + double_factorial(2 * n - 3), 24)
    C = coeffs_C(g).C
    tot = Fraction(0)
    for j in range(g + 1):
        tot += C[j] * pochhammer(Fraction(5 * g - 5 - j, 2), n)
    return 2**n * tot


def closed_H(g: int) -> GenusBlock:
    """The closed genus blocks H_0, H_1, H_2."""
    if g == 0:
        return GenusBlock(
            Fraction(0),
            LaurentT(
                {
                    0: Fraction(1, 40),
                    2: Fraction(-1, 12),
                    4: Fraction(1, 8),
                    5: Fraction(-1, 15),
                }
            ),
        )
    if g == 1:
        return GenusBlock(
            Fraction(1, 24), LaurentT({0: Fraction(1, 24), 1: Fraction(-1, 24)})
        )
    if g == 2:
        return GenusBlock(
            Fraction(0),
            LaurentT(
                {
                    -5: Fraction(7, 1440),
                    -4: Fraction(5, 1152),
                    -3: Fraction(7, 5760),
                }
            ),
        )
    raise ValueError("closed form available only for g in {0, 1, 2}")


def hg_block(g: int) -> GenusBlock:
    """H_g as a genus block; closed forms below genus 2, C data above."""
    if g <= 1:
        return closed_H(g)
    C = coeffs_C(g).C
    return GenusBlock(
        Fraction(0), LaurentT({-(5 * g - 5 - j): C[j] for j in range(g + 1)})
    )


def genus_ode_residual(g: int) -> GenusBlock:
    """Left side of the genus ODE; identically zero when the tower is right.

    x*H_g'' + (2g - 3/2)*H_g' - (1/4)*sum_{g1+g2=g} H_g1''*H_g2''
    - (1/24)*H_{g-1}''''.
    """
    if g < 2:
        raise ValueError("the ODE check starts at g = 2")
    blocks = {h: hg_block(h) for h in range(g + 1)}
    d1 = blocks[g].ddx()
    d2 = d1.ddx()
    res = d2.laurent.times_x() + d1.laurent.scale(Fraction(4 * g - 3, 2))
    quad = LaurentT.zero()
    for g1 in range(g + 1):
        a = blocks[g1].ddx_n(2).laurent
        b = blocks[g - g1].ddx_n(2).laurent
        quad = quad + a * b
    res = res - quad.scale(Fraction(1, 4))
    res = res - blocks[g - 1].ddx_n(4).laurent.scale(Fraction(1, 24))
    return GenusBlock(Fraction(0), res)
