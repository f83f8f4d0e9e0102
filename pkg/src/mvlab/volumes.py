"""Volumes, their closed forms, and area Siegel-Veech constants.

Every quantity here is an exact rational multiple of a (half-integer)
power of pi, carried by PiScaled. Numeric output happens only on
request, at a stated precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath as mp

from .agn import a_direct
from .exact import bernoulli, double_factorial
from .genus import coeffs_C

__all__ = [
    "PiScaled",
    "volume",
    "volume_closed_g0",
    "volume_closed_g1",
    "lambda_g_value",
    "cg_seq",
    "kappa",
    "sv_constant",
]


@dataclass(frozen=True)
class PiScaled:
    """An exact value coeff * pi^(pi_half_exponent / 2)."""

    coeff: Fraction
    pi_half_exponent: int

    def to_mpf(self, bits: int = 320) -> mp.mpf:
        if bits < 64:
            raise ValueError("precision below 64 bits is rejected")
        with mp.workprec(bits):
            return +(mp.mpf(self.coeff.numerator) / self.coeff.denominator
                     * mp.pi ** (mp.mpf(self.pi_half_exponent) / 2))

    def __str__(self) -> str:
        e = self.pi_half_exponent
        if e == 0 or self.coeff == 0:
            return str(self.coeff)
        power = str(e // 2) if e % 2 == 0 else f"({e}/2)"
        return f"{self.coeff} * pi^{power}"


def volume(g: int, n: int) -> PiScaled:
    """Total mass of the (g, n) stratum in its standard normalization.

    Requires 2g - 2 + n > 0. The (0, 3) case sits outside the general
    factorial expression and is the constant 4.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"no stratum for (g, n) = ({g}, {n})")
    if (g, n) == (0, 3):
        return PiScaled(Fraction(4), 0)
    coeff = (
        Fraction(2) ** (2 * g + 1)
        * Fraction(factorial(4 * g - 4 + n), factorial(6 * g - 7 + 2 * n))
        * a_direct(g, n)
    )
    return PiScaled(coeff, 12 * g - 12 + 4 * n)


def volume_closed_g0(n: int) -> PiScaled:
    """Genus-zero closed form pi^(2n-6) / 2^(n-5), for n >= 3."""
    if n < 3:
        raise ValueError("genus-zero strata need n >= 3")
    return PiScaled(Fraction(2) ** (5 - n), 4 * n - 12)


def volume_closed_g1(n: int) -> PiScaled:
    """Genus-one closed form, for n >= 1."""
    if n < 1:
        raise ValueError("genus-one strata need n >= 1")
    coeff = (
        Fraction(factorial(n), double_factorial(2 * n - 1))
        + Fraction(2 * n, (2 * n - 1) * 2**n)
    ) / 3
    return PiScaled(coeff, 4 * n)


def lambda_g_value(g: int) -> Fraction:
    """Closed form for the top coefficient C_{g,g}, g >= 2.

    (2^(2g-1) - 1) / 2^(2g-1) * (4g-7)!! * |B_2g| / (2g)!.
    """
    if g < 2:
        raise ValueError("defined for g >= 2")
    return (
        Fraction(2 ** (2 * g - 1) - 1, 2 ** (2 * g - 1))
        * double_factorial(4 * g - 7)
        * abs(bernoulli(2 * g))
        / factorial(2 * g)
    )


def cg_seq(gmax: int) -> list[Fraction]:
    """The integer sequence c_g entering the bottom coefficient C_{g,0}.

    Seeds c_0 = -1, c_1 = 2, c_2 = 98; the quadratic recursion applies
    from g = 3 on.
    """
    if gmax < 0:
        raise ValueError("gmax must be nonnegative")
    c = [Fraction(-1), Fraction(2), Fraction(98)][: gmax + 1]
    for g in range(3, gmax + 1):
        val = 50 * (g - 1) ** 2 * c[g - 1]
        val += sum((c[h] * c[g - h] for h in range(2, g - 1)), Fraction(0)) / 2
        c.append(val)
    return c


def _gamma_half(num2: int) -> tuple[Fraction, bool]:
    """Gamma(num2 / 2) as (rational, carries_sqrt_pi)."""
    if num2 % 2 == 0:
        if num2 < 2:
            raise ValueError("pole of Gamma")
        return Fraction(factorial(num2 // 2 - 1)), False
    if num2 >= 1:
        m = (num2 - 1) // 2
        return Fraction(double_factorial(2 * m - 1), 2**m), True
    if num2 == -1:
        return Fraction(-2), True
    raise ValueError("half-integer Gamma below -1/2 not needed here")


def kappa(g: int) -> PiScaled:
    """Large-n scale factor: volume(g, n) ~ kappa(g) n^(g/2) pi^(2n) / 2^n."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    cg = cg_seq(g)[g]
    gam, half = _gamma_half(5 * g - 1)
    coeff = Fraction(64) * cg / (Fraction(384) ** g * gam)
    return PiScaled(coeff, 12 * g - 11 - (1 if half else 0))


def sv_constant(g: int, n: int, a_source=a_direct) -> PiScaled:
    """Area Siegel-Veech constant of the (g, n) stratum, a multiple of pi^-2.

    Combines neighboring table entries; undefined when a_{g,n} = 0.
    a_source lets callers swap in another exact evaluation of the same
    table (the asymptotics runs use the series fast path).
    """
    a = a_source(g, n)
    if a == 0:
        raise ValueError(f"a_({g},{n}) vanishes; no area constant")
    bracket = Fraction(0)
    if n >= 2:
        bracket += n * (n - 1) * a_source(g, n - 1)
    bracket += a_source(g - 1, n + 2) if g >= 1 else Fraction(0)
    for g1 in range(g + 1):
        for n1 in range(1, n + 2):
            g2, n2 = g - g1, n + 2 - n1
            if 3 * g1 - 3 + n1 <= 0 or 3 * g2 - 3 + n2 <= 0:
                continue
            bracket += comb(n, n1 - 1) * a_source(g1, n1) * a_source(g2, n2)
    return PiScaled(bracket / (4 * a), -4)
