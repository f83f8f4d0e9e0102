"""The rational table a_{g,n}: two recursions, a build driver, persistence.

Both recursions determine the same numbers. The first steps down in n
through a binomially weighted quadratic term, the second is an
alternating-sign convolution. They share no code path, which is the
point: exact agreement between them (and the series reconstruction in
:mod:`mvlab.genus`) is the package's main internal evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

from .genus import agn_from_series

__all__ = [
    "a_direct",
    "a_alt",
    "AgnTable",
    "build_table",
    "save_table",
    "load_table",
    "TableFormatError",
]

HEADER = "# agn-table v1"

_BOUNDARY = {(0, 3): Fraction(1), (0, 4): Fraction(1)}


def _is_structural_zero(g: int, n: int) -> bool:
    return g < 0 or n < 0 or 2 * g - 2 + n <= 0


_direct: dict[tuple[int, int], Fraction] = {}


def a_direct(g: int, n: int) -> Fraction:
    """a_{g,n} by the binomial recursion in n.

    Valid for every (g, n); out-of-domain pairs are zero by convention.
    The recursion itself only reaches n >= 1, so the n = 0 column at
    g >= 2 is delegated to the genus-series reconstruction (the one
    spot where this path leans on another module; the alternating
    recursion has the same blind spot).
    """
    if _is_structural_zero(g, n):
        return Fraction(0)
    if (g, n) in _BOUNDARY:
        return _BOUNDARY[(g, n)]
    key = (g, n)
    if key in _direct:
        return _direct[key]
    if n == 0:
        val = agn_from_series(g, 0)
        _direct[key] = val
        return val
    denom = 4 * g - 4 + n
    quad = Fraction(0)
    for g1 in range(g + 1):
        g2 = g - g1
        for n1 in range(2, n + 2):
            n2 = n + 3 - n1
            if n2 < 2:
                continue
            if (g1, n1) == (0, 3) or (g2, n2) == (0, 3):
                continue
            if _is_structural_zero(g1, n1) or _is_structural_zero(g2, n2):
                continue
            quad += comb(n - 1, n1 - 2) * a_direct(g1, n1) * a_direct(g2, n2)
    val = (quad / 2 + Fraction(1, 12) * a_direct(g - 1, n + 3)) / denom
    _direct[key] = val
    return val


_alt: dict[tuple[int, int], Fraction] = {}
_alt_P: dict[tuple[int, int], Fraction] = {}

# 1/(4^j (2j+1)!) and 1/(4^j (2j)!) show up in every cell; cache them.
_w_odd: dict[int, Fraction] = {}
_w_even: dict[int, Fraction] = {}


def _wodd(j: int) -> Fraction:
    if j not in _w_odd:
        _w_odd[j] = Fraction((-1) ** j, 4**j * factorial(2 * j + 1))
    return _w_odd[j]


def _weven(j: int) -> Fraction:
    if j not in _w_even:
        _w_even[j] = Fraction((-1) ** j, 4**j * factorial(2 * j))
    return _w_even[j]


def _alt_lookup(g: int, n: int) -> Fraction:
    if _is_structural_zero(g, n):
        return Fraction(0)
    return _alt[(g, n)]


def _alt_P_at(gam: int, nu: int, skip_head: bool) -> Fraction:
    """Convolution kernel P_{gam,nu} = (1/nu!) sum_j w_j a_{gam-j, nu+2j+2}.

    With skip_head the j = 0 term is omitted; the caller uses that for
    the single entry that would reference the cell currently being
    computed (its convolution partner is identically zero, so nothing
    is lost).
    """
    if not skip_head and (gam, nu) in _alt_P:
        return _alt_P[(gam, nu)]
    tot = Fraction(0)
    for j in range(1 if skip_head else 0, gam + 1):
        tot += _wodd(j) * _alt_lookup(gam - j, nu + 2 * j + 2)
    tot /= factorial(nu)
    if not skip_head:
        _alt_P[(gam, nu)] = tot
    return tot


def _alt_cell(g: int, n: int) -> Fraction:
    q = n - 2
    conv = Fraction(0)
    for g1 in range(g + 1):
        for nu1 in range(q + 1):
            left = _alt_P_at(g1, nu1, skip_head=(g1, nu1) == (g, q))
            if left == 0:
                continue
            right = _alt_P_at(g - g1, q - nu1, skip_head=(g - g1, q - nu1) == (g, q))
            conv += left * right
    val = Fraction(factorial(q), 2) * conv
    for j in range(1, g + 1):
        val -= _weven(j) * _alt_lookup(g - j, q + 2 * j + 2)
    if q == 1 and g == 0:
        val += 1
    return val


def a_alt(g: int, n: int) -> Fraction:
    """a_{g,n} by the alternating-sign recursion; defined for n >= 2 only.

    Terms whose implicit factorial argument would go negative are
    skipped. The n < 2 columns are out of this recursion's domain.
    """
    if n < 2:
        raise ValueError("a_alt is defined for n >= 2")
    if g < 0:
        return Fraction(0)
    if _is_structural_zero(g, n):
        return Fraction(0)
    if (g, n) not in _alt:
        # Fill bottom-up: the cell (g, n) pulls in (g', n') with
        # g' <= g and n' <= n + 2*(g - g').
        for gg in range(g + 1):
            for nn in range(2, n + 2 * (g - gg) + 1):
                if _is_structural_zero(gg, nn) or (gg, nn) in _alt:
                    continue
                _alt[(gg, nn)] = _alt_cell(gg, nn)
    return _alt[(g, n)]


@dataclass(frozen=True)
class AgnTable:
    """Immutable map (g, n) -> a_{g,n} with the method that filled it."""

    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    method_tag: str = "direct"

    def value(self, g: int, n: int) -> Fraction:
        return self.entries[(g, n)]

    def __len__(self) -> int:
        return len(self.entries)


_METHODS = ("direct", "alt", "series")


def build_table(gmax: int, nmax: int, method: str = "direct") -> AgnTable:
    """Fill every cell g <= gmax, n <= nmax with the chosen method.

    Cells are filled genus by genus. Methods "direct" and "alt" fall
    back to the series reconstruction only on the columns their
    recursion cannot express (n = 0 for "direct" at g >= 2, n < 2 for
    "alt").
    """
    if gmax < 0 or nmax < 0:
        raise ValueError("table bounds must be nonnegative")
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {_METHODS}")
    entries: dict[tuple[int, int], Fraction] = {}
    for g in range(gmax + 1):
        for n in range(nmax + 1):
            if method == "direct":
                v = a_direct(g, n)
            elif method == "alt":
                v = a_alt(g, n) if n >= 2 else agn_from_series(g, n)
            else:
                v = agn_from_series(g, n)
            if 2 * g - 2 + n > 0 and v <= 0:
                raise AssertionError(f"a_({g},{n}) = {v} is not positive")
            entries[(g, n)] = v
    return AgnTable(entries, method)


class TableFormatError(Exception):
    pass


def save_table(table: AgnTable, path: str | Path) -> None:
    """Write the table as sorted text: one `g<TAB>n<TAB>p/q` line per cell."""
    lines = [HEADER]
    for (g, n) in sorted(table.entries):
        v = table.entries[(g, n)]
        lines.append(f"{g}\t{n}\t{v.numerator}/{v.denominator}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_table(path: str | Path) -> AgnTable:
    """Read a table written by save_table, validating as it goes.

    Rejects a bad or missing header, malformed lines, fractions not in
    lowest terms, and duplicate keys, naming the offending line.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        head = lines[0] if lines else "<empty file>"
        raise TableFormatError(f"line 1: expected header {HEADER!r}, got {head!r}")
    entries: dict[tuple[int, int], Fraction] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise TableFormatError(f"line {lineno}: expected 3 tab-separated fields")
        try:
            g, n = int(parts[0]), int(parts[1])
        except ValueError:
            raise TableFormatError(f"line {lineno}: bad indices {parts[0]!r}, {parts[1]!r}")
        frac = parts[2]
        if "/" not in frac:
            raise TableFormatError(f"line {lineno}: value {frac!r} is not of the form p/q")
        num_s, den_s = frac.split("/", 1)
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise TableFormatError(f"line {lineno}: value {frac!r} is not of the form p/q")
        if den <= 0:
            raise TableFormatError(f"line {lineno}: denominator must be positive")
        v = Fraction(num, den)
        if (v.numerator, v.denominator) != (num, den):
            raise TableFormatError(f"line {lineno}: fraction {frac!r} is not in lowest terms")
        if (g, n) in entries:
            raise TableFormatError(f"line {lineno}: duplicate key ({g},{n})")
        entries[(g, n)] = v
    return AgnTable(entries, "loaded")
