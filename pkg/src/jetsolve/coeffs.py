"""Coefficient arithmetic.

Two kinds of coefficients coexist:

* exact: ``fractions.Fraction`` (always stored in lowest terms with a
  positive denominator, which Fraction guarantees);
* numeric: ``mpmath.mpc`` at a per-run working precision in bits.

Exact values are used throughout elimination and polygon construction;
numeric values appear only as roots of edge characteristic polynomials and
everything derived from them.
"""

from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_PRECISION = 256

Coeff = object  # Fraction | mpmath.mpc; alias for documentation only


def is_exact(c):
    return isinstance(c, (Fraction, int))


def to_mpc(c):
    """Coerce an exact or numeric coefficient to mpmath.mpc at the current
    working precision."""
    if isinstance(c, Fraction):
        return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
    if isinstance(c, int):
        return mpmath.mpc(c)
    return mpmath.mpc(c)


def zero_tol():
    """Absolute tolerance used for numeric zero tests: 2^(-prec/2)."""
    return mpmath.mpf(2) ** (-mp.prec // 2)


def coeff_is_zero(c):
    if is_exact(c):
        return c == 0
    return abs(c) < zero_tol()


def coeff_eq(a, b):
    """Equality: exact when both sides are exact, tolerance-tagged otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(to_mpc(a) - to_mpc(b)) < zero_tol()


def coeff_conj(c):
    if is_exact(c):
        return c
    return mpmath.conj(c)


def coeff_is_real(c):
    if is_exact(c):
        return True
    return abs(mpmath.im(c)) < zero_tol()


def coeff_neg_is_zero_guard(c):
    return -c


def coeff_div(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return to_mpc(a) / to_mpc(b)


def format_coeff(c):
    """Render a coefficient as an exact 'p/q' string or a '[re, im]' pair of
    decimal strings (numeric)."""
    if isinstance(c, int):
        c = Fraction(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    c = to_mpc(c)
    digits = int(mp.prec / 3.32) + 2
    return [mpmath.nstr(mpmath.re(c), digits), mpmath.nstr(mpmath.im(c), digits)]


def parse_coeff(value):
    """Inverse of format_coeff; also accepts bare integers and integer
    strings."""
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as exc:
            raise ValueError(f"bad exact coefficient {value!r}") from exc
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return mpmath.mpc(mpmath.mpf(str(value[0])), mpmath.mpf(str(value[1])))
    raise ValueError(f"bad coefficient {value!r}")
