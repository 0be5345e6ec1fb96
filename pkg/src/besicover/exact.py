"""Exact rational helpers.

Everything in the package is computed on :class:`fractions.Fraction`; floats
never enter a comparison that decides a result.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Integral, Rational

__all__ = [
    "as_rational",
    "parse_rational",
    "format_rational",
    "ceil_log2",
    "ceil_neg_log2",
    "floor_log2",
    "sqrt_lt",
    "rational_between_sqrt",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: a float literal has almost never been meant as the
    binary fraction it actually is.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (Integral, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``. Decimal and exponent notation are rejected."""
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not a p/q rational: {text!r}")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a p/q rational: {text!r}") from exc
    return q


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def ceil_log2(x) -> int:
    """Smallest integer ``k`` with ``2**k >= x`` (``x > 0``), i.e. ``ceil(log2 x)``."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("ceil_log2 needs x > 0")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    two = Fraction(2)
    while two**k < x:
        k += 1
    while two ** (k - 1) >= x:
        k -= 1
    return k


def ceil_neg_log2(t) -> int:
    """``ceil(-log2 t)`` computed without logarithms."""
    return ceil_log2(1 / as_rational(t))


def sqrt_lt(a: Fraction, p: Fraction, q: Fraction, b: Fraction) -> bool:
    """Decide ``sqrt(a) < p + q*sqrt(b)`` exactly, for ``a, b, q >= 0`` and ``p > 0``."""
    u = a - p * p - q * q * b
    if u < 0:
        return True
    return u * u < 4 * p * p * q * q * b


def _isqrt_floor(x: Fraction) -> int:
    return isqrt(x.numerator // x.denominator)


def _isqrt_ceil(x: Fraction) -> int:
    m = -(-x.numerator // x.denominator)
    s = isqrt(m)
    return s if s * s == m else s + 1


def rational_between_sqrt(a, b) -> Fraction:
    """Some rational strictly between ``sqrt(a)`` and ``sqrt(b)``, ``0 <= a < b``."""
    a, b = as_rational(a), as_rational(b)
    if not 0 <= a < b:
        raise ValueError("need 0 <= a < b")
    scale = 1
    while True:
        s2 = scale * scale
        hi_a = Fraction(_isqrt_ceil(a * s2), scale)
        lo_b = Fraction(_isqrt_floor(b * s2), scale)
        if hi_a < lo_b:
            return (hi_a + lo_b) / 2
        scale *= 16


def floor_log2(x) -> int:
    """Largest integer ``k`` with ``2**k <= x`` (``x > 0``)."""
    x = as_rational(x)
    k = ceil_log2(x)
    return k if Fraction(2) ** k == x else k - 1
