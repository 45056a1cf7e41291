"""Exact arithmetic on the unit interval.

The standard MV-algebra operations on [0, 1] together with scalar
multiplication, which make the rational unit interval a Riesz MV-algebra.
Everything is computed with :class:`fractions.Fraction`; no rounding ever
occurs.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class UnitRational(Fraction):
    """An exact rational constrained to [0, 1].

    The range is checked once, at construction.  The operations below assume
    in-range inputs and are closed over [0, 1], so they never re-validate.
    Floats are rejected: converting them would smuggle in binary rounding.
    """

    def __new__(cls, numerator=0, denominator=None):
        if isinstance(numerator, float) or isinstance(denominator, float):
            raise TypeError("floats are not exact; pass a Fraction, int or string")
        value = super().__new__(cls, numerator, denominator)
        if value < ZERO or value > ONE:
            raise ValueError(f"{value} is outside [0, 1]")
        return value


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, integer or decimal literals into an exact rational.

    Decimal literals convert exactly (``"0.3"`` is 3/10, not a float).
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def oplus(x, y):
    """Truncated addition: min(1, x + y)."""
    s = x + y
    return s if s <= ONE else ONE


def neg(x):
    """Involutive complement: 1 - x."""
    return ONE - x


def odot(x, y):
    """Truncated product: max(0, x + y - 1), the De Morgan dual of oplus."""
    s = x + y - ONE
    return s if s >= ZERO else ZERO


def implies(x, y):
    """Residuum: min(1, 1 - x + y)."""
    s = ONE - x + y
    return s if s <= ONE else ONE


def join(x, y):
    """Lattice join, computed as x + (y - x)+ via the MV operations.

    The defining term is ``x oplus (y odot not x)``; it coincides with
    max(x, y) on [0, 1], which is asserted.
    """
    value = oplus(x, odot(y, ONE - x))
    assert value == max(x, y)
    return value


def meet(x, y):
    """Lattice meet, ``x odot (not x oplus y)``; coincides with min(x, y)."""
    value = odot(x, oplus(ONE - x, y))
    assert value == min(x, y)
    return value


def dist(x, y):
    """Internal distance ``(x odot not y) oplus (not x odot y)`` = |x - y|."""
    return oplus(odot(x, ONE - y), odot(ONE - x, y))


def scalar_mul(r, x):
    """Scalar action of r in [0, 1] on x: the plain rational product."""
    return r * x
