"""Exact rational scalars.

Every quantity in the engine is an arbitrary-precision rational; there is
no floating point anywhere, so tensor equalities can be decided exactly.
The scalar type is ``gmpy2.mpq`` when gmpy2 is installed (much faster on
the dense tensor loops) and ``fractions.Fraction`` otherwise; both keep
lowest terms and a positive denominator and are interchangeable here.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:                                  # pragma: no cover
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)

#: rational types accepted anywhere a scalar is expected
RATIONAL_TYPES = (Fraction, type(ZERO))


def rational(value) -> Fraction:
    """Coerce an int, rational or "p/q" string to an exact rational.

    Decimal strings are rejected: the file formats of this engine carry
    rationals as "p" or "p/q" only.
    """
    if isinstance(value, RATIONAL_TYPES):
        return Q(value)
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text or "E" in text:
            raise ValueError(f"decimal notation is not accepted: {value!r}")
        try:
            return Q(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    """Render a rational as "p" or "p/q" (exact round-trip with rational())."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
