"""Exact rational scalars and the extended value infinity.

All arithmetic in the toolkit runs over Q, represented by gmpy2.mpq when
available (roughly 15x faster than fractions.Fraction) and by Fraction
otherwise.  The two types hash and compare identically, so they can be
mixed freely; ``Q`` is the constructor used everywhere.

ExtRational adds the single extra point "infinity" used for triangle
parameters: inverse(inf) = 0, inverse(q) = 1/q, inverse(0) is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

Rational = Union[Fraction, "Q"]  # anything Q() accepts and returns


class ZeroParameter(ValueError):
    """A triangle parameter slot holds 0, which has no inverse."""


def is_integer(q) -> bool:
    return q.denominator == 1


def is_odd_integer(q) -> bool:
    return q.denominator == 1 and q.numerator % 2 != 0


def rational_sqrt(q) -> Optional[Rational]:
    """Exact square root of a nonnegative rational, or None if irrational.

    Returns None (rather than raising) for negative input as well, so the
    caller can distinguish via a separate sign check when it cares.
    """
    if q < 0:
        return None
    num = int(q.numerator)
    den = int(q.denominator)
    rn = _isqrt_exact(num)
    if rn is None:
        return None
    rd = _isqrt_exact(den)
    if rd is None:
        return None
    return Q(rn, rd)


def _isqrt_exact(n: int) -> Optional[int]:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class ExtRational:
    """A rational number or the distinguished value infinity (value=None)."""

    value: Optional[Rational]

    @staticmethod
    def of(x) -> "ExtRational":
        if isinstance(x, ExtRational):
            return x
        if x is None:
            return INF
        return ExtRational(Q(x))

    @staticmethod
    def parse(text: str) -> "ExtRational":
        """Parse 'p/q', 'p', or 'inf' (case-insensitive)."""
        t = text.strip()
        if t.lower() == "inf":
            return INF
        return ExtRational(Q(Fraction(t)))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def inverse(self):
        """1/x with the convention inverse(inf) = 0."""
        if self.value is None:
            return Q(0)
        if self.value == 0:
            raise ZeroParameter("0 has no inverse among triangle parameters")
        return 1 / self.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INF = ExtRational(None)
