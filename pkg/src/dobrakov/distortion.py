"""Named distortion functions g with g(0) = 0, nondecreasing, continuous at 0.

Exact evaluation returns a :class:`~fractions.Fraction`.  Where the result
is irrational (``sqrt`` and ``power`` off perfect powers) it is the
correctly rounded 40-significant-digit decimal, and the distortion reports
``exact = False`` so that callers can apply a comparison slack.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

from dobrakov.errors import DobrakovError

DIGITS = 40
COMPARISON_SLACK = Fraction(1, 10**30)

NAMES = ("identity", "sqrt", "x_over_1px", "cap2x", "power", "zero")


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None."""
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n < 2**1000 else int(decimal.Decimal(n) ** (decimal.Decimal(1) / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def _rational_power(x: Fraction, p: Fraction) -> Fraction:
    if x == 0:
        return Fraction(0)
    if p == 1:
        return x
    a, b = p.numerator, p.denominator
    num = _iroot(x.numerator, b)
    den = _iroot(x.denominator, b)
    if num is not None and den is not None:
        return Fraction(num, den) ** a
    with decimal.localcontext() as ctx:
        ctx.prec = DIGITS
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        if p == Fraction(1, 2):
            r = d.sqrt()
        else:
            ctx.prec = DIGITS + 10
            r = d ** (decimal.Decimal(a) / decimal.Decimal(b))
            ctx.prec = DIGITS
            r = +r
    return Fraction(r)


@dataclass(frozen=True)
class Distortion:
    """One of the named distortion functions.

    ``power`` takes an exponent in (0, 1]; the other names take none.
    """

    name: str
    p: Fraction | None = None

    def __post_init__(self) -> None:
        if self.name not in NAMES:
            raise DobrakovError(f"unknown distortion {self.name!r}")
        if self.name == "power":
            if self.p is None or not (0 < self.p <= 1):
                raise DobrakovError("power distortion needs exponent p in (0, 1]")
            object.__setattr__(self, "p", Fraction(self.p))
        elif self.p is not None:
            raise DobrakovError(f"distortion {self.name} takes no exponent")

    @classmethod
    def parse(cls, text: str) -> "Distortion":
        text = text.strip()
        if text.startswith("power(") and text.endswith(")"):
            return cls("power", Fraction(text[6:-1]))
        return cls(text)

    def __str__(self) -> str:
        return f"power({self.p})" if self.name == "power" else self.name

    @property
    def exact(self) -> bool:
        return self.name not in ("sqrt", "power") or (self.name == "power" and self.p == 1)

    def __call__(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x < 0:
            raise DobrakovError("distortions act on nonnegative arguments")
        n = self.name
        if n == "identity":
            return x
        if n == "zero":
            return Fraction(0)
        if n == "sqrt":
            return _rational_power(x, Fraction(1, 2))
        if n == "x_over_1px":
            return x / (1 + x)
        if n == "cap2x":
            return min(Fraction(1), 2 * x)
        return _rational_power(x, self.p)

    def as_float(self, x: float) -> float:
        n = self.name
        if n == "identity":
            return x
        if n == "zero":
            return 0.0
        if n == "sqrt":
            return math.sqrt(x)
        if n == "x_over_1px":
            return x / (1.0 + x)
        if n == "cap2x":
            return min(1.0, 2.0 * x)
        return x ** float(self.p)
