"""Nonnegative rational vectors under the componentwise order and ℓ₁ norm.

This is a finite-dimensional model of the positive cone of an AL-space,
extended by a top element that dominates every vector.  The norm of the
top element is reported as ``math.inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from dobrakov.errors import DobrakovError, NotDirectedError

INF = math.inf

Number = Fraction | float


def as_fraction(x: int | str | Fraction) -> Fraction:
    if isinstance(x, float):
        raise DobrakovError("floats are not accepted where exact rationals are required")
    return Fraction(x)


@dataclass(frozen=True)
class LatticeValue:
    """Either a vector of nonnegative rationals or the top element.

    ``components is None`` encodes the top element.
    """

    components: tuple[Fraction, ...] | None

    def __post_init__(self) -> None:
        if self.components is None:
            return
        if not self.components:
            raise DobrakovError("lattice values need dimension >= 1")
        if any(c < 0 for c in self.components):
            raise DobrakovError(f"negative component in {self.components}")

    @classmethod
    def vec(cls, *components: int | str | Fraction) -> "LatticeValue":
        return cls(tuple(as_fraction(c) for c in components))

    @classmethod
    def zero(cls, dim: int) -> "LatticeValue":
        return cls((Fraction(0),) * dim)

    @classmethod
    def top(cls) -> "LatticeValue":
        return TOP

    @property
    def is_top(self) -> bool:
        return self.components is None

    @property
    def dim(self) -> int | None:
        return None if self.components is None else len(self.components)

    def is_zero(self) -> bool:
        return self.components is not None and not any(self.components)

    def _dims(self, other: "LatticeValue") -> None:
        if self.components is not None and other.components is not None:
            if len(self.components) != len(other.components):
                raise DobrakovError("dimension mismatch")

    def __add__(self, other: "LatticeValue") -> "LatticeValue":
        self._dims(other)
        if self.is_top or other.is_top:
            return TOP
        return LatticeValue(tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, c: int | Fraction) -> "LatticeValue":
        """Multiply by a nonnegative rational; ``c·λ = λ`` for ``c > 0``."""
        if c < 0:
            raise DobrakovError("negative scalar leaves the cone")
        if self.is_top:
            if c == 0:
                raise DobrakovError("0·λ is undefined")
            return TOP
        return LatticeValue(tuple(c * a for a in self.components))

    def __le__(self, other: "LatticeValue") -> bool:
        self._dims(other)
        if other.is_top:
            return True
        if self.is_top:
            return False
        return all(a <= b for a, b in zip(self.components, other.components))

    def __ge__(self, other: "LatticeValue") -> bool:
        return other <= self

    def __lt__(self, other: "LatticeValue") -> bool:
        return self <= other and self != other

    def __gt__(self, other: "LatticeValue") -> bool:
        return other < self

    def __str__(self) -> str:
        return format_value(self)


TOP = LatticeValue(None)


def norm(v: LatticeValue) -> Number:
    """ℓ₁ norm; ``inf`` for the top element."""
    if v.is_top:
        return INF
    return sum(v.components, Fraction(0))


def difference_norm(x: LatticeValue, y: LatticeValue) -> Number:
    """Norm of the (signed) difference ``x - y`` in the ambient space."""
    if x.is_top or y.is_top:
        return Fraction(0) if x.is_top and y.is_top else INF
    x._dims(y)
    return sum((abs(a - b) for a, b in zip(x.components, y.components)), Fraction(0))


def _dim_of(vs: Sequence[LatticeValue]) -> int | None:
    dims = {v.dim for v in vs if not v.is_top}
    if len(dims) > 1:
        raise DobrakovError("dimension mismatch")
    return dims.pop() if dims else None


def lattice_sup(vs: Iterable[LatticeValue]) -> LatticeValue:
    vs = list(vs)
    if not vs:
        raise DobrakovError("supremum of an empty family")
    _dim_of(vs)
    if any(v.is_top for v in vs):
        return TOP
    return LatticeValue(tuple(max(c) for c in zip(*(v.components for v in vs))))


def lattice_inf(vs: Iterable[LatticeValue]) -> LatticeValue:
    vs = list(vs)
    if not vs:
        raise DobrakovError("infimum of an empty family")
    _dim_of(vs)
    finite = [v for v in vs if not v.is_top]
    if not finite:
        return TOP
    return LatticeValue(tuple(min(c) for c in zip(*(v.components for v in finite))))


@dataclass(frozen=True)
class OrderInterval:
    lo: LatticeValue
    hi: LatticeValue

    def __post_init__(self) -> None:
        if self.lo.is_top or self.hi.is_top:
            raise DobrakovError("order interval endpoints must be vectors")
        if not self.lo <= self.hi:
            raise DobrakovError("order interval with lo > hi")

    def __contains__(self, v: object) -> bool:
        return isinstance(v, LatticeValue) and self.lo <= v <= self.hi


@dataclass(frozen=True)
class DirectedLimitReport:
    holds: bool
    extremum: LatticeValue
    extremum_norm: Number
    member_norm_bound: Number


def check_directed_norm_limit(family: Sequence[LatticeValue], direction: str) -> DirectedLimitReport:
    """Norm of the extremum of a finite directed family vs member norms.

    A finite family directed downward contains its infimum, so the infimum
    of the member norms must equal the norm of that infimum (and dually for
    upward families).
    """
    if direction not in ("down", "up"):
        raise DobrakovError("direction must be 'down' or 'up'")
    if not family:
        raise DobrakovError("empty family")
    _dim_of(family)
    down = direction == "down"
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            if down:
                ok = any(c <= a and c <= b for c in family)
            else:
                ok = any(a <= c and b <= c for c in family)
            if not ok:
                raise NotDirectedError(f"not directed: no common bound for {a} and {b}")
    ext = lattice_inf(family) if down else lattice_sup(family)
    norms = [norm(v) for v in family]
    bound = min(norms) if down else max(norms)
    return DirectedLimitReport(norm(ext) == bound, ext, norm(ext), bound)


def is_order_bounded(values: Iterable[LatticeValue], dim: int = 1) -> tuple[bool, OrderInterval | None]:
    """Whether the family sits in an order interval, with the tightest one.

    ``dim`` only sizes the conventional zero interval of an empty family.
    """
    values = list(values)
    if any(v.is_top for v in values):
        return False, None
    if not values:
        z = LatticeValue.zero(dim)
        return True, OrderInterval(z, z)
    return True, OrderInterval(lattice_inf(values), lattice_sup(values))


def format_fraction(x: Number) -> str:
    if isinstance(x, float):
        return "inf" if x == INF else repr(x)
    return str(x)


def format_value(v: LatticeValue) -> str:
    if v.is_top:
        return "top"
    return "(" + ", ".join(str(c) for c in v.components) + ")"


_VALUE_RE = re.compile(r"^\(\s*([^()]*)\s*\)$")


def parse_value(text: str) -> LatticeValue:
    """Parse ``"(a/b, c/d, ...)"`` or ``"top"``/``"λ"``."""
    body = text.strip()
    if body in ("top", "λ", "TOP"):
        return TOP
    m = _VALUE_RE.match(body)
    if not m:
        raise DobrakovError(f"malformed vector literal {text!r}")
    try:
        comps = [Fraction(tok.strip()) for tok in m.group(1).split(",")]
    except (ValueError, ZeroDivisionError):
        raise DobrakovError(f"malformed vector literal {text!r}") from None
    return LatticeValue(tuple(comps))
