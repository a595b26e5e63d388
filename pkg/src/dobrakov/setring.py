"""Finite universes, subsets as bitmasks, set classes and rings of sets.

On a finite universe every increasing sequence of sets is eventually
constant, so the class of increasing limits of a ring is the ring itself
(see :func:`r_sigma`).  The genuinely infinite behaviour lives in
:mod:`dobrakov.dyadic`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from dobrakov.errors import DobrakovError

ENUMERATION_BOUND = 4


def _check_universe(universe_size: int) -> None:
    if universe_size <= 0:
        raise DobrakovError("empty universe")


@dataclass(frozen=True, order=True)
class FiniteSet:
    """A subset of ``{0, ..., universe_size - 1}`` stored as a bitmask."""

    universe_size: int
    mask: int

    def __post_init__(self) -> None:
        _check_universe(self.universe_size)
        if self.mask < 0 or self.mask >> self.universe_size:
            raise DobrakovError(
                f"set {self.mask:#b} references points outside a universe of size {self.universe_size}"
            )

    @classmethod
    def of(cls, universe_size: int, members: Iterable[int]) -> "FiniteSet":
        mask = 0
        for t in members:
            if t < 0 or t >= universe_size:
                raise DobrakovError(f"point {t} outside universe of size {universe_size}")
            mask |= 1 << t
        return cls(universe_size, mask)

    @classmethod
    def empty(cls, universe_size: int) -> "FiniteSet":
        return cls(universe_size, 0)

    @classmethod
    def full(cls, universe_size: int) -> "FiniteSet":
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def parse(cls, universe_size: int, text: str) -> "FiniteSet":
        """Parse ``"{0,2}"`` (or ``"{}"``, ``"∅"``)."""
        body = text.strip()
        if body in ("∅", "{}"):
            return cls.empty(universe_size)
        if not (body.startswith("{") and body.endswith("}")):
            raise DobrakovError(f"malformed set literal {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return cls.empty(universe_size)
        try:
            points = [int(tok) for tok in re.split(r"\s*,\s*", inner)]
        except ValueError:
            raise DobrakovError(f"malformed set literal {text!r}") from None
        return cls.of(universe_size, points)

    def _same(self, other: "FiniteSet") -> None:
        if self.universe_size != other.universe_size:
            raise DobrakovError("sets live in different universes")

    def __xor__(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.universe_size, self.mask ^ other.mask)

    def __and__(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.universe_size, self.mask & other.mask)

    def __or__(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.universe_size, self.mask | other.mask)

    def __sub__(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.universe_size, self.mask & ~other.mask)

    def issubset(self, other: "FiniteSet") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __iter__(self) -> Iterator[int]:
        return (t for t in range(self.universe_size) if self.mask >> t & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, t: object) -> bool:
        return isinstance(t, int) and 0 <= t < self.universe_size and bool(self.mask >> t & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(t) for t in self) + "}"

    def __repr__(self) -> str:
        return f"FiniteSet({self.universe_size}, {self})"


class SetClass:
    """A finite, duplicate-free family of subsets of one universe.

    Members are kept sorted by bitmask so iteration order (and hence every
    witness derived from it) is reproducible.
    """

    __slots__ = ("universe_size", "masks", "_lookup")

    def __init__(self, universe_size: int, sets: Iterable[FiniteSet | int] = ()) -> None:
        _check_universe(universe_size)
        masks = set()
        for s in sets:
            if isinstance(s, FiniteSet):
                if s.universe_size != universe_size:
                    raise DobrakovError("set class members must share the universe")
                masks.add(s.mask)
            else:
                FiniteSet(universe_size, s)
                masks.add(s)
        self.universe_size = universe_size
        self.masks: tuple[int, ...] = tuple(sorted(masks))
        self._lookup = frozenset(self.masks)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, FiniteSet):
            return item.universe_size == self.universe_size and item.mask in self._lookup
        return item in self._lookup

    def __iter__(self) -> Iterator[FiniteSet]:
        return (FiniteSet(self.universe_size, m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetClass):
            return NotImplemented
        return self.universe_size == other.universe_size and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.universe_size, self.masks))

    def issubset(self, other: "SetClass") -> bool:
        return self.universe_size == other.universe_size and self._lookup <= other._lookup

    def __repr__(self) -> str:
        inner = ", ".join(str(s) for s in self)
        return f"{type(self).__name__}({self.universe_size}, [{inner}])"

    def is_ring(self) -> bool:
        if 0 not in self._lookup:
            return False
        return all(
            a ^ b in self._lookup and a & b in self._lookup
            for a, b in itertools.combinations(self.masks, 2)
        )


class Ring(SetClass):
    """A :class:`SetClass` containing ∅ and closed under Δ and ∩.

    Construction fails unless the closure audit passes; use
    :func:`generate_ring` to close an arbitrary family first.
    """

    __slots__ = ()

    def __init__(self, universe_size: int, sets: Iterable[FiniteSet | int] = ()) -> None:
        super().__init__(universe_size, sets)
        if not self.is_ring():
            raise DobrakovError(f"{SetClass.__repr__(self)} is not a ring")

    @classmethod
    def power_set(cls, universe_size: int) -> "Ring":
        _check_universe(universe_size)
        return cls(universe_size, range(1 << universe_size))

    @property
    def base(self) -> SetClass:
        return SetClass(self.universe_size, self.masks)

    @property
    def largest(self) -> FiniteSet:
        """Union of all members; itself a member since rings are ∪-closed."""
        m = 0
        for x in self.masks:
            m |= x
        return FiniteSet(self.universe_size, m)

    def atoms(self) -> list[FiniteSet]:
        """Minimal nonempty members; they partition :attr:`largest`."""
        nonempty = [m for m in self.masks if m]
        return [
            FiniteSet(self.universe_size, m)
            for m in nonempty
            if not any(x != m and x & ~m == 0 for x in nonempty)
        ]


def _closure_masks(universe_size: int, masks: Iterable[int]) -> set[int]:
    members = {0, *masks}
    frontier = list(members)
    while frontier:
        fresh = []
        current = list(members)
        for a in frontier:
            for b in current:
                for c in (a ^ b, a & b):
                    if c not in members:
                        members.add(c)
                        fresh.append(c)
        frontier = fresh
    return members


def generate_ring(universe_size: int, generators: SetClass | Iterable[FiniteSet]) -> Ring:
    """Smallest ring over the universe that contains every generator."""
    _check_universe(universe_size)
    masks = []
    for g in generators:
        if g.universe_size != universe_size:
            raise DobrakovError("generator universe does not match")
        masks.append(g.mask)
    return Ring(universe_size, _closure_masks(universe_size, masks))


def r_sigma(ring: Ring) -> Ring:
    """Class of increasing limits of members of ``ring``.

    On a finite universe an increasing sequence stabilises after finitely
    many steps, so the limit already belongs to the ring.
    """
    return ring


def hereditary_class(ring: SetClass) -> SetClass:
    """Every subset of every member (a σ-ring on a finite universe)."""
    out: set[int] = set()
    for m in ring.masks:
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return SetClass(ring.universe_size, out)


_CLASS_OPS = {
    "∩": lambda a, b: a & b,
    "∪": lambda a, b: a | b,
    "Δ": lambda a, b: a ^ b,
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "xor": lambda a, b: a ^ b,
}


def class_op(a: SetClass, b: SetClass, op: str) -> SetClass:
    """Elementwise product family ``{A op B : A ∈ a, B ∈ b}``.

    ``op`` is one of ``"∩"``, ``"∪"``, ``"Δ"`` (or ``"and"``, ``"or"``,
    ``"xor"``).
    """
    if a.universe_size != b.universe_size:
        raise DobrakovError("set classes live in different universes")
    try:
        fn = _CLASS_OPS[op]
    except KeyError:
        raise DobrakovError(f"unknown class operation {op!r}") from None
    return SetClass(a.universe_size, {fn(x, y) for x in a.masks for y in b.masks})


def enumerate_subrings(universe_size: int) -> list[Ring]:
    """All rings of subsets of ``{0..universe_size-1}``, sorted by content.

    A ring is grown from ``{∅}`` by adding one set at a time and closing;
    every ring is reached this way since each is generated by its members.
    """
    _check_universe(universe_size)
    if universe_size > ENUMERATION_BOUND:
        raise DobrakovError("enumeration bound exceeded")
    full = 1 << universe_size
    seen: set[frozenset[int]] = set()
    stack = [frozenset({0})]
    while stack:
        fam = stack.pop()
        if fam in seen:
            continue
        seen.add(fam)
        for m in range(full):
            if m not in fam:
                grown = frozenset(_closure_masks(universe_size, fam | {m}))
                if grown not in seen:
                    stack.append(grown)
    rings = [Ring(universe_size, fam) for fam in seen]
    rings.sort(key=lambda r: (len(r), r.masks))
    return rings
