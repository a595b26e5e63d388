"""Dyadic interval model on [0, 1) for the limit statements.

Sets are finite unions of half-open intervals with dyadic endpoints; the
set functions are ``μ(A)_i = g_i(len(A))`` for distortions ``g_i``.  Set
algebra and lengths are exact (integers at a common depth); the values of
μ are binary64 floats, compared against explicit tolerances.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from dobrakov.distortion import Distortion
from dobrakov.errors import DobrakovError
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport

MAX_DEPTH = 60


def _check_depth(k: int) -> None:
    if k < 0:
        raise DobrakovError("depth must be nonnegative")
    if k > MAX_DEPTH:
        raise DobrakovError("depth cap")


@dataclass(frozen=True)
class DyadicSet:
    """``⋃ [p/2^depth, q/2^depth)``, intervals sorted, disjoint and merged.

    The depth is reduced as far as the endpoints allow, so equal sets have
    equal representations.
    """

    depth: int
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        _check_depth(self.depth)
        scale = 1 << self.depth
        merged: list[list[int]] = []
        for p, q in sorted(self.intervals):
            if not 0 <= p <= q <= scale:
                raise DobrakovError(f"interval [{p}, {q}) / 2^{self.depth} leaves [0, 1)")
            if p == q:
                continue
            if merged and p <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], q)
            else:
                merged.append([p, q])
        depth = self.depth
        while depth > 0 and all(p % 2 == 0 and q % 2 == 0 for p, q in merged):
            merged = [[p // 2, q // 2] for p, q in merged]
            depth -= 1
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "intervals", tuple((p, q) for p, q in merged))

    @classmethod
    def empty(cls) -> "DyadicSet":
        return cls(0, ())

    @classmethod
    def interval(cls, p: int, q: int, depth: int) -> "DyadicSet":
        return cls(depth, ((p, q),))

    def at_depth(self, k: int) -> tuple[tuple[int, int], ...]:
        if k < self.depth:
            raise DobrakovError("cannot lower depth")
        _check_depth(k)
        s = k - self.depth
        return tuple((p << s, q << s) for p, q in self.intervals)

    def _binary(self, other: "DyadicSet", keep: Callable[[bool, bool], bool]) -> "DyadicSet":
        k = max(self.depth, other.depth)
        a, b = self.at_depth(k), other.at_depth(k)
        cuts = sorted({x for iv in a + b for x in iv})
        out = []
        for lo, hi in zip(cuts, cuts[1:]):
            ina = any(p <= lo and hi <= q for p, q in a)
            inb = any(p <= lo and hi <= q for p, q in b)
            if keep(ina, inb):
                out.append((lo, hi))
        return DyadicSet(k, tuple(out))

    def __or__(self, other: "DyadicSet") -> "DyadicSet":
        return self._binary(other, lambda x, y: x or y)

    def __and__(self, other: "DyadicSet") -> "DyadicSet":
        return self._binary(other, lambda x, y: x and y)

    def __sub__(self, other: "DyadicSet") -> "DyadicSet":
        return self._binary(other, lambda x, y: x and not y)

    def __xor__(self, other: "DyadicSet") -> "DyadicSet":
        return self._binary(other, lambda x, y: x != y)

    def issubset(self, other: "DyadicSet") -> bool:
        return not (self - other)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    @property
    def length(self) -> Fraction:
        return Fraction(sum(q - p for p, q in self.intervals), 1 << self.depth)

    def __str__(self) -> str:
        if not self.intervals:
            return "∅"
        d = 1 << self.depth
        return " ∪ ".join(f"[{Fraction(p, d)}, {Fraction(q, d)})" for p, q in self.intervals)


def _split_top_level(text: str) -> list[str]:
    """Split on ``;`` outside brackets, so unions may nest."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == ";" and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


@dataclass(frozen=True)
class TargetSet:
    """A set to be approximated from inside by dyadic sets.

    ``intervals`` are disjoint rational half-open intervals; ``descriptor``
    is the text form ``interval a b``, ``union [...]`` or ``cantor n``.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    descriptor: str

    def __post_init__(self) -> None:
        ivs = sorted((Fraction(a), Fraction(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not 0 <= a <= b <= 1:
                raise DobrakovError(f"target interval [{a}, {b}) leaves [0, 1)")
        for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
            if a2 < b1:
                raise DobrakovError("target intervals overlap")
        object.__setattr__(self, "intervals", tuple(ivs))

    @property
    def length(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    @classmethod
    def interval(cls, a, b) -> "TargetSet":
        a, b = Fraction(a), Fraction(b)
        return cls(((a, b),), f"interval {a} {b}")

    @classmethod
    def union(cls, parts: Sequence["TargetSet"]) -> "TargetSet":
        ivs = tuple(iv for t in parts for iv in t.intervals)
        return cls(ivs, "union [" + "; ".join(t.descriptor for t in parts) + "]")

    @classmethod
    def cantor(cls, n: int) -> "TargetSet":
        """The n-th stage of the middle-thirds construction (2^n intervals)."""
        if n < 0 or n > 16:
            raise DobrakovError("cantor stage must be in 0..16")
        ivs = [(Fraction(0), Fraction(1))]
        for _ in range(n):
            nxt = []
            for a, b in ivs:
                w = (b - a) / 3
                nxt += [(a, a + w), (b - w, b)]
            ivs = nxt
        return cls(tuple(ivs), f"cantor {n}")

    @classmethod
    def parse(cls, text: str) -> "TargetSet":
        text = text.strip()
        if text.startswith("interval"):
            parts = text.split()
            if len(parts) != 3:
                raise DobrakovError(f"malformed interval descriptor {text!r}")
            return cls.interval(Fraction(parts[1]), Fraction(parts[2]))
        if text.startswith("cantor"):
            parts = text.split()
            if len(parts) != 2:
                raise DobrakovError(f"malformed cantor descriptor {text!r}")
            return cls.cantor(int(parts[1]))
        if text.startswith("union"):
            body = text[len("union"):].strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise DobrakovError(f"malformed union descriptor {text!r}")
            return cls.union([cls.parse(p) for p in _split_top_level(body[1:-1]) if p.strip()])
        raise DobrakovError(f"unknown target descriptor {text!r}")

    def __str__(self) -> str:
        return self.descriptor


def inner_refine(target: TargetSet, depth: int) -> DyadicSet:
    """Largest depth-``depth`` dyadic set inside ``target``."""
    _check_depth(depth)
    scale = 1 << depth
    ivs = []
    for a, b in target.intervals:
        p, q = math.ceil(a * scale), math.floor(b * scale)
        if p < q:
            ivs.append((p, q))
    return DyadicSet(depth, tuple(ivs))


def outer_refine(target: TargetSet, depth: int) -> DyadicSet:
    """Smallest depth-``depth`` dyadic set containing ``target``."""
    _check_depth(depth)
    scale = 1 << depth
    ivs = []
    for a, b in target.intervals:
        if a < b:
            ivs.append((math.floor(a * scale), math.ceil(b * scale)))
    return DyadicSet(depth, tuple(ivs))


@dataclass(frozen=True)
class IntervalRule:
    """``μ(A)_i = g_i(len A)``, one distortion per component."""

    distortions: tuple[Distortion, ...]

    def __post_init__(self) -> None:
        if not self.distortions:
            raise DobrakovError("an interval rule needs at least one component")

    @classmethod
    def of(cls, *names: str | Distortion) -> "IntervalRule":
        return cls(tuple(d if isinstance(d, Distortion) else Distortion.parse(d) for d in names))

    @property
    def dimension(self) -> int:
        return len(self.distortions)

    def value_at_length(self, length: float) -> tuple[float, ...]:
        return tuple(g.as_float(length) for g in self.distortions)

    def norm_at_length(self, length: float | Fraction) -> float:
        return math.fsum(self.value_at_length(float(length)))

    def __call__(self, a: DyadicSet) -> tuple[float, ...]:
        return self.value_at_length(float(a.length))

    def norm(self, a: DyadicSet) -> float:
        return self.norm_at_length(a.length)

    def __str__(self) -> str:
        return ", ".join(str(g) for g in self.distortions)


# -- families of sets ----------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """Indexed family ``n ↦ A_n`` (n ≥ 1) with declared monotonicity.

    ``limit_length`` is the exact length of the limit set when the family
    is monotone.
    """

    name: str
    member: Callable[[int], DyadicSet]
    direction: str  # "increasing", "decreasing", "disjoint", "constant"
    limit_length: Fraction | None

    def __call__(self, n: int) -> DyadicSet:
        return self.member(n)


def shrinking_prefix() -> Family:
    """``A_n = [0, 2^-n)``, decreasing to ∅."""
    return Family("[0, 2^-n)", lambda n: DyadicSet.interval(0, 1, n), "decreasing", Fraction(0))


def dyadic_blocks() -> Family:
    """``A_n = [2^-(n+1), 2^-n)``, pairwise disjoint."""
    return Family("[2^-(n+1), 2^-n)", lambda n: DyadicSet.interval(1, 2, n + 1), "disjoint", None)


def inner_family(target: TargetSet) -> Family:
    return Family(f"inner({target})", lambda n: inner_refine(target, n), "increasing", target.length)


def constant_family(a: DyadicSet) -> Family:
    return Family(f"constant({a})", lambda n: a, "constant", a.length)


def _audit_family(family: Family, n_max: int) -> str | None:
    members = [family(n) for n in range(1, n_max + 1)]
    for n, (x, y) in enumerate(zip(members, members[1:]), start=1):
        if family.direction == "increasing" and not x.issubset(y):
            return f"A_{n} is not contained in A_{n + 1}"
        if family.direction == "decreasing" and not y.issubset(x):
            return f"A_{n + 1} is not contained in A_{n}"
        if family.direction == "constant" and x != y:
            return f"A_{n} differs from A_{n + 1}"
    if family.direction == "disjoint":
        for i, j in itertools.combinations(range(len(members)), 2):
            if members[i] & members[j]:
                return f"A_{i + 1} and A_{j + 1} intersect"
    return None


# -- checks -------------------------------------------------------------------


def analytic_limit(rule: IntervalRule, length: Fraction) -> float:
    return rule.norm_at_length(length)


def check_eq2_convergence(rule: IntervalRule, target: TargetSet, tol: float, max_depth: int) -> PropertyReport:
    """‖μ(B_k)‖ for the inner dyadic approximants B_k against Σ g_i(len target)."""
    name = "inner_refinement_convergence"
    _check_depth(max_depth)
    limit = analytic_limit(rule, target.length)
    trace = {}
    for k in range(1, max_depth + 1):
        v = rule.norm(inner_refine(target, k))
        trace[k] = v
        if abs(v - limit) <= tol:
            return PropertyReport(name, HOLDS, details={"depth": k, "value": v, "limit": limit, "trace": trace})
    residual = abs(trace[max_depth] - limit)
    return PropertyReport(
        name, FAILS, witness={"max_depth": max_depth, "residual": residual, "limit": limit}, details={"trace": trace},
    )


def check_continuity_sequence(
    rule: IntervalRule, family: Family | None = None, n_max: int = 60, tol: float = 1e-4
) -> PropertyReport:
    """‖μ(A_n)‖ decreases and drops to ``tol`` along a family shrinking to ∅."""
    name = "continuity_sequence"
    family = family or shrinking_prefix()
    if family.direction != "decreasing" or family.limit_length != 0:
        return PropertyReport(name, VACUOUS, notes=["family must decrease to the empty set"])
    problem = _audit_family(family, min(n_max, 12))
    if problem:
        return PropertyReport(name, VACUOUS, notes=[problem])
    prev = math.inf
    trace = {}
    for n in range(1, n_max + 1):
        v = rule.norm(family(n))
        trace[n] = v
        if v > prev:
            return PropertyReport(name, FAILS, witness={"n": n, "value": v, "previous": prev})
        prev = v
        if v <= tol:
            return PropertyReport(name, HOLDS, details={"n": n, "value": v, "trace": trace})
    return PropertyReport(name, FAILS, witness={"n_max": n_max, "residual": prev})


def check_exhaustive_sequence(
    rule: IntervalRule, family: Family | None = None, n_max: int = 60, tol: float = 1e-4
) -> PropertyReport:
    name = "exhaustive_sequence"
    family = family or dyadic_blocks()
    problem = _audit_family(family, min(n_max, 12)) if family.direction == "disjoint" else "family is not disjoint"
    if problem:
        return PropertyReport(name, VACUOUS, notes=[problem])
    trace = {}
    for n in range(1, n_max + 1):
        trace[n] = rule.norm(family(n))
        if trace[n] <= tol:
            return PropertyReport(name, HOLDS, details={"n": n, "value": trace[n], "trace": trace})
    return PropertyReport(name, FAILS, witness={"n_max": n_max, "residual": trace[n_max]})


def check_mu_cauchy(rule: IntervalRule, family: Family, n_max: int, tol: float) -> PropertyReport:
    """Find N ≤ ⌈n_max/2⌉ with ‖μ(A_n Δ A_m)‖ ≤ tol for all N ≤ n, m ≤ n_max.

    The verdict is paired with :func:`check_exhaustive_sequence` on the
    consecutive differences, which must agree for a monotone family.
    """
    name = "mu_cauchy"
    if family.direction not in ("increasing", "decreasing", "constant"):
        return PropertyReport(name, VACUOUS, notes=["family must be monotone"])
    if n_max < 2:
        return PropertyReport(name, VACUOUS, notes=["needs at least two members"])
    problem = _audit_family(family, n_max)
    if problem:
        return PropertyReport(name, VACUOUS, notes=[problem])
    members = [family(n) for n in range(1, n_max + 1)]
    # worst[n] = max over m > n of ‖μ(A_n Δ A_m)‖
    worst = [0.0] * n_max
    for i in range(n_max):
        for j in range(i + 1, n_max):
            worst[i] = max(worst[i], rule.norm(members[i] ^ members[j]))
    # a certified tail must span at least half the window, otherwise the
    # last few (possibly repeated) members certify themselves
    last_start = (n_max + 1) // 2
    tail = [max(worst[i:n_max - 1]) for i in range(n_max - 1)]
    found = next((i + 1 for i in range(last_start) if tail[i] <= tol), None)
    diffs = Family(
        f"differences of {family.name}",
        lambda n: members[n] ^ members[n - 1] if n < n_max else DyadicSet.empty(),
        "disjoint", None,
    )
    ex = check_exhaustive_sequence(rule, diffs, n_max - 1 if n_max > 1 else 1, tol)
    details = {"N": found, "tail_sup": tail, "exhaustive_on_differences": ex.verdict}
    if found is None:
        return PropertyReport(name, FAILS, witness={"n_max": n_max, "residual": tail[last_start - 1]}, details=details)
    return PropertyReport(name, HOLDS, details=details)


def check_theorem_3_2(rule: IntervalRule, family: Family, n_max: int, tol: float) -> PropertyReport:
    """``‖μ(A_n)‖ → Σ g_i(len lim A_n)`` for a monotone family."""
    name = "monotone_limit"
    if family.direction not in ("increasing", "decreasing", "constant") or family.limit_length is None:
        return PropertyReport(name, VACUOUS, notes=["needs a monotone family with known limit"])
    problem = _audit_family(family, min(n_max, 20))
    if problem:
        return PropertyReport(name, VACUOUS, notes=[problem])
    limit = analytic_limit(rule, family.limit_length)
    values = [rule.norm(family(n)) for n in range(1, n_max + 1)]
    # first N from which every value stays within tol
    found = None
    for i in range(n_max - 1, -1, -1):
        if abs(values[i] - limit) <= tol:
            found = i + 1
        else:
            break
    if found is None:
        return PropertyReport(name, FAILS, witness={"n_max": n_max, "residual": abs(values[-1] - limit), "limit": limit})
    return PropertyReport(name, HOLDS, details={"N": found, "limit": limit, "value": values[-1]})


def random_dyadic_set(rng: random.Random, depth: int = 8, pieces: int = 3) -> DyadicSet:
    scale = 1 << depth
    ivs = []
    for _ in range(rng.randint(0, pieces)):
        p = rng.randrange(scale)
        q = rng.randint(p, scale)
        ivs.append((p, q))
    return DyadicSet(depth, tuple(ivs))


def check_sampled_subadditivity(
    rule: IntervalRule, samples: int = 10_000, seed: int = 0, tol: float = 1e-12
) -> PropertyReport:
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = random_dyadic_set(rng), random_dyadic_set(rng)
        lhs = rule.norm(a | b)
        rhs = rule.norm(a) + rule.norm(b)
        if lhs > rhs + tol:
            return PropertyReport("sampled_subadditivity", FAILS, witness={"A": str(a), "B": str(b), "lhs": lhs, "rhs": rhs})
    return PropertyReport("sampled_subadditivity", HOLDS, details={"samples": samples, "seed": seed})


def run_suite(rule: IntervalRule, target: TargetSet, tol: float, max_depth: int, continuity_tol: float = 1e-4,
              seed: int = 0) -> list[PropertyReport]:
    """Every dyadic check for one rule and target."""
    fam = inner_family(target)
    return [
        check_eq2_convergence(rule, target, tol, max_depth),
        check_continuity_sequence(rule, shrinking_prefix(), MAX_DEPTH, continuity_tol),
        check_exhaustive_sequence(rule, dyadic_blocks(), MAX_DEPTH - 1, continuity_tol),
        check_mu_cauchy(rule, fam, MAX_DEPTH, continuity_tol),
        check_theorem_3_2(rule, fam, max_depth, tol),
        check_sampled_subadditivity(rule, 2000, seed),
    ]


def numeric_family_norms(rule: IntervalRule, family: Family, ns: Iterable[int]) -> dict[int, float]:
    return {n: rule.norm(family(n)) for n in ns}
