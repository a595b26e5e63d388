"""Brute-force reference implementations on plain Python sets.

Nothing here imports the library's algorithms: sets are frozensets,
values are tuples of Fractions (None for top) and every quantity is
computed straight from its definition.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def subsets(points):
    points = sorted(points)
    return [frozenset(c) for r in range(len(points) + 1) for c in itertools.combinations(points, r)]


def is_ring(family) -> bool:
    fam = set(family)
    return frozenset() in fam and all(a ^ b in fam and a & b in fam for a in fam for b in fam)


def all_rings(n: int) -> list[frozenset]:
    """Every ring on {0..n-1}, by filtering all families of subsets."""
    ps = subsets(range(n))
    out = []
    for bits in range(1 << len(ps)):
        fam = frozenset(ps[i] for i in range(len(ps)) if bits >> i & 1)
        if is_ring(fam):
            out.append(fam)
    return out


def smallest_ring(n: int, gens) -> frozenset:
    """Intersection of all rings containing ``gens``."""
    gens = set(gens)
    rings = [r for r in all_rings(n) if gens <= r]
    return frozenset.intersection(*rings)


def vnorm(v):
    return float("inf") if v is None else sum(v, Fraction(0))


def vle(x, y) -> bool:
    if y is None:
        return True
    if x is None:
        return False
    return all(a <= b for a, b in zip(x, y))


def vsup(vs):
    vs = list(vs)
    if any(v is None for v in vs):
        return None
    return tuple(max(c) for c in zip(*vs))


def vinf(vs):
    vs = [v for v in vs if v is not None]
    if not vs:
        return None
    return tuple(min(c) for c in zip(*vs))


def table_of(mu) -> dict:
    """The library submeasure as a frozenset -> tuple table (read-only use)."""
    out = {}
    for a, v in mu.values().items():
        out[frozenset(a)] = None if v.is_top else tuple(v.components)
    return out


def flags(table: dict) -> dict:
    """Defining conditions evaluated directly on an exact table.

    On a finite ring ``for every ε > 0 there is δ > 0`` reduces to the null
    sets: δ below the smallest positive norm leaves only B with norm 0, and
    an inequality ``x ≤ y + ε`` for all ε > 0 means ``x ≤ y``.
    """
    sets = list(table)
    n = {a: vnorm(v) for a, v in table.items()}
    null = [b for b in sets if n[b] == 0]
    monotone = all(vle(table[a], table[b]) for a in sets for b in sets if a <= b)
    continuity = n[frozenset()] == 0
    sc = all(n[a | b] <= n[a] and n[a] <= n[a - b] for a in sets for b in null)
    sub = all(n[a | b] <= n[a] + n[b] for a in sets for b in sets)
    add = all(n[a | b] == n[a] + n[b] for a in sets for b in sets if not a & b)
    return {"monotone": monotone, "continuity": continuity, "sc": sc, "usc": sc,
            "subadditive": sub, "additive": add}


def label(table: dict) -> str:
    f = flags(table)
    if not (f["monotone"] and f["continuity"] and f["sc"]):
        return "not-D"
    if f["additive"]:
        return "D_a"
    if f["subadditive"]:
        return "D_s"
    return "D_u"


def choquet_riemann(table: dict, f, a, steps_per_unit: int) -> tuple:
    """∫_0^max f μ({t ∈ A : f(t) > x}) dx by midpoint sums.

    Exact when every value of f is a multiple of 1/steps_per_unit, because
    the integrand is then constant on each step.
    """
    a = frozenset(a)
    top = max((f[t] for t in a), default=Fraction(0))
    dim = len(next(v for v in table.values() if v is not None))
    total = [Fraction(0)] * dim
    h = Fraction(1, steps_per_unit)
    k = 0
    while k * h < top:
        mid = (k + Fraction(1, 2)) * h
        level = frozenset(t for t in a if f[t] > mid)
        v = table[level]
        total = [s + h * c for s, c in zip(total, v)]
        k += 1
    return tuple(total)


def mu_hat(table: dict, ring, a):
    return vsup(table[b] for b in ring if b <= a)


def mu_star(table: dict, ring, a):
    return vinf(mu_hat(table, ring, c) for c in ring if a <= c)
