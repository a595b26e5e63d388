"""Discrete Choquet integral of a nonnegative density against a lattice-valued set function.

For a density taking the values ``0 = x_0 < x_1 < ... < x_m`` on ``A`` the
layer-cake integral collapses to the strip sum

    Σ_j (x_j − x_{j−1}) · μ({t ∈ A : f(t) ≥ x_j})

because ``{t ∈ A : f(t) > x}`` is constant, equal to ``{f ≥ x_j}``, for
``x`` in ``[x_{j−1}, x_j)``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from dobrakov.errors import DobrakovError
from dobrakov.lattice import LatticeValue, difference_norm, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport
from dobrakov.setring import FiniteSet
from dobrakov.submeasure import (
    ChoquetDerived,
    DEFAULT_EPS_GRID,
    Submeasure,
    check_monotone,
    check_pgp,
)

Density = Sequence[Fraction]


def as_density(values: Sequence[int | str | Fraction], universe_size: int | None = None) -> tuple[Fraction, ...]:
    f = tuple(Fraction(v) for v in values)
    if any(v < 0 for v in f):
        raise DobrakovError("density must be nonnegative")
    if universe_size is not None and len(f) != universe_size:
        raise DobrakovError(f"density needs {universe_size} values, got {len(f)}")
    return f


def level_set(f: Density, a: FiniteSet, x: Fraction) -> FiniteSet:
    """``{t ∈ a : f(t) ≥ x}``."""
    return FiniteSet.of(a.universe_size, (t for t in a if f[t] >= x))


def measurability_violations(mu: Submeasure, f: Density) -> list[tuple[FiniteSet, Fraction, FiniteSet]]:
    """Every ``(A, level, level set)`` whose level set lies outside the ring."""
    out = []
    for a in mu.domain:
        for x in sorted({f[t] for t in a if f[t] > 0}):
            ls = level_set(f, a, x)
            if ls not in mu.domain:
                out.append((a, x, ls))
    return out


def choquet_integral(mu: Submeasure, f: Density, a: FiniteSet) -> LatticeValue:
    f = as_density(f, mu.universe_size)
    if a not in mu.domain:
        raise DobrakovError(f"set outside ring: {a}")
    base = mu.evaluate(FiniteSet.empty(mu.universe_size))
    if not base.is_zero():
        raise DobrakovError("the Choquet integral needs mu(empty) = 0")
    total = LatticeValue.zero(mu.dimension)
    prev = Fraction(0)
    for x in sorted({f[t] for t in a if f[t] > 0}):
        ls = level_set(f, a, x)
        if ls not in mu.domain:
            raise DobrakovError(f"density not measurable: level set {{f >= {x}}} ∩ {a} = {ls} is outside the ring")
        total = total + mu.evaluate(ls).scale(x - prev)
        prev = x
    return total


def derived_submeasure(mu: Submeasure, f: Density) -> Submeasure:
    """The set function ``A ↦ (C)∫_A f dμ`` on the ring of ``mu``."""
    f = as_density(f, mu.universe_size)
    bad = measurability_violations(mu, f)
    if bad:
        a, x, ls = bad[0]
        raise DobrakovError(f"density not measurable: level set {{f >= {x}}} ∩ {a} = {ls} is outside the ring")
    return Submeasure(mu.domain, ChoquetDerived(mu, f), f"choquet[{mu.name}]")


def check_sup_lipschitz(mu: Submeasure, f: Density, g: Density, a: FiniteSet) -> PropertyReport:
    """Check ‖ν_f(A) − ν_g(A)‖ ≤ τ·‖μ(A)‖ with τ = max over A of |f − g|.

    Follows from ``g − τ ≤ f ≤ g + τ`` on A, monotonicity of the integral
    in the density, and ``∫(g + τ) = ∫g + τ·μ(A)`` componentwise.
    """
    name = "sup_lipschitz"
    if not check_monotone(mu).holds or not mu.evaluate(FiniteSet.empty(mu.universe_size)).is_zero():
        return PropertyReport(name, VACUOUS, notes=["needs mu monotone with mu(empty) = 0"])
    if mu.evaluate(a).is_top:
        return PropertyReport(name, VACUOUS, notes=["mu(A) is top"])
    f = as_density(f, mu.universe_size)
    g = as_density(g, mu.universe_size)
    tau = max((abs(f[t] - g[t]) for t in a), default=Fraction(0))
    lhs = difference_norm(choquet_integral(mu, f, a), choquet_integral(mu, g, a))
    rhs = tau * norm(mu.evaluate(a)) + mu.slack
    details = {"tau": tau, "lhs": lhs, "rhs": tau * norm(mu.evaluate(a))}
    if lhs <= rhs:
        return PropertyReport(name, HOLDS, details=details)
    return PropertyReport(name, FAILS, witness={"A": a, "f": list(f), "g": list(g), **details})


def check_pgp_preservation(mu: Submeasure, f: Density, grid=None) -> PropertyReport:
    name = "pgp_preservation"
    base = check_pgp(mu, grid if grid is not None else DEFAULT_EPS_GRID)
    if not base.holds:
        return PropertyReport(name, VACUOUS, notes=["mu lacks the p.g.p."])
    nu = derived_submeasure(mu, f)
    if norm(nu.evaluate(nu.domain.largest)) == float("inf"):
        return PropertyReport(name, VACUOUS, notes=["norm of nu_f on the largest set is infinite"])
    rep = check_pgp(nu, grid if grid is not None else DEFAULT_EPS_GRID)
    if rep.holds:
        return PropertyReport(name, HOLDS, moduli=rep.moduli)
    return PropertyReport(name, FAILS, witness=rep.witness, moduli=rep.moduli)


def random_density(rng: random.Random, mu: Submeasure, max_value: int = 4, denominator: int = 2) -> tuple[Fraction, ...]:
    """A random density constant on each atom of the ring (hence measurable)."""
    f = [Fraction(0)] * mu.universe_size
    for atom in mu.domain.atoms():
        v = Fraction(rng.randint(0, max_value * denominator), denominator)
        for t in atom:
            f[t] = v
    return tuple(f)
