"""A fixed catalog of submeasure instances, each a factory ``Ring -> Submeasure``.

Used by the sweeps: every factory is total on every ring of every
universe size, and together they cover each class of the hierarchy plus
a few instances that fall outside it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from dobrakov.choquet import derived_submeasure
from dobrakov.distortion import Distortion
from dobrakov.lattice import TOP, LatticeValue
from dobrakov.setring import FiniteSet, Ring
from dobrakov.submeasure import Additive, Distorted, Submeasure, Table

Factory = Callable[[Ring], Submeasure]


def _vec(*c) -> LatticeValue:
    return LatticeValue.vec(*c)


def additive(weights_fn: Callable[[int], LatticeValue], name: str) -> Factory:
    def make(ring: Ring) -> Submeasure:
        n = ring.universe_size
        return Submeasure(ring, Additive(tuple(weights_fn(t) for t in range(n))), name)

    return make


def distorted(distortion: str, name: str, direction=(1,), base=lambda t: Fraction(1)) -> Factory:
    g = Distortion.parse(distortion)

    def make(ring: Ring) -> Submeasure:
        n = ring.universe_size
        rule = Distorted(tuple(base(t) for t in range(n)), g, _vec(*direction))
        return Submeasure(ring, rule, name)

    return make


def table(fn: Callable[[FiniteSet], LatticeValue], name: str) -> Factory:
    def make(ring: Ring) -> Submeasure:
        return Submeasure(ring, Table({a: fn(a) for a in ring}), name)

    return make


def choquet(base: Factory, density: Callable[[FiniteSet], Fraction], name: str) -> Factory:
    """Integral of a density that is constant on each atom of the ring."""

    def make(ring: Ring) -> Submeasure:
        mu = base(ring)
        f = [Fraction(0)] * ring.universe_size
        for atom in ring.atoms():
            v = density(atom)
            for t in atom:
                f[t] = v
        nu = derived_submeasure(mu, f)
        nu.name = name
        return nu

    return make


def _max_weight(a: FiniteSet) -> LatticeValue:
    return _vec(max((t + 1 for t in a), default=0))


def _top_when_full(a: FiniteSet) -> LatticeValue:
    if len(a) == a.universe_size and len(a) > 1:
        return TOP
    return _vec(len(a))


CATALOG: dict[str, Factory] = {
    "zero": additive(lambda t: _vec(0), "zero"),
    "counting": additive(lambda t: _vec(1), "counting"),
    "point_mass_0": additive(lambda t: _vec(1 if t == 0 else 0), "point_mass_0"),
    "weighted": additive(lambda t: _vec(Fraction(t + 1, 2)), "weighted"),
    "additive_2d": additive(lambda t: _vec(1, t), "additive_2d"),
    "additive_3d": additive(lambda t: _vec(t % 2, 1, Fraction(1, 3)), "additive_3d"),
    "sqrt_counting": distorted("sqrt", "sqrt_counting"),
    "sqrt_weighted_2d": distorted("sqrt", "sqrt_weighted_2d", (1, 2), lambda t: Fraction(t + 1, 3)),
    "cap2x": distorted("cap2x", "cap2x", base=lambda t: Fraction(1, 4)),
    "cap2x_3d": distorted("cap2x", "cap2x_3d", (1, 0, 1)),
    "x_over_1px": distorted("x_over_1px", "x_over_1px"),
    "cube_root": distorted("power(1/3)", "cube_root", base=lambda t: Fraction(t + 1)),
    "identity_distorted": distorted("identity", "identity_distorted", (2,), lambda t: Fraction(1, t + 1)),
    "squared_size": table(lambda a: _vec(len(a) ** 2), "squared_size"),
    "max_weight": table(_max_weight, "max_weight"),
    "parity": table(lambda a: _vec(len(a) % 2), "parity"),
    "nonnull_empty": table(lambda a: _vec(1), "nonnull_empty"),
    "at_least_two": table(lambda a: _vec(1 if len(a) >= 2 else 0), "at_least_two"),
    "top_on_full": table(_top_when_full, "top_on_full"),
    "size_and_max_2d": table(lambda a: _vec(len(a), max((t for t in a), default=0)), "size_and_max_2d"),
    "choquet_counting": choquet(additive(lambda t: _vec(1), "counting"),
                                lambda atom: Fraction(min(atom) + 1, 2), "choquet_counting"),
    "choquet_sqrt": choquet(distorted("sqrt", "sqrt_counting"),
                            lambda atom: Fraction(len(atom) + min(atom)), "choquet_sqrt"),
    "choquet_at_least_two": choquet(table(lambda a: _vec(1 if len(a) >= 2 else 0), "at_least_two"),
                                    lambda atom: Fraction(2), "choquet_at_least_two"),
}


def instances(ring: Ring) -> list[Submeasure]:
    return [make(ring) for make in CATALOG.values()]
