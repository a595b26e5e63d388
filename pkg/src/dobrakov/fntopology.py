"""Neighbourhood bases ``U_ε = {A : ‖μ(A)‖ ≤ ε}``, the pseudometric and closures.

The topology is handled only through this countable base.  On finite
models the closure of a class is decided exactly: a set is adherent iff
it lies at μ-distance 0 from some member.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from dobrakov.errors import DobrakovError
from dobrakov.lattice import LatticeValue, Number, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport
from dobrakov.setring import FiniteSet, SetClass, class_op
from dobrakov.submeasure import Classification, Submeasure, classify, usc_modulus

SetFunction = Callable[[FiniteSet], LatticeValue]

FILTERBASE_GRID = tuple(Fraction(1, 2**j) for j in range(7))


def u_epsilon(mu: Submeasure, eps: Fraction) -> SetClass:
    if eps < 0:
        raise DobrakovError("ε must be nonnegative")
    return SetClass(mu.universe_size, [m for m in mu.masks if mu.norm_of(m) <= eps])


def is_normal(cls: SetClass, ring: SetClass) -> bool:
    """Every ring member below a member of ``cls`` belongs to ``cls``."""
    return all(b in cls for a in cls.masks for b in ring.masks if b & ~a == 0)


def _axiom_failures(mu: Submeasure, u: SetClass, v: SetClass) -> dict[str, object]:
    """Which of the five base conditions fail for the pair (U = U_ε, V = U_δ)."""
    bad: dict[str, object] = {}
    for key, op in (("1", "Δ"), ("2", "∩"), ("5", "∪")):
        prod = class_op(v, v, op)
        out = [s for s in prod if s not in u]
        if out:
            bad[key] = out[0]
    for a in mu.domain:
        out = [s for s in class_op(SetClass(mu.universe_size, [a]), v, "∩") if s not in u]
        if out:
            bad["3"] = (a, out[0])
            break
    if not is_normal(u, mu.domain):
        bad["4"] = "U_eps not normal"
    return bad


def check_filterbase_axioms(
    mu: Submeasure,
    eps_grid: Iterable[Fraction] = FILTERBASE_GRID,
    classification: Classification | None = None,
) -> PropertyReport:
    """For each ε find δ with U_δ Δ̊ U_δ, U_δ ∩̊ U_δ, A ∩̊ U_δ, U_δ ∪̊ U_δ ⊆ U_ε and U_ε normal.

    δ is searched along ε, ε/2, ε/4, ... down to the class of null sets.
    The common value ½·min(ε, usc_modulus(μ, ε/2)) is cross-checked too.
    """
    name = "filterbase_axioms"
    cls = classification or classify(mu)
    if not mu.order_bounded() or not cls.at_least("D_u"):
        return PropertyReport(name, VACUOUS, notes=["needs an order bounded D_u-submeasure"])
    positive = [x for x in (mu.norm_of(m) for m in mu.masks) if x > mu.slack]
    floor = min(positive) / 2 if positive else None
    moduli = {}
    cross = {}
    for eps in sorted({Fraction(e) for e in eps_grid}, reverse=True):
        u = u_epsilon(mu, eps)
        delta = eps
        while True:
            bad = _axiom_failures(mu, u, u_epsilon(mu, delta))
            if not bad or floor is None or delta < floor:
                break
            delta /= 2
        if bad:
            return PropertyReport(
                name, FAILS, witness={"eps": eps, "delta": delta, "failed": bad}, moduli=moduli,
            )
        moduli[eps] = delta
        d_usc = usc_modulus(mu, eps / 2)
        common = eps / 2 if d_usc == float("inf") else min(eps, Fraction(d_usc)) / 2
        cbad = _axiom_failures(mu, u, u_epsilon(mu, common))
        cross[eps] = common
        if cbad:
            return PropertyReport(
                name, FAILS,
                witness={"eps": eps, "usc_common_delta": common, "failed": cbad},
                moduli=moduli, notes=["usc-derived delta does not satisfy the base axioms"],
            )
    return PropertyReport(
        name, HOLDS, moduli=moduli, details={"usc_common_delta": cross},
        notes=["conditions (1)-(5) are the finite-model content of ring-operation continuity"],
    )


def rho(mu: SetFunction, a: FiniteSet, b: FiniteSet) -> Number:
    """``‖μ(A Δ B)‖``; triangle inequality is not guaranteed in general."""
    return norm(mu(a ^ b))


def check_triangle(mu: Submeasure) -> PropertyReport:
    """Triangle inequality of ρ over all triples of the ring."""
    sets = list(mu.domain)
    for a in sets:
        for b in sets:
            for c in sets:
                if rho(mu, a, c) > rho(mu, a, b) + rho(mu, b, c) + mu.slack:
                    return PropertyReport(
                        "rho_triangle", FAILS, witness={"A": a, "B": b, "C": c, "rho(A,C)": rho(mu, a, c)},
                    )
    return PropertyReport("rho_triangle", HOLDS)


def closure(subclass: SetClass, ambient: SetClass, mu_ambient: SetFunction) -> SetClass:
    """Members of ``ambient`` at μ-distance 0 from some member of ``subclass``."""
    if not subclass.issubset(ambient):
        raise DobrakovError("subclass is not contained in the ambient class")
    for x in ambient.masks:
        for y in ambient.masks:
            if x ^ y not in ambient:
                raise DobrakovError("ambient class is not closed under symmetric difference")
    n = ambient.universe_size
    null_cache: dict[int, bool] = {}

    def null(m: int) -> bool:
        if m not in null_cache:
            null_cache[m] = norm(mu_ambient(FiniteSet(n, m))) == 0
        return null_cache[m]

    return SetClass(n, [a for a in ambient.masks if any(null(a ^ e) for e in subclass.masks)])


def check_subring_closure(subring: SetClass, ambient: SetClass, mu_ambient: SetFunction) -> PropertyReport:
    c = closure(subring, ambient, mu_ambient)
    if c.is_ring():
        return PropertyReport("subring_closure", HOLDS, details={"closure": c})
    return PropertyReport("subring_closure", FAILS, witness={"closure": c})


def check_density(ring: SetClass, s: SetClass, mu_on_s: Submeasure) -> PropertyReport:
    """Whether ``ring`` is dense in ``s`` for the topology of ``mu_on_s``."""
    name = "density"
    cls = classify(mu_on_s)
    if not mu_on_s.order_bounded() or not cls.at_least("D_u"):
        return PropertyReport(name, VACUOUS, notes=["needs an order bounded D_u-submeasure on the ambient ring"])
    c = closure(ring, s, mu_on_s)
    notes = []
    if ring == s:
        notes.append("finite universe: the generated sigma-ring equals the ring, density is immediate")
    missing = [x for x in s if x not in c]
    if missing:
        return PropertyReport(name, FAILS, witness={"not_approximable": missing[0]}, notes=notes)
    return PropertyReport(name, HOLDS, details={"closure": c}, notes=notes)
