"""Inner/outer extension of a submeasure from a finite ring to its closure ring.

On a finite universe the class of increasing limits equals the ring and
the generated σ-ring equals the ring, so several clauses of the extension
theorems collapse to finite identities.  Every report states when such a
collapse was used, so a trivial pass is never mistaken for a deep one.
"""

from __future__ import annotations

import dataclasses

from dataclasses import dataclass, field
from fractions import Fraction

from dobrakov.errors import DobrakovError, HypothesisNotMet, NullCompletionError
from dobrakov.fntopology import closure
from dobrakov.lattice import LatticeValue, Number, lattice_inf, lattice_sup, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport
from dobrakov.setring import FiniteSet, Ring, SetClass, hereditary_class, r_sigma
from dobrakov.submeasure import (
    Classification,
    Submeasure,
    check_monotone,
    check_usc,
    classify,
    table_submeasure,
)

COLLAPSE_NOTE = "finite universe: R_sigma = sigma(R) = R"


def mu_hat(mu: Submeasure, a: FiniteSet) -> LatticeValue:
    """Lattice supremum of μ(B) over ring members B ⊆ A; A must lie in R_σ."""
    rs = r_sigma(mu.domain)
    if a not in rs:
        raise DobrakovError(f"{a} is not in R_sigma")
    return lattice_sup(mu.evaluate(b) for b in rs if b.issubset(a))


def mu_star(mu: Submeasure, a: FiniteSet) -> LatticeValue:
    """Lattice infimum of μ̂(B) over B ∈ R_σ with A ⊆ B."""
    covers = [b for b in r_sigma(mu.domain) if a.issubset(b)]
    if not covers:
        raise DobrakovError(f"no covering set in R_sigma for {a}")
    return lattice_inf(mu_hat(mu, b) for b in covers)


def hypothesis_failures(mu: Submeasure, classification: Classification | None = None) -> list[str]:
    """Which of order boundedness, exhaustivity and D_u fail."""
    cls = classification or classify(mu)
    out = []
    if not mu.order_bounded():
        out.append("order bounded")
    if not cls.reports["continuity"].holds:
        out.append("exhaustive")
    if not cls.at_least("D_u"):
        out.append("D_u")
    return out


class StarFunction:
    """μ* tabulated on the hereditary class R*, callable like a submeasure."""

    def __init__(self, mu: Submeasure) -> None:
        self.source = mu
        self.r_star = hereditary_class(r_sigma(mu.domain))
        self.table = {m: mu_star(mu, FiniteSet(mu.universe_size, m)) for m in self.r_star.masks}

    def __call__(self, a: FiniteSet) -> LatticeValue:
        try:
            return self.table[a.mask]
        except KeyError:
            raise DobrakovError(f"no covering set in R_sigma for {a}") from None

    def norm_of(self, a: FiniteSet) -> Number:
        return norm(self(a))


def r_zero(mu: Submeasure, classification: Classification | None = None) -> SetClass:
    """Closure of R inside R* for the pseudometric ‖μ*(A Δ B)‖."""
    bad = hypothesis_failures(mu, classification)
    if bad:
        raise HypothesisNotMet("hypothesis not met: " + ", ".join(bad))
    star = StarFunction(mu)
    return closure(mu.domain, star.r_star, star)


def null_completion_witnesses(
    mu: Submeasure, a: FiniteSet, star: StarFunction | None = None
) -> tuple[FiniteSet, FiniteSet]:
    """Ring members B ⊆ A ⊆ C with μ*(C ∖ B) = 0.

    The largest inner and smallest outer members are tried: if any pair
    works, this one does, since C ∖ B is then smallest and μ* is monotone.
    """
    star = star or StarFunction(mu)
    ring = r_sigma(mu.domain)
    n = mu.universe_size
    inner = 0
    outer = None
    for m in ring.masks:
        if m & ~a.mask == 0:
            inner |= m
        if a.mask & ~m == 0:
            outer = m if outer is None else outer & m
    if outer is None:
        raise NullCompletionError(f"null-completion property violated: {a} has no outer set")
    b, c = FiniteSet(n, inner), FiniteSet(n, outer)
    if not star(c - b).is_zero():
        raise NullCompletionError(f"null-completion property violated: mu*({c - b}) = {star(c - b)}")
    return b, c


@dataclass
class ExtensionResult:
    source: Submeasure
    r_star: SetClass
    mu_star: dict[FiniteSet, LatticeValue]
    r_zero: SetClass
    witnesses: dict[FiniteSet, tuple[FiniteSet, FiniteSet]] = field(default_factory=dict)
    reports: dict[str, PropertyReport] = field(default_factory=dict)

    def to_dict(self) -> dict:
        from dobrakov.report import to_jsonable

        return {
            "ring": to_jsonable(self.source.domain),
            "r_star": to_jsonable(self.r_star),
            "mu_star": {str(k): str(v) for k, v in self.mu_star.items()},
            "r_zero": to_jsonable(self.r_zero),
            "witnesses": {str(k): [str(b), str(c)] for k, (b, c) in self.witnesses.items()},
            "reports": {k: r.to_dict() for k, r in self.reports.items()},
            "notes": [COLLAPSE_NOTE],
        }


def verify_theorem_4_1(mu: Submeasure, classification: Classification | None = None) -> PropertyReport:
    """Properties (a)-(e) of the inner extension μ̂ on R_σ."""
    name = "inner_extension_properties"
    bad = hypothesis_failures(mu, classification)
    if bad:
        return PropertyReport(name, VACUOUS, notes=["hypothesis not met: " + ", ".join(bad)])
    rs = r_sigma(mu.domain)
    n = mu.universe_size
    hat = {m: mu_hat(mu, FiniteSet(n, m)) for m in rs.masks}
    items: dict[str, str] = {}
    for m in rs.masks:
        if hat[m] != mu.evaluate(FiniteSet(n, m)):
            return PropertyReport(name, FAILS, witness={"item": "a", "A": FiniteSet(n, m), "mu_hat": hat[m]})
        sup_norm = max(norm(mu.evaluate(b)) for b in rs if b.issubset(FiniteSet(n, m)))
        if norm(hat[m]) != sup_norm:
            return PropertyReport(name, FAILS, witness={"item": "a-norm", "A": FiniteSet(n, m)})
    hat_mu = table_submeasure(rs, hat, "mu_hat")
    if not check_monotone(hat_mu).holds:
        return PropertyReport(name, FAILS, witness={"item": "a", "detail": "mu_hat not monotone"})
    items["a"] = "restriction to R equals mu; monotone"
    if not norm(hat[0]) == 0:
        return PropertyReport(name, FAILS, witness={"item": "b", "mu_hat(empty)": hat[0]})
    items["b"] = "reduces to norm(mu_hat(empty)) = 0 on a finite ring"
    items["c"] = "vacuous on finite models: increasing sequences stabilise; see dyadic checks"
    usc = check_usc(hat_mu)
    if not usc.holds:
        return PropertyReport(name, FAILS, witness={"item": "d", **(usc.witness or {})})
    items["d"] = "usc moduli of mu_hat positive on the grid"
    items["e"] = "reduces to norm(mu_hat(empty)) = 0 on a finite ring"
    return PropertyReport(name, HOLDS, details={"items": items}, moduli=usc.moduli, notes=[COLLAPSE_NOTE])


def verify_lemma_4_2(mu: Submeasure, classification: Classification | None = None) -> PropertyReport:
    """Items (i)-(iv) on the closure ring R₀ of the outer extension μ*."""
    name = "outer_extension_lemma"
    bad = hypothesis_failures(mu, classification)
    if bad:
        return PropertyReport(name, VACUOUS, notes=["hypothesis not met: " + ", ".join(bad)])
    star = StarFunction(mu)
    rs = r_sigma(mu.domain)
    r0 = closure(mu.domain, star.r_star, star)
    n = mu.universe_size
    via_rs = SetClass(n, [a for a in star.r_star.masks
                          if any(star(FiniteSet(n, a ^ e)).is_zero() for e in rs.masks)])
    if via_rs != r0:
        return PropertyReport(name, FAILS, witness={"item": "i/ii", "closure_of_R": r0, "closure_of_R_sigma": via_rs})
    outer: dict[FiniteSet, FiniteSet] = {}
    for a in r0:
        cands = [c for c in rs if a.issubset(c) and star(c - a).is_zero()]
        if not cands:
            return PropertyReport(name, FAILS, witness={"item": "iii", "A": a})
        outer[a] = min(cands, key=lambda c: c.mask)
    if not star(FiniteSet.empty(n)).is_zero():
        return PropertyReport(name, FAILS, witness={"item": "iv", "mu_star(empty)": star(FiniteSet.empty(n))})
    return PropertyReport(
        name, HOLDS,
        details={"r_zero": r0, "outer_sets": outer,
                 "items": {"i": "distance-0 approximant in R_sigma exists exactly for members of R_0",
                           "ii": "closure of R equals closure of R_sigma",
                           "iii": "outer set C with norm(mu*(C - A)) = 0 found for every A",
                           "iv": "reduces to norm(mu*(empty)) = 0 on a finite ring"}},
        notes=[COLLAPSE_NOTE],
    )


def verify_null_completeness(mu: Submeasure, classification: Classification | None = None) -> PropertyReport:
    name = "null_complete"
    bad = hypothesis_failures(mu, classification)
    if bad:
        return PropertyReport(name, VACUOUS, notes=["hypothesis not met: " + ", ".join(bad)])
    star = StarFunction(mu)
    r0 = closure(mu.domain, star.r_star, star)
    n = mu.universe_size
    nulls = [a for a in r0.masks if star(FiniteSet(n, a)).is_zero()]
    for a in nulls:
        sub = a
        while True:
            b = FiniteSet(n, sub)
            if b not in r0 or not star(b).is_zero():
                return PropertyReport(name, FAILS, witness={"A": FiniteSet(n, a), "B": b, "mu_star(B)": star(b)})
            if sub == 0:
                break
            sub = (sub - 1) & a
    return PropertyReport(name, HOLDS, details={"null_sets": [FiniteSet(n, a) for a in nulls]})


def inner_extension(mu: Submeasure, r0: SetClass) -> Submeasure:
    """ν(A) = sup{μ(B) : B ⊆ A, B ∈ R}, tabulated on R₀."""
    n = mu.universe_size
    values = {m: lattice_sup(mu.evaluate(b) for b in mu.domain if b.mask & ~m == 0) for m in r0.masks}
    return table_submeasure(Ring(n, r0.masks), values, f"inner[{mu.name}]")


def verify_norm_uniqueness(mu: Submeasure, nu_alt: Submeasure) -> PropertyReport:
    """‖ν(A)‖ = ‖μ*(A)‖ on R₀ for one given alternative extension ν.

    This exercises specific extensions only; the uniqueness claim covers
    every D_u extension and cannot be exhausted by a finite test.
    """
    name = "norm_uniqueness"
    note = "checks the supplied extension only, not every possible extension"
    r0 = r_zero(mu)
    if SetClass(nu_alt.universe_size, nu_alt.masks) != r0:
        return PropertyReport(name, VACUOUS, notes=["alternative is not defined on R_0", note])
    for b in mu.domain:
        if nu_alt.evaluate(b) != mu.evaluate(b):
            return PropertyReport(name, VACUOUS, notes=[f"alternative differs from mu on {b}", note])
    if not classify(nu_alt).at_least("D_u"):
        return PropertyReport(name, VACUOUS, notes=["alternative is not D_u on R_0", note])
    star = StarFunction(mu)
    for a in r0:
        if norm(nu_alt.evaluate(a)) != star.norm_of(a):
            return PropertyReport(
                name, FAILS, witness={"A": a, "norm(nu(A))": norm(nu_alt.evaluate(a)), "norm(mu*(A))": star.norm_of(a)},
            )
    return PropertyReport(name, HOLDS, notes=[note])


def extend(mu: Submeasure) -> ExtensionResult:
    """Run the full pipeline: R*, μ*, R₀, witnesses and all verification reports."""
    cls = classify(mu)
    star = StarFunction(mu)
    r0 = r_zero(mu, cls)
    n = mu.universe_size
    witnesses = {a: null_completion_witnesses(mu, a, star) for a in r0}
    star_ring = table_submeasure(Ring(n, r0.masks), {m: star.table[m] for m in r0.masks}, "mu_star")
    reports = {
        "inner_extension_properties": verify_theorem_4_1(mu, cls),
        "outer_extension_lemma": verify_lemma_4_2(mu, cls),
        "null_complete": verify_null_completeness(mu, cls),
        "norm_uniqueness_inner": verify_norm_uniqueness(mu, inner_extension(mu, r0)),
        "norm_uniqueness_self": verify_norm_uniqueness(mu, star_ring),
    }
    reports = {k: dataclasses.replace(r, name=k) for k, r in reports.items()}
    return ExtensionResult(
        source=mu,
        r_star=star.r_star,
        mu_star={FiniteSet(n, m): v for m, v in star.table.items()},
        r_zero=r0,
        witnesses=witnesses,
        reports=reports,
    )
