"""Lattice-valued set functions on finite rings and their exact property checks.

A :class:`Submeasure` evaluates its rule on every member of its ring at
construction, so all checks below are brute-force sweeps over a finite
table of exact values.  Values of the ``sqrt``/``power`` distortions are
40-digit rational approximations; instances built from them carry a
comparison slack of ``1e-30`` that every inequality below honours.

Moduli follow the strict "‖μ(B)‖ < δ" convention: the largest admissible
δ is the smallest norm among violating sets, which is itself admissible.
A modulus of ``0`` means no positive δ exists (the property fails) and
``math.inf`` means no set violates at all.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from dobrakov.distortion import COMPARISON_SLACK, Distortion
from dobrakov.errors import DobrakovError, PGPFailure, SetOutsideRing
from dobrakov.lattice import INF, LatticeValue, Number, is_order_bounded, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport
from dobrakov.setring import FiniteSet, Ring, enumerate_subrings

DEFAULT_EPS_GRID: tuple[Fraction, ...] = tuple(Fraction(1, 2**j) for j in range(11))

DELTA_POLICY = "delta_{k+1} = 1/2 * min(2^-(k+1), delta_k, pgp_modulus(mu, delta_k)); delta_1 = 1/2 * min(1/2, pgp_modulus(mu, 1/2))"

CLASS_ORDER = ("not-D", "D", "D_u", "D_s", "D_a")


# -- rules -------------------------------------------------------------------


@dataclass(frozen=True)
class Additive:
    weights: tuple[LatticeValue, ...]


@dataclass(frozen=True)
class Distorted:
    base_weights: tuple[Fraction, ...]
    distortion: Distortion
    direction: LatticeValue


@dataclass(frozen=True)
class Table:
    values: Mapping[FiniteSet, LatticeValue]


@dataclass(frozen=True)
class ChoquetDerived:
    base: "Submeasure"
    density: tuple[Fraction, ...]


Rule = Additive | Distorted | Table | ChoquetDerived


class Submeasure:
    """A total map from a finite :class:`Ring` into the extended cone."""

    def __init__(self, domain: Ring, rule: Rule, name: str | None = None) -> None:
        self.domain = domain
        self.rule = rule
        self.name = name or type(rule).__name__.lower()
        n = domain.universe_size
        self.slack = Fraction(0)
        if isinstance(rule, Additive):
            if len(rule.weights) != n:
                raise DobrakovError("one weight per point is required")
            if any(w.is_top for w in rule.weights):
                raise DobrakovError("additive weights must be vectors")
        elif isinstance(rule, Distorted):
            if len(rule.base_weights) != n:
                raise DobrakovError("one base weight per point is required")
            if any(w < 0 for w in rule.base_weights):
                raise DobrakovError("base weights must be nonnegative")
            if rule.direction.is_top:
                raise DobrakovError("direction vector must not be top")
            if not rule.distortion.exact:
                self.slack = COMPARISON_SLACK
        elif isinstance(rule, ChoquetDerived):
            if rule.base.domain != domain:
                raise DobrakovError("Choquet-derived rule must share the base ring")
            if len(rule.density) != n:
                raise DobrakovError("density needs one value per point")
            self.slack = rule.base.slack
        elif isinstance(rule, Table):
            missing = [s for s in domain if s not in rule.values]
            if missing:
                raise DobrakovError(f"table does not cover {missing[0]}")
        else:
            raise DobrakovError(f"unknown rule {rule!r}")
        self._values = {m: self._compute(FiniteSet(n, m)) for m in domain.masks}
        dims = {v.dim for v in self._values.values() if not v.is_top}
        if len(dims) > 1:
            raise DobrakovError("values of one submeasure must share a dimension")
        self.dimension = dims.pop() if dims else 1
        self._norms = {m: norm(v) for m, v in self._values.items()}

    def _compute(self, a: FiniteSet) -> LatticeValue:
        rule = self.rule
        if isinstance(rule, Additive):
            total = LatticeValue.zero(rule.weights[0].dim)
            for t in a:
                total = total + rule.weights[t]
            return total
        if isinstance(rule, Distorted):
            x = sum((rule.base_weights[t] for t in a), Fraction(0))
            g = rule.distortion(x)
            if g == 0:
                return LatticeValue.zero(rule.direction.dim)
            return rule.direction.scale(g)
        if isinstance(rule, Table):
            return rule.values[a]
        from dobrakov.choquet import choquet_integral

        return choquet_integral(rule.base, rule.density, a)

    def __call__(self, a: FiniteSet) -> LatticeValue:
        return self.evaluate(a)

    def evaluate(self, a: FiniteSet) -> LatticeValue:
        if a.universe_size != self.domain.universe_size or a.mask not in self._values:
            raise SetOutsideRing(a)
        return self._values[a.mask]

    def norm_of(self, a: FiniteSet | int) -> Number:
        m = a.mask if isinstance(a, FiniteSet) else a
        try:
            return self._norms[m]
        except KeyError:
            raise SetOutsideRing(a) from None

    @property
    def universe_size(self) -> int:
        return self.domain.universe_size

    @property
    def masks(self) -> tuple[int, ...]:
        return self.domain.masks

    def values(self) -> dict[FiniteSet, LatticeValue]:
        n = self.universe_size
        return {FiniteSet(n, m): v for m, v in self._values.items()}

    def order_bounded(self) -> bool:
        return is_order_bounded(self._values.values())[0]

    def fs(self, m: int) -> FiniteSet:
        return FiniteSet(self.universe_size, m)

    def __repr__(self) -> str:
        return f"Submeasure({self.name}, ring of {len(self.domain)} sets on {self.universe_size} points)"


def table_submeasure(domain: Ring, values: Mapping[FiniteSet | int, LatticeValue], name: str = "table") -> Submeasure:
    n = domain.universe_size
    fixed = {k if isinstance(k, FiniteSet) else FiniteSet(n, k): v for k, v in values.items()}
    return Submeasure(domain, Table(fixed), name)


def zero_submeasure(domain: Ring, dim: int = 1) -> Submeasure:
    w = tuple(LatticeValue.zero(dim) for _ in range(domain.universe_size))
    return Submeasure(domain, Additive(w), "zero")


# -- slack-aware comparisons -------------------------------------------------


def _le(a: Number, b: Number, s: Fraction) -> bool:
    return a <= (b + s if s else b)


def _lt(a: Number, b: Number, s: Fraction) -> bool:
    return a < (b + s if s else b)


def _absdiff(a: Number, b: Number) -> Number:
    if a == INF and b == INF:
        return Fraction(0)
    if a == INF or b == INF:
        return INF
    return abs(a - b)


def _is_null(x: Number, s: Fraction) -> bool:
    return x <= s


def _vle(x: LatticeValue, y: LatticeValue, s: Fraction) -> bool:
    if y.is_top:
        return True
    if x.is_top:
        return False
    return all(a <= b + s for a, b in zip(x.components, y.components))


def _eps_grid(mu: Submeasure, grid: Iterable[Fraction] | None) -> list[Fraction]:
    eps = sorted(set(DEFAULT_EPS_GRID if grid is None else (Fraction(e) for e in grid)), reverse=True)
    if any(e <= 0 for e in eps):
        raise DobrakovError("ε values must be positive")
    return eps


def critical_epsilon(mu: Submeasure) -> Fraction | None:
    """Half the smallest positive gap between attained norms.

    On a finite ring an ε-indexed property that holds at this ε holds for
    every smaller ε as well, which turns "for all ε > 0" into one check.
    """
    finite = sorted({x for x in mu._norms.values() if x != INF})
    gaps = [b - a for a, b in zip(finite, finite[1:]) if b - a > mu.slack]
    gaps += [x for x in finite if x > mu.slack]
    return min(gaps) / 2 if gaps else None


def classification_grid(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> list[Fraction]:
    eps = set(_eps_grid(mu, grid))
    crit = critical_epsilon(mu)
    if crit is not None:
        eps.add(crit)
    return sorted(eps, reverse=True)


# -- axioms ------------------------------------------------------------------


def check_monotone(mu: Submeasure) -> PropertyReport:
    s = mu.slack
    for a, b in itertools.product(mu.masks, repeat=2):
        if a != b and a & ~b == 0 and not _vle(mu._values[a], mu._values[b], s):
            return PropertyReport(
                "monotone", FAILS,
                witness={"A": mu.fs(a), "B": mu.fs(b), "mu(A)": mu._values[a], "mu(B)": mu._values[b]},
            )
    return PropertyReport("monotone", HOLDS)


def _empty_null_report(mu: Submeasure, name: str, note: str) -> PropertyReport:
    v = mu._norms[0]
    if _is_null(v, mu.slack):
        return PropertyReport(name, HOLDS, notes=[note])
    return PropertyReport(name, FAILS, witness={"A": mu.fs(0), "norm(mu(A))": v}, notes=[note])


def check_continuity(mu: Submeasure) -> PropertyReport:
    return _empty_null_report(
        mu, "continuity",
        "finite ring: every sequence decreasing to the empty set is eventually empty, "
        "so continuity reduces to norm(mu(empty)) = 0",
    )


def check_exhaustive(mu: Submeasure) -> PropertyReport:
    return _empty_null_report(
        mu, "exhaustive",
        "finite ring: a pairwise disjoint sequence is eventually empty, "
        "so exhaustivity reduces to norm(mu(empty)) = 0",
    )


def _sc_violates(mu: Submeasure, a: int, b: int, eps: Fraction) -> bool:
    nv, s = mu._norms, mu.slack
    na = nv[a]
    return not (_le(nv[a | b], na + eps, s) and _le(na, nv[a & ~b] + eps, s))


def sc_violator(mu: Submeasure, a: FiniteSet, eps: Fraction) -> FiniteSet | None:
    """Violating B of smallest norm (ties broken by bitmask)."""
    mu.norm_of(a)
    best = None
    for b in mu.masks:
        if _sc_violates(mu, a.mask, b, eps) and (best is None or mu._norms[b] < mu._norms[best]):
            best = b
    return None if best is None else mu.fs(best)


def sc_modulus(mu: Submeasure, a: FiniteSet, eps: Fraction) -> Number:
    """Largest δ such that ‖μ(B)‖ < δ forces both halves of subadditive continuity at ``a``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise DobrakovError("ε must be positive")
    b = sc_violator(mu, a, eps)
    if b is None:
        return INF
    return mu._norms[b.mask]


def usc_modulus(mu: Submeasure, eps: Fraction) -> Number:
    return min(sc_modulus(mu, mu.fs(a), eps) for a in mu.masks)


def _positive(delta: Number, s: Fraction) -> bool:
    return delta > s


def check_sc(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> PropertyReport:
    moduli = {}
    for eps in classification_grid(mu, grid):
        worst = INF
        for a in mu.masks:
            d = sc_modulus(mu, mu.fs(a), eps)
            if not _positive(d, mu.slack):
                b = sc_violator(mu, mu.fs(a), eps)
                return PropertyReport(
                    "subadditive_continuity", FAILS,
                    witness={"A": mu.fs(a), "B": b, "eps": eps,
                             "norm(mu(A))": mu._norms[a], "norm(mu(B))": mu._norms[b.mask],
                             "norm(mu(A|B))": mu._norms[a | b.mask],
                             "norm(mu(A-B))": mu._norms[a & ~b.mask]},
                    moduli=moduli,
                )
            worst = min(worst, d)
        moduli[eps] = worst
    return PropertyReport("subadditive_continuity", HOLDS, moduli=moduli)


def check_usc(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> PropertyReport:
    moduli = {}
    for eps in classification_grid(mu, grid):
        d = usc_modulus(mu, eps)
        moduli[eps] = d
        if not _positive(d, mu.slack):
            a = min(mu.masks, key=lambda m: sc_modulus(mu, mu.fs(m), eps))
            return PropertyReport(
                "uniform_subadditive_continuity", FAILS,
                witness={"A": mu.fs(a), "B": sc_violator(mu, mu.fs(a), eps), "eps": eps}, moduli=moduli,
            )
    return PropertyReport("uniform_subadditive_continuity", HOLDS, moduli=moduli)


def check_subadditive(mu: Submeasure) -> PropertyReport:
    nv, s = mu._norms, mu.slack
    for a, b in itertools.combinations_with_replacement(mu.masks, 2):
        if not _le(nv[a | b], nv[a] + nv[b], s):
            return PropertyReport(
                "subadditive", FAILS,
                witness={"A": mu.fs(a), "B": mu.fs(b), "norm(mu(A|B))": nv[a | b],
                         "norm(mu(A))+norm(mu(B))": nv[a] + nv[b]},
            )
    return PropertyReport("subadditive", HOLDS)


def check_additive(mu: Submeasure) -> PropertyReport:
    nv, s = mu._norms, mu.slack
    for a, b in itertools.combinations_with_replacement(mu.masks, 2):
        if a & b:
            continue
        lhs, rhs = nv[a | b], nv[a] + nv[b]
        if not (lhs == rhs or _absdiff(lhs, rhs) <= s):
            return PropertyReport(
                "additive", FAILS,
                witness={"A": mu.fs(a), "B": mu.fs(b), "norm(mu(A|B))": lhs,
                         "norm(mu(A))+norm(mu(B))": rhs},
            )
    return PropertyReport("additive", HOLDS)


# -- Lemma-style equivalences -------------------------------------------------


def _symdiff_sc_modulus(mu: Submeasure, a: int, eps: Fraction) -> Number:
    nv, s = mu._norms, mu.slack
    worst = INF
    for c in mu.masks:
        if _absdiff(nv[c], nv[a]) > eps + s:
            worst = min(worst, nv[a ^ c])
    return worst


def check_sc_equivalence(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> PropertyReport:
    """Compare the modulus form of (s.c.) with the symmetric-difference form.

    For every A and ε both formulations are decided exactly; the verdict
    holds when they agree everywhere.  The equivalence relies on
    monotonicity, so a non-monotone μ yields a vacuous verdict.
    """
    name = "sc_equivalence"
    if not check_monotone(mu).holds:
        return PropertyReport(name, VACUOUS, notes=["mu is not monotone; the equivalence needs monotonicity"])
    s = mu.slack
    moduli = {}
    sc_all = True
    for eps in classification_grid(mu, grid):
        for a in mu.masks:
            d_mod = sc_modulus(mu, mu.fs(a), eps)
            d_sym = _symdiff_sc_modulus(mu, a, eps)
            ok_mod, ok_sym = _positive(d_mod, s), _positive(d_sym, s)
            moduli[(str(mu.fs(a)), eps)] = (d_mod, d_sym)
            sc_all = sc_all and ok_mod
            if ok_mod != ok_sym:
                return PropertyReport(
                    name, FAILS,
                    witness={"A": mu.fs(a), "eps": eps, "modulus_form": d_mod, "symdiff_form": d_sym},
                    moduli=moduli,
                )
    return PropertyReport(name, HOLDS, moduli=moduli, details={"sc_holds": sc_all})


def _pair_usc_modulus(mu: Submeasure, eps: Fraction) -> Number:
    nv, s = mu._norms, mu.slack
    worst = INF
    for a, b in itertools.combinations(mu.masks, 2):
        if _absdiff(nv[a], nv[b]) > eps + s:
            worst = min(worst, nv[a ^ b])
    return worst


def check_usc_equivalence(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> PropertyReport:
    name = "usc_equivalence"
    if not check_monotone(mu).holds:
        return PropertyReport(name, VACUOUS, notes=["mu is not monotone; the equivalence needs monotonicity"])
    s = mu.slack
    moduli = {}
    usc_all = True
    for eps in classification_grid(mu, grid):
        d_mod, d_pair = usc_modulus(mu, eps), _pair_usc_modulus(mu, eps)
        moduli[eps] = (d_mod, d_pair)
        usc_all = usc_all and _positive(d_mod, s)
        if _positive(d_mod, s) != _positive(d_pair, s):
            return PropertyReport(
                name, FAILS, witness={"eps": eps, "modulus_form": d_mod, "pair_form": d_pair}, moduli=moduli,
            )
    return PropertyReport(name, HOLDS, moduli=moduli, details={"usc_holds": usc_all})


# -- pseudometric generating property ------------------------------------------


def _pgp_violator(mu: Submeasure, eps: Fraction) -> tuple[int, int] | None:
    nv, s = mu._norms, mu.slack
    best, best_val = None, INF
    for a, b in itertools.combinations_with_replacement(mu.masks, 2):
        if not _lt(nv[a | b], eps, s):
            m = max(nv[a], nv[b])
            if best is None or m < best_val:
                best, best_val = (a, b), m
    return best


def pgp_modulus(mu: Submeasure, eps: Fraction) -> Number:
    """Largest δ with: max(‖μ(A)‖, ‖μ(B)‖) < δ implies ‖μ(A∪B)‖ < ε."""
    eps = Fraction(eps)
    if eps <= 0:
        raise DobrakovError("ε must be positive")
    pair = _pgp_violator(mu, eps)
    if pair is None:
        return INF
    return max(mu._norms[pair[0]], mu._norms[pair[1]])


def check_pgp(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> PropertyReport:
    moduli = {}
    for eps in classification_grid(mu, grid):
        d = pgp_modulus(mu, eps)
        moduli[eps] = d
        if not _positive(d, mu.slack):
            a, b = _pgp_violator(mu, eps)
            return PropertyReport(
                "pgp", FAILS, witness={"A": mu.fs(a), "B": mu.fs(b), "eps": eps,
                                       "norm(mu(A|B))": mu._norms[a | b]},
                moduli=moduli,
            )
    return PropertyReport("pgp", HOLDS, moduli=moduli)


def delta_sequence(mu: Submeasure, k_max: int) -> list[Fraction]:
    """A sequence δ_1 > δ_2 > ... chained through the p.g.p. moduli.

    Each δ_{k+1} lies below 2^-(k+1) and δ_k, and pairs with norms below
    δ_{k+1} have unions below δ_k (see :data:`DELTA_POLICY`).
    """
    if k_max < 1:
        raise DobrakovError("k_max must be positive")
    out: list[Fraction] = []
    prev_eps = Fraction(1, 2)
    for k in range(1, k_max + 1):
        d = pgp_modulus(mu, prev_eps)
        if not _positive(d, mu.slack):
            a, b = _pgp_violator(mu, prev_eps)
            raise PGPFailure(
                f"p.g.p. fails at eps={prev_eps}: pair {mu.fs(a)}, {mu.fs(b)} has null norms "
                f"but union norm {mu._norms[a | b]}"
            )
        bounds = [Fraction(1, 2**k)]
        if out:
            bounds.append(out[-1])
        if d != INF:
            bounds.append(Fraction(d))
        out.append(min(bounds) / 2)
        prev_eps = out[-1]
    return out


def verify_chained_union_bound(
    mu: Submeasure, deltas: Sequence[Fraction], family: Sequence[FiniteSet]
) -> PropertyReport:
    """Check ‖μ(A_{k+1} ∪ ... ∪ A_{k+p})‖ < δ_k for every admissible k, p."""
    name = "chained_union_bound"
    s = mu.slack
    if len(family) > len(deltas):
        return PropertyReport(name, VACUOUS, notes=["family longer than the delta sequence"])
    for i, a in enumerate(family):
        if a.mask not in mu._values:
            return PropertyReport(name, VACUOUS, notes=[f"A_{i + 1} = {a} is outside the ring"])
        if not _lt(mu._norms[a.mask], deltas[i], s):
            return PropertyReport(name, VACUOUS, notes=[f"norm(mu(A_{i + 1})) >= delta_{i + 1}"])
    for i, j in itertools.combinations(range(len(family)), 2):
        if family[i].mask & family[j].mask:
            return PropertyReport(name, VACUOUS, notes=[f"A_{i + 1} and A_{j + 1} intersect"])
    m = len(family)
    for k in range(1, m):
        union = 0
        for p in range(1, m - k + 1):
            union |= family[k + p - 1].mask
            if not _lt(mu._norms[union], deltas[k - 1], s):
                return PropertyReport(
                    name, FAILS,
                    witness={"k": k, "p": p, "union": mu.fs(union), "norm": mu._norms[union],
                             "delta_k": deltas[k - 1]},
                )
    return PropertyReport(name, HOLDS, details={"length": m})


def random_admissible_family(
    mu: Submeasure, deltas: Sequence[Fraction], rng: random.Random, length: int | None = None
) -> list[FiniteSet]:
    """Random pairwise disjoint family with ‖μ(A_k)‖ < δ_k.

    The empty set is always a candidate, so this never fails when
    μ(∅) = 0.
    """
    length = len(deltas) if length is None else length
    used = 0
    out = []
    for k in range(length):
        cands = [m for m in mu.masks if m & used == 0 and _lt(mu._norms[m], deltas[k], mu.slack)]
        if not cands:
            raise DobrakovError("no admissible set at position %d" % (k + 1))
        m = rng.choice(cands)
        used |= m
        out.append(mu.fs(m))
    return out


# -- classification ----------------------------------------------------------


@dataclass
class Classification:
    label: str
    reports: dict[str, PropertyReport] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return CLASS_ORDER.index(self.label)

    def at_least(self, label: str) -> bool:
        return self.rank >= CLASS_ORDER.index(label)

    def flag(self, name: str) -> bool:
        return self.reports[name].holds

    def hierarchy_violations(self) -> list[str]:
        """Implications D_a ⇒ D_s ⇒ D_u ⇒ D checked on the raw flags."""
        out = []
        base = self.flag("monotone") and self.flag("continuity")
        if base and self.flag("additive") and not self.flag("subadditive"):
            out.append("additive but not subadditive")
        if base and self.flag("subadditive") and not self.flag("uniform_subadditive_continuity"):
            out.append("subadditive but not uniformly subadditively continuous")
        if self.flag("uniform_subadditive_continuity") and not self.flag("subadditive_continuity"):
            out.append("(u.s.c.) without (s.c.)")
        return out


def classify(mu: Submeasure, grid: Iterable[Fraction] | None = None) -> Classification:
    """Strongest of not-D, D, D_u, D_s, D_a whose conditions all hold.

    Every condition is evaluated independently, so the hierarchy can be
    audited with :meth:`Classification.hierarchy_violations`.
    """
    grid = None if grid is None else list(grid)
    reports = {
        "monotone": check_monotone(mu),
        "continuity": check_continuity(mu),
        "subadditive_continuity": check_sc(mu, grid),
        "uniform_subadditive_continuity": check_usc(mu, grid),
        "subadditive": check_subadditive(mu),
        "additive": check_additive(mu),
    }
    ok = {k: r.holds for k, r in reports.items()}
    base = ok["monotone"] and ok["continuity"]
    if base and ok["additive"]:
        label = "D_a"
    elif base and ok["subadditive"]:
        label = "D_s"
    elif base and ok["uniform_subadditive_continuity"]:
        label = "D_u"
    elif base and ok["subadditive_continuity"]:
        label = "D"
    else:
        label = "not-D"
    return Classification(label, reports)


# -- Theorem-level checks ----------------------------------------------------


def check_sigma_subadditive(
    mu: Submeasure, max_cover: int = 4, classification: Classification | None = None
) -> PropertyReport:
    """‖μ(A)‖ ≤ Σ‖μ(A_i)‖ for every cover of A by at most ``max_cover`` ring sets."""
    name = "sigma_subadditive"
    cls = classification or classify(mu)
    if not cls.at_least("D_s"):
        return PropertyReport(name, VACUOUS, notes=[f"mu is {cls.label}, not D_s"])
    nv, s = mu._norms, mu.slack
    checked = 0
    nonempty = [m for m in mu.masks if m]
    for size in range(1, max_cover + 1):
        for cover in itertools.combinations(nonempty, size):
            union = 0
            for c in cover:
                union |= c
            total = sum((nv[c] for c in cover), Fraction(0))
            for a in mu.masks:
                if a & ~union:
                    continue
                checked += 1
                if not _le(nv[a], total, s):
                    return PropertyReport(
                        name, FAILS,
                        witness={"A": mu.fs(a), "cover": [mu.fs(c) for c in cover],
                                 "norm(mu(A))": nv[a], "sum": total},
                    )
    return PropertyReport(
        name, HOLDS, details={"covers_checked": checked, "max_cover": max_cover},
        notes=["on a finite ring, finite covers realise the countable statement"],
    )


def ac_modulus(mu: Submeasure, eps: Fraction) -> Number:
    """Largest δ with ‖μ(A)‖ + ‖μ(B)‖ < δ implying ‖μ(A∪B)‖ < ε."""
    nv, s = mu._norms, mu.slack
    worst = INF
    for a, b in itertools.combinations_with_replacement(mu.masks, 2):
        if not _lt(nv[a | b], eps, s):
            worst = min(worst, nv[a] + nv[b])
    return worst


def check_ac_condition(
    mu: Submeasure, grid: Iterable[Fraction] | None = None, classification: Classification | None = None
) -> PropertyReport:
    name = "ac_condition"
    cls = classification or classify(mu)
    moduli = {}
    for eps in classification_grid(mu, grid):
        d = ac_modulus(mu, eps)
        moduli[eps] = d
        if not _positive(d, mu.slack):
            nv = mu._norms
            pair = next(
                (a, b) for a, b in itertools.combinations_with_replacement(mu.masks, 2)
                if not _lt(nv[a | b], eps, mu.slack) and _is_null(nv[a] + nv[b], mu.slack)
            )
            notes = []
            if cls.at_least("D_u"):
                notes.append("mu is classified D_u yet fails (a.c.): contradicts the D_u => (a.c.) claim")
            return PropertyReport(
                name, FAILS,
                witness={"A": mu.fs(pair[0]), "B": mu.fs(pair[1]), "eps": eps,
                         "norm(mu(A|B))": nv[pair[0] | pair[1]]},
                moduli=moduli, notes=notes,
            )
    notes = ["every D_u instance must pass this check"] if cls.at_least("D_u") else []
    return PropertyReport(name, HOLDS, moduli=moduli, notes=notes, details={"class": cls.label})


def _int_table_is_d(masks: Sequence[int], v: Mapping[int, int]) -> bool:
    if v[0] != 0:
        return False
    for a in masks:
        for b in masks:
            if a & ~b == 0 and v[a] > v[b]:
                return False
    nulls = [b for b in masks if v[b] == 0]
    return all(v[a | b] == v[a] and v[a & ~b] == v[a] for a in masks for b in nulls)


def _int_table_ac_witness(masks: Sequence[int], v: Mapping[int, int]) -> tuple[int, int] | None:
    nulls = [b for b in masks if v[b] == 0]
    for a, b in itertools.combinations_with_replacement(nulls, 2):
        if v[a | b] != 0:
            return a, b
    return None


def search_ac_counterexample(
    max_universe: int = 3, levels: Sequence[int] = (0, 1, 2), samples_at_4: int = 2000, seed: int = 0
) -> PropertyReport:
    """Look for a scalar D-submeasure table violating (a.c.).

    Exhaustive over every ring on at most ``max_universe`` points with
    values drawn from ``levels``, plus seeded random tables on 4 points.
    """
    name = "ac_counterexample_search"
    examined = 0
    for n in range(1, max_universe + 1):
        for ring in enumerate_subrings(n):
            masks = ring.masks
            rest = masks[1:]
            for combo in itertools.product(levels, repeat=len(rest)):
                v = {0: 0, **dict(zip(rest, combo))}
                if not _int_table_is_d(masks, v):
                    continue
                examined += 1
                w = _int_table_ac_witness(masks, v)
                if w:
                    return PropertyReport(
                        name, FAILS,
                        witness={"universe": n, "table": {str(FiniteSet(n, m)): x for m, x in v.items()},
                                 "A": FiniteSet(n, w[0]), "B": FiniteSet(n, w[1])},
                    )
    rng = random.Random(seed)
    if samples_at_4:
        rings4 = enumerate_subrings(4)
        for _ in range(samples_at_4):
            ring = rng.choice(rings4)
            masks = ring.masks
            # subsets have smaller bitmasks, so they are assigned first; max keeps v monotone
            v = {m: 0 for m in masks}
            for m in masks[1:]:
                v[m] = max([rng.choice(levels)] + [v[x] for x in masks if x != m and x & ~m == 0])
            if not _int_table_is_d(masks, v):
                continue
            examined += 1
            w = _int_table_ac_witness(masks, v)
            if w:
                return PropertyReport(
                    name, FAILS,
                    witness={"universe": 4, "table": {str(FiniteSet(4, m)): x for m, x in v.items()},
                             "A": FiniteSet(4, w[0]), "B": FiniteSet(4, w[1])},
                )
    return PropertyReport(
        name, HOLDS, details={"D_instances_examined": examined},
        notes=["no counterexample found at this scale"],
    )
