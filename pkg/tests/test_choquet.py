import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dobrakov.catalog import CATALOG
from dobrakov.choquet import (
    check_pgp_preservation,
    check_sup_lipschitz,
    choquet_integral,
    derived_submeasure,
    level_set,
    measurability_violations,
    random_density,
)
from dobrakov.distortion import Distortion
from dobrakov.errors import DobrakovError
from dobrakov.lattice import LatticeValue
from dobrakov.report import VACUOUS
from dobrakov.setring import FiniteSet, Ring, enumerate_subrings, generate_ring
from dobrakov.submeasure import Additive, Distorted, Submeasure, classify, table_submeasure, zero_submeasure

V = LatticeValue.vec
F = Fraction
P2 = Ring.power_set(2)
P3 = Ring.power_set(3)


def S(n, *pts):
    return FiniteSet.of(n, pts)


def additive(ring, *w):
    return Submeasure(ring, Additive(tuple(V(x) for x in w)))


def test_integral_examples():
    mu = additive(P2, 1, 1)
    assert choquet_integral(mu, (2, 1), S(2, 0, 1)) == V(3)
    table = table_submeasure(P2, {S(2): V(0), S(2, 0): V(1), S(2, 1): V(1), S(2, 0, 1): V(4)})
    assert choquet_integral(table, (2, 1), S(2, 0, 1)) == V(5)
    assert choquet_integral(table, (0, 0), S(2, 0, 1)) == V(0)


def test_table_example_against_riemann_oracle():
    table = table_submeasure(P2, {S(2): V(0), S(2, 0): V(1), S(2, 1): V(1), S(2, 0, 1): V(4)})
    assert oracles.choquet_riemann(oracles.table_of(table), (F(2), F(1)), {0, 1}, 8) == (F(5),)


def test_non_measurable_density_is_rejected():
    ring = generate_ring(2, [S(2, 0, 1)])
    mu = additive(ring, 1, 1)
    with pytest.raises(DobrakovError, match="density not measurable"):
        choquet_integral(mu, (2, 1), S(2, 0, 1))
    assert measurability_violations(mu, (2, 1))
    assert not measurability_violations(mu, (1, 1))


def test_level_set():
    assert level_set((F(2), F(1), F(3)), S(3, 0, 1, 2), F(2)) == S(3, 0, 2)


rings = st.sampled_from(enumerate_subrings(3))


@settings(max_examples=100, deadline=None)
@given(rings, st.lists(st.integers(0, 5), min_size=3, max_size=3), st.integers(0, 10_000))
def test_additive_reduction(ring, w, seed):
    mu = additive(ring, *w)
    f = random_density(random.Random(seed), mu)
    for a in ring:
        assert choquet_integral(mu, f, a) == V(sum(f[t] * w[t] for t in a))


@settings(max_examples=60, deadline=None)
@given(rings, st.sampled_from(["squared_size", "max_weight", "size_and_max_2d", "at_least_two"]),
       st.integers(0, 10_000))
def test_strip_sum_matches_riemann_oracle(ring, name, seed):
    mu = CATALOG[name](ring)
    f = random_density(random.Random(seed), mu, denominator=2)
    t = oracles.table_of(mu)
    for a in ring:
        assert tuple(choquet_integral(mu, f, a).components) == oracles.choquet_riemann(t, f, a, 2)


@settings(max_examples=60, deadline=None)
@given(rings, st.integers(0, 10_000))
def test_integral_is_monotone_in_density(ring, seed):
    rng = random.Random(seed)
    mu = CATALOG["squared_size"](ring)
    f = random_density(rng, mu)
    g = tuple(x + y for x, y in zip(f, random_density(rng, mu)))
    for a in ring:
        assert choquet_integral(mu, f, a) <= choquet_integral(mu, g, a)


def test_derived_submeasure_examples():
    for ring in enumerate_subrings(3):
        mu = CATALOG["weighted"](ring)
        f = random_density(random.Random(1), mu)
        assert classify(derived_submeasure(mu, f)).label == "D_a"
    sq = Submeasure(P3, Distorted((F(1),) * 3, Distortion("sqrt"), V(1)))
    nu = derived_submeasure(sq, (1, 1, 1))
    assert all(nu.evaluate(a) == sq.evaluate(a) for a in P3)
    assert classify(nu).label == "D_s"
    assert classify(derived_submeasure(sq, (1, 2, 3))).label == "D_s"


def test_derived_class_is_preserved_within_subadditive_classes():
    rng = random.Random(7)
    for ring in enumerate_subrings(3):
        for name in ("counting", "sqrt_counting", "cap2x", "max_weight", "x_over_1px"):
            mu = CATALOG[name](ring)
            base = classify(mu)
            if not base.at_least("D_s"):
                continue
            for _ in range(3):
                nu = derived_submeasure(mu, random_density(rng, mu))
                assert classify(nu).at_least("D_s")
                if base.label == "D_a":
                    assert classify(nu).label == "D_a"


def test_sup_lipschitz_examples():
    mu = additive(P2, 1, 1)
    rep = check_sup_lipschitz(mu, (2, 1), (2, 1), S(2, 0, 1))
    assert rep.holds and rep.details["lhs"] == 0
    rep = check_sup_lipschitz(mu, (2, 1), (1, 1), S(2, 0, 1))
    assert rep.holds and rep.details["tau"] == 1 and rep.details["lhs"] == 1 and rep.details["rhs"] == 2
    parity = table_submeasure(P2, {a: V(len(a) % 2) for a in P2})
    assert check_sup_lipschitz(parity, (1, 1), (0, 0), S(2, 0)).verdict == VACUOUS


def test_pgp_preservation_examples():
    assert check_pgp_preservation(additive(P3, 1, 2, 3), (3, 1, 2)).holds
    sq = Submeasure(P3, Distorted((F(1),) * 3, Distortion("sqrt"), V(1)))
    assert check_pgp_preservation(sq, (1, 2, 3)).holds
    assert check_pgp_preservation(zero_submeasure(P3), (1, 1, 1)).holds
    assert check_pgp_preservation(CATALOG["at_least_two"](P3), (1, 1, 1)).verdict == VACUOUS


def test_integral_requires_null_empty_set():
    bad = table_submeasure(P2, {a: V(1) for a in P2})
    with pytest.raises(DobrakovError):
        choquet_integral(bad, (1, 1), S(2, 0))
