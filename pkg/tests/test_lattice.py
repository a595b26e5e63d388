import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dobrakov.distortion import Distortion
from dobrakov.errors import DobrakovError, NotDirectedError
from dobrakov.lattice import (
    TOP,
    LatticeValue,
    check_directed_norm_limit,
    difference_norm,
    format_value,
    is_order_bounded,
    lattice_inf,
    lattice_sup,
    norm,
    parse_value,
)

V = LatticeValue.vec
fractions = st.fractions(min_value=0, max_value=10, max_denominator=12)
vectors = st.lists(fractions, min_size=2, max_size=2).map(lambda c: LatticeValue(tuple(c)))


def test_norm_examples():
    assert norm(V(1, 2)) == 3
    assert norm(V(0, 0)) == 0
    assert norm(TOP) == math.inf


def test_sup_inf_examples():
    assert lattice_sup([V(1, 0), V(0, 1)]) == V(1, 1)
    assert lattice_inf([V(2, 2), V(1, 2), V(1, 1)]) == V(1, 1)
    assert lattice_sup([V(1, 0), TOP]).is_top
    assert lattice_inf([V(1, 0), TOP]) == V(1, 0)
    with pytest.raises(DobrakovError):
        lattice_sup([])


def test_directed_limit_examples():
    r = check_directed_norm_limit([V(2, 2), V(1, 2), V(1, 1)], "down")
    assert r.holds and r.extremum_norm == 2
    r = check_directed_norm_limit([V(0, 0), V(1, 0), V(1, 1)], "up")
    assert r.holds and r.extremum_norm == 2
    with pytest.raises(NotDirectedError, match="not directed"):
        check_directed_norm_limit([V(1, 0), V(0, 1)], "down")


def test_order_bounded_examples():
    ok, iv = is_order_bounded([V(1, 2), V(3, 0)])
    assert ok and iv.lo == V(1, 0) and iv.hi == V(3, 2)
    assert is_order_bounded([TOP]) == (False, None)
    ok, iv = is_order_bounded([], dim=2)
    assert ok and iv.lo == iv.hi == V(0, 0)


def test_top_arithmetic():
    assert (V(1) + TOP).is_top
    assert TOP.scale(2).is_top
    with pytest.raises(DobrakovError):
        TOP.scale(0)
    assert V(1) <= TOP and not TOP <= V(5)


@given(vectors, vectors)
def test_norm_is_additive_on_the_cone(x, y):
    assert norm(x + y) == norm(x) + norm(y)


@given(vectors, vectors)
def test_norm_is_monotone(x, y):
    z = x + y
    assert x <= z and norm(x) <= norm(z)


@given(st.lists(vectors, min_size=1, max_size=5))
def test_sup_and_inf_bound_members(vs):
    hi, lo = lattice_sup(vs), lattice_inf(vs)
    assert all(lo <= v <= hi for v in vs)


@given(vectors, vectors)
def test_difference_norm_is_symmetric(x, y):
    assert difference_norm(x, y) == difference_norm(y, x)
    assert difference_norm(x, x) == 0


@given(vectors)
def test_value_text_round_trip(x):
    assert parse_value(format_value(x)) == x


def test_value_parsing_errors():
    assert parse_value("top").is_top
    with pytest.raises(DobrakovError):
        parse_value("(1, x)")
    with pytest.raises(DobrakovError):
        parse_value("1, 2")


# -- distortions ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["identity", "sqrt", "x_over_1px", "cap2x", "power(1/3)", "zero"])
def test_distortions_vanish_at_zero_and_are_monotone(name):
    g = Distortion.parse(name)
    assert g(Fraction(0)) == 0
    xs = [Fraction(k, 7) for k in range(30)]
    ys = [g(x) for x in xs]
    assert all(a <= b + Fraction(1, 10**30) for a, b in zip(ys, ys[1:]))


def test_distortion_values():
    assert Distortion.parse("sqrt")(Fraction(4, 9)) == Fraction(2, 3)
    assert abs(float(Distortion.parse("sqrt")(Fraction(2))) - math.sqrt(2)) < 1e-15
    assert Distortion.parse("cap2x")(Fraction(3, 4)) == 1
    assert Distortion.parse("x_over_1px")(Fraction(1)) == Fraction(1, 2)
    assert Distortion.parse("power(1/3)")(Fraction(8)) == 2
    assert str(Distortion.parse("power(1/3)")) == "power(1/3)"
    with pytest.raises(DobrakovError):
        Distortion.parse("power(2)")
    with pytest.raises(DobrakovError):
        Distortion.parse("cube")
