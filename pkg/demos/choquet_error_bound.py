"""Choquet integrals and how input errors propagate.

If two densities f and g differ by at most τ on A, the integrals against a
monotone μ differ in norm by at most τ·‖μ(A)‖.  The demo perturbs a density
and compares the observed gap with that bound.
"""

from fractions import Fraction

from dobrakov.catalog import CATALOG
from dobrakov.choquet import check_sup_lipschitz, choquet_integral
from dobrakov.lattice import norm
from dobrakov.setring import FiniteSet, Ring

ring = Ring.power_set(3)
mu = CATALOG["sqrt_counting"](ring)
a = ring.largest
f = (Fraction(3), Fraction(1), Fraction(2))
g = (Fraction(5, 2), Fraction(3, 2), Fraction(2))

print(f"norm(mu(A)) = {float(mu.norm_of(a)):.6f}")
print(f"integral of f: {float(norm(choquet_integral(mu, f, a))):.6f}")
print(f"integral of g: {float(norm(choquet_integral(mu, g, a))):.6f}")
rep = check_sup_lipschitz(mu, f, g, a)
print(f"gap {float(rep.details['lhs']):.6f} <= tau * norm(mu(A)) = {float(rep.details['rhs']):.6f}: {rep.verdict}")

additive = CATALOG["weighted"](ring)
point = FiniteSet.of(3, [0, 2])
print()
print("for an additive mu the integral is a weighted sum:", choquet_integral(additive, f, point))
