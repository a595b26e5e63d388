"""The neighbourhood base U_ε = {A : ‖μ(A)‖ ≤ ε} of a uniform submeasure.

For each ε on a dyadic grid the report gives a δ such that U_δ combined
with itself under Δ, ∩ and ∪ stays inside U_ε, which is what makes the
classes a base of an FN-topology.
"""

from fractions import Fraction

from dobrakov.catalog import CATALOG
from dobrakov.fntopology import check_filterbase_axioms, u_epsilon
from dobrakov.lattice import LatticeValue
from dobrakov.setring import Ring
from dobrakov.submeasure import Additive, Submeasure

ring = Ring.power_set(3)
weights = (Fraction(1, 32), Fraction(1, 8), Fraction(1, 2))
mu = Submeasure(ring, Additive(tuple(LatticeValue.vec(w) for w in weights)))
rep = check_filterbase_axioms(mu)
print("verdict:", rep.verdict)
for eps, delta in rep.moduli.items():
    members = ", ".join(str(a) for a in u_epsilon(mu, eps))
    print(f"  eps = {str(eps):<5} delta = {str(delta):<6} U_eps = {members}")

print()
print("at_least_two is not uniform, so the check is gated:", check_filterbase_axioms(CATALOG["at_least_two"](ring)).verdict)
