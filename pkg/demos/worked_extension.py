"""Extend a submeasure from a small ring to every subset of T = {0, 1, 2}.

The ring is {∅, {0}, {1,2}, T} and μ counts only the point 0.  The outer
function μ* gives {1} and {2} the value 0, so every subset of T is within
distance 0 of the ring and the extension domain R_0 is the whole power set.
"""

from dobrakov.extension import extend
from dobrakov.lattice import LatticeValue
from dobrakov.setring import FiniteSet, generate_ring
from dobrakov.submeasure import Additive, Submeasure

T = 3
ring = generate_ring(T, [FiniteSet.of(T, [0]), FiniteSet.of(T, [1, 2])])
mu = Submeasure(ring, Additive((LatticeValue.vec(1), LatticeValue.vec(0), LatticeValue.vec(0))))

result = extend(mu)
print("ring R:", ", ".join(str(a) for a in ring))
print("R_0 has", len(result.r_zero.masks), "sets")
for a, (inner, outer) in result.witnesses.items():
    print(f"  {str(a):<8} mu* = {result.mu_star[a]}   inner {inner}, outer {outer}")
print()
for name, rep in result.reports.items():
    print(f"{name:<28} {rep.verdict}")
