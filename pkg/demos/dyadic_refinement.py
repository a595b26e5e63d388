"""Approximate a set in [0, 1) by finite unions of dyadic intervals.

With μ(A) = sqrt(length(A)) the value on [0, 1/3) is reached as the limit of
μ on inner dyadic approximations.  The same rule is continuous along the
shrinking prefixes [0, 2^-n).
"""

from fractions import Fraction

from dobrakov.dyadic import (
    IntervalRule,
    TargetSet,
    check_continuity_sequence,
    check_eq2_convergence,
    inner_refine,
    shrinking_prefix,
)

rule = IntervalRule.of("sqrt")
target = TargetSet.interval(0, Fraction(1, 3))
for k in (2, 4, 8, 16):
    inner = inner_refine(target, k)
    print(f"depth {k:>2}: {str(inner):<20} mu = {rule.norm(inner):.9f}")

rep = check_eq2_convergence(rule, target, 1e-6, 25)
print(f"converged at depth {rep.details['depth']} to {rep.details['value']:.9f} (limit {rep.details['limit']:.9f})")

cont = check_continuity_sequence(rule, shrinking_prefix(), 60, 1e-4)
print(f"norm of mu([0, 2^-n)) drops below 1e-4 at n = {cont.details['n']}")

print()
print("Cantor stage 1 at depth 4:", inner_refine(TargetSet.cantor(1), 4))
