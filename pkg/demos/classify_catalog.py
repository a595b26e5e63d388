"""Classify every catalog submeasure on the power set of {0, 1, 2}.

Each instance is placed in the strongest class whose defining conditions
hold, and the raw flags are audited against the implications
D_a => D_s => D_u => D.
"""

from dobrakov.catalog import CATALOG
from dobrakov.setring import Ring
from dobrakov.submeasure import check_sc_equivalence, classify

ring = Ring.power_set(3)
print(f"{'instance':<22} {'class':<6} audit  sc-equivalence")
for name, make in CATALOG.items():
    mu = make(ring)
    cls = classify(mu)
    audit = "ok" if not cls.hierarchy_violations() else "VIOLATION"
    print(f"{name:<22} {cls.label:<6} {audit:<6} {check_sc_equivalence(mu).verdict}")

parity = CATALOG["parity"](ring)
print()
w = classify(parity).reports["monotone"].witness
print(f"parity is not monotone: {w['A']} is inside {w['B']} but mu({w['A']}) = {w['mu(A)']} "
      f"and mu({w['B']}) = {w['mu(B)']}")
