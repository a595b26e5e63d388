"""Vector submeasures on finite rings of sets.

Classification into the D / D_u / D_s / D_a hierarchy with witnesses,
the p.g.p. and its δ-sequence, Choquet integrals, the neighbourhood base
of the induced topology, the inner/outer extension pipeline, and a dyadic
interval model for the limit statements.
"""

from dobrakov.catalog import CATALOG
from dobrakov.choquet import choquet_integral, derived_submeasure
from dobrakov.distortion import Distortion
from dobrakov.dyadic import DyadicSet, IntervalRule, TargetSet, inner_refine, outer_refine
from dobrakov.errors import DobrakovError, SetOutsideRing, SpecError
from dobrakov.extension import extend, mu_star, r_zero
from dobrakov.lattice import TOP, LatticeValue, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport
from dobrakov.setring import FiniteSet, Ring, enumerate_subrings, generate_ring
from dobrakov.specfile import load_spec, parse_spec, serialize_spec
from dobrakov.submeasure import Additive, Distorted, Submeasure, Table, classify, table_submeasure

__all__ = [
    "CATALOG", "choquet_integral", "derived_submeasure", "Distortion", "DyadicSet", "IntervalRule",
    "TargetSet", "inner_refine", "outer_refine", "DobrakovError", "SetOutsideRing", "SpecError",
    "extend", "mu_star", "r_zero", "TOP", "LatticeValue", "norm", "FAILS", "HOLDS", "VACUOUS",
    "PropertyReport", "FiniteSet", "Ring", "enumerate_subrings", "generate_ring", "load_spec",
    "parse_spec", "serialize_spec", "Additive", "Distorted", "Submeasure", "Table", "classify",
    "table_submeasure",
]
