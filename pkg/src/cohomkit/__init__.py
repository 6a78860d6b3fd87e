"""Symmetric functions, Steenrod operations, cohomological periodicity, weight sets and projective point configurations."""
from .symmfunc import (ChernPoly, Partition, SymFunc, elementary_to_monomial, enumerate_matchings, monomial_to_elementary,
                       mult, mult_monomial, parse_partition, parse_symfunc)
from .steenrod import (ConsistencyError, PrimeContext, decompose_chern, descent_trace, steenrod_power, verify_sl_ideal,
                       verify_wu)
from .periodicity import induces_periodicity, model, periodicity_spectrum
from .weightsets import canonical_form, classify_all, equivalent, star_check
from .projcomb import (hansen_witness, s2comb_check, extended_sg_check, sylvester_gallai_witness, triangle_classify)

__version__ = "0.1.0"
