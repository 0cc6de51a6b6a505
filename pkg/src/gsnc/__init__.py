"""Exact cohomological invariants of generalized simple normal crossing pairs.

A pair (X, B) is described combinatorially by its strata poset together with
the Hodge-theoretic data of each closed stratum.  From that the package
computes the cohomology of X by Mayer-Vietoris descent, the mixed Hodge
numbers of X - B from the weight spectral sequence, E-polynomials as an
independent check, and covering plans for Q-divisors.
"""

from .divisors import QDivisor, covering_plan, is_permissible, round_up
from .epoly import (EPolynomial, e_polynomial_compact, e_polynomial_from_mhs,
                    e_polynomial_strata)
from .hodge import HodgeData, StratumCohomology, validate_hodge
from .model import GsncModel, level, mv_sign, strata_of_codim, validate_model
from .mv import build_mv_complex, cohomology_of_X, structure_sheaf_cohomology
from .pair import GsncPair, InvalidModel, validate_pair
from .schema import SchemaError, dump_pair, load_pair
from .weight import assemble_d1, assemble_E1, hodge_filtration_dims, mixed_hodge_numbers

__version__ = "0.1.0"

__all__ = [
    "EPolynomial", "GsncModel", "GsncPair", "HodgeData", "InvalidModel", "QDivisor",
    "SchemaError", "StratumCohomology", "assemble_E1", "assemble_d1", "build_mv_complex",
    "cohomology_of_X", "covering_plan", "dump_pair", "e_polynomial_compact",
    "e_polynomial_from_mhs", "e_polynomial_strata", "hodge_filtration_dims",
    "is_permissible", "level", "load_pair", "mixed_hodge_numbers", "mv_sign",
    "round_up", "strata_of_codim", "structure_sheaf_cohomology", "validate_hodge",
    "validate_model", "validate_pair",
]
