from .certificate import ReductionCertificate
from .flatten import flatten_costs, flatten_values, grid_ignition, perimeter
from .sat import (
    CnfInstance,
    GadgetReport,
    Max2SatInstance,
    SatCertificate,
    SatError,
    cnf_brute,
    count_satisfied,
    max2sat_brute,
    r3sat_to_max2sat,
    r3sat_to_max2sat_certified,
    three_clause_gadget,
    two_clause_gadget,
    unit_expansion,
    verify_gadget_claims,
)
from .structure import check_structure, is_bipartite
from .wfl import max2sat_to_wfl, partition_to_star, partition_to_star_certified, wfl_parameters

__all__ = [
    "CnfInstance", "GadgetReport", "Max2SatInstance", "ReductionCertificate",
    "SatCertificate", "SatError", "check_structure", "cnf_brute", "count_satisfied",
    "flatten_costs", "flatten_values", "grid_ignition", "is_bipartite", "max2sat_brute",
    "max2sat_to_wfl", "partition_to_star", "partition_to_star_certified", "perimeter",
    "r3sat_to_max2sat", "r3sat_to_max2sat_certified", "three_clause_gadget",
    "two_clause_gadget", "unit_expansion", "verify_gadget_claims", "wfl_parameters",
]
