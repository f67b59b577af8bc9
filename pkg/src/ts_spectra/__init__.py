"""Exact eigenvalues of the transposition graph Cay(S_n, T_n) and certified witnesses."""

from .constructors import ConstructionResult, Recipe, RecipeId, recipe_catalog
from .partitions import (
    Composition,
    MultiplicitySpec,
    Partition,
    conjugate,
    enumerate_partitions,
    from_multiplicity_spec,
    partition_count,
    to_multiplicity_spec,
    validate,
)
from .spectrum import (
    SpectrumReport,
    TableauView,
    arm_leg_decomposition,
    brute_spectrum,
    cayley_adjacency_spectrum,
    content_sum,
    eigenvalue,
    hook_dimension,
    lift_identity_check,
    spectrum_with_multiplicity,
)
from .witness import (
    CoverageReport,
    WitnessCertificate,
    constructive_witness,
    coverage,
    fallback_search,
    lift,
    lift_plan,
    negate,
    theorem_c_inequalities,
    witness,
)

__version__ = "0.1.0"
