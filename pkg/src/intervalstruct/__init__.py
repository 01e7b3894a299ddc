"""Interval structures over finite universes: rough sets, belief functions,
incidence bounds, and synthesis of expert decision rules."""

from .belief import (
    BasicProbabilityAssignment,
    BeliefTable,
    ProbabilityOnW,
    SetFunction,
    bel_from_bpa,
    bel_from_interval,
    bpa_from_bel,
    canonical_model,
    pl_from_bel,
)
from .compatibility import (
    CompatibilityRelation,
    big_gamma,
    bsa_from_gamma,
    gamma,
    interval_from_compatibility,
    lower_inverse,
    upper_inverse,
)
from .errors import (
    AxiomViolation,
    CapExceeded,
    DualityViolation,
    Inconsistent,
    IntervalStructError,
    InvalidAssignment,
    NonSerialRelation,
    NotBeliefFunction,
    UniverseMismatch,
)
from .finite_sets import Subset, Universe, make_universe, powerset
from .interval_core import (
    AxiomReport,
    BasicSetAssignment,
    IntervalStructure,
    Rule,
    SetValuedMap,
    bounds_from_bsa,
    bsa_from_interval,
    check_lower_axioms,
    check_properties,
    check_upper_axioms,
    dualize,
    make_interval_structure,
)
from .rough_sets import (
    ApproximationSpace,
    Partition,
    decision_rules,
    lower_approx,
    make_space,
    partition_from_blocks,
    partition_from_pairs,
    reductions,
    upper_approx,
)
from .synthesis import (
    Assignment,
    IncidenceBounds,
    RuleSet,
    check_bounded,
    check_incidence_structure,
    check_inside,
    closure_oracle,
    max_min_bounds,
    normalize,
    rules_from_assignment,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "Subset",
    "Universe",
    "make_universe",
    "powerset",
    "ApproximationSpace",
    "Assignment",
    "AxiomReport",
    "AxiomViolation",
    "BasicProbabilityAssignment",
    "BasicSetAssignment",
    "BeliefTable",
    "CapExceeded",
    "CompatibilityRelation",
    "DualityViolation",
    "IncidenceBounds",
    "Inconsistent",
    "IntervalStructError",
    "IntervalStructure",
    "InvalidAssignment",
    "NonSerialRelation",
    "NotBeliefFunction",
    "Partition",
    "ProbabilityOnW",
    "Rule",
    "RuleSet",
    "SetFunction",
    "SetValuedMap",
    "UniverseMismatch",
    "bel_from_bpa",
    "bel_from_interval",
    "big_gamma",
    "bounds_from_bsa",
    "bpa_from_bel",
    "bsa_from_gamma",
    "bsa_from_interval",
    "canonical_model",
    "check_bounded",
    "check_incidence_structure",
    "check_inside",
    "check_lower_axioms",
    "check_properties",
    "check_upper_axioms",
    "closure_oracle",
    "decision_rules",
    "dualize",
    "gamma",
    "interval_from_compatibility",
    "lower_approx",
    "lower_inverse",
    "make_interval_structure",
    "make_space",
    "max_min_bounds",
    "normalize",
    "partition_from_blocks",
    "partition_from_pairs",
    "pl_from_bel",
    "reductions",
    "rules_from_assignment",
    "synthesize",
    "upper_approx",
    "upper_inverse",
]
