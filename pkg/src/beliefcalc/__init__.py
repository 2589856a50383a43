"""Belief functions on finite outcome spaces: masses, conditioning, independence,
credal sets, lower expectations and betting coherence, with exact rational
arithmetic by default."""

from .betting import B2STAR, P2, BetFamily, Verdict, check_b2star, check_family, check_p2, find_violation
from .combination import dempster_combine, diagonal_conditioning, diagonal_equivalence_check
from .conditioning import (
    LiftedDistribution,
    TotalBeliefReport,
    condition_mass,
    conditional_belief,
    lift_to_powerset,
    total_belief_check,
)
from .credal import (
    CredalSet,
    compatible_conditional_lower,
    extreme_points,
    fh_conditional_lower,
    lower_probability,
    upper_probability,
)
from .errors import (
    BeliefError, FrameError, DuplicateLabel, EmptyLabel, FrameTooLarge, UnknownLabel,
    FrameMismatch, NumericModeMismatch, MassError, EmptySetMass, NegativeMass,
    MassNotNormalized, NonzeroEmptySet, NotABeliefFunction, ConditioningUndefined,
    NotAPartition, TotalConflict, TooManyExtremePoints, ConditionImpossible, ParseError,
    UnknownScenario,
)
from .expectation import (
    LLNReport,
    RandomVariable,
    exact_lln_belief,
    indicator,
    iid_power,
    lower_expectation,
    product_lln_belief,
    simulate_lln,
    xhat_distribution,
)
from .frame import MAX_FRAME_SIZE, Frame, SubsetMask, build_frame, encode_subset
from .io import Model, load_model, load_prices, save_model
from .mass import (
    BeliefCheck,
    MassFunction,
    ProbabilityDistribution,
    SetFunction,
    belief,
    belief_table,
    from_probability,
    is_belief_function,
    mobius_inverse,
    plausibility,
    plausibility_table,
    vacuous,
    validate_mass,
)
from .numeric import FLOAT, RATIONAL
from .products import (
    IndependenceReport,
    ProductFrame,
    check_independence,
    independent_product,
    is_rectangle,
    marginal,
    product_frame,
)
from .scenarios import run_scenario, scenario_names

__version__ = "0.1.0"

__all__ = [
    "B2STAR",
    "P2",
    "BetFamily",
    "Verdict",
    "check_b2star",
    "check_family",
    "check_p2",
    "find_violation",
    "dempster_combine",
    "diagonal_conditioning",
    "diagonal_equivalence_check",
    "LiftedDistribution",
    "TotalBeliefReport",
    "condition_mass",
    "conditional_belief",
    "lift_to_powerset",
    "total_belief_check",
    "CredalSet",
    "compatible_conditional_lower",
    "extreme_points",
    "fh_conditional_lower",
    "lower_probability",
    "upper_probability",
    "BeliefError",
    "FrameError",
    "DuplicateLabel",
    "EmptyLabel",
    "FrameTooLarge",
    "UnknownLabel",
    "FrameMismatch",
    "NumericModeMismatch",
    "MassError",
    "EmptySetMass",
    "NegativeMass",
    "MassNotNormalized",
    "NonzeroEmptySet",
    "NotABeliefFunction",
    "ConditioningUndefined",
    "NotAPartition",
    "TotalConflict",
    "TooManyExtremePoints",
    "ConditionImpossible",
    "ParseError",
    "UnknownScenario",
    "LLNReport",
    "RandomVariable",
    "exact_lln_belief",
    "indicator",
    "iid_power",
    "lower_expectation",
    "product_lln_belief",
    "simulate_lln",
    "xhat_distribution",
    "MAX_FRAME_SIZE",
    "Frame",
    "SubsetMask",
    "build_frame",
    "encode_subset",
    "Model",
    "load_model",
    "load_prices",
    "save_model",
    "BeliefCheck",
    "MassFunction",
    "ProbabilityDistribution",
    "SetFunction",
    "belief",
    "belief_table",
    "from_probability",
    "is_belief_function",
    "mobius_inverse",
    "plausibility",
    "plausibility_table",
    "vacuous",
    "validate_mass",
    "FLOAT",
    "RATIONAL",
    "IndependenceReport",
    "ProductFrame",
    "check_independence",
    "independent_product",
    "is_rectangle",
    "marginal",
    "product_frame",
    "run_scenario",
    "scenario_names",
]
