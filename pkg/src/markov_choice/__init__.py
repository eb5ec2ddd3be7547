"""Markov exploration models of stochastic choice.

A decision maker looks over a menu by moving between alternatives
according to a transition matrix and stops at a random time; the
alternative under consideration when the search stops is chosen. This
package generates the resulting choice probabilities, tests whether
observed choice data can come from such a process (and from which
structural class of processes), constructs rationalizing chains and
simulates interventions on the choice environment.
"""

from .core import (
    AssumptionReport,
    ChoiceDataset,
    Menu,
    MissingMenuError,
    ModelBlock,
    MscModel,
    StructuralError,
    Tolerances,
    Universe,
    ValidationReport,
    binary_share,
    validate_dataset,
    validate_model,
)
from .markov import (
    SccDecomposition,
    absorption_weights,
    generate_finite,
    generate_limiting,
    generate_series,
    scc_decompose,
    stationary_distribution,
)
from .axioms import (
    AxiomViolation,
    LuceFit,
    check_detailed_balance,
    check_iia,
    check_kolmogorov,
    check_positivity,
    check_reversible,
    fit_luce,
)
from .cycles import (
    ClassificationReport,
    CycleWitness,
    DeltaGraph,
    bounded_in_cycle,
    build_delta_graph,
    classify,
    delta,
    enumerate_sign_consistent_cycles,
    theorem1_condition,
    theorem2_condition,
    theorem3_condition,
)
from .rationalize import (
    DesignSystem,
    FeasibilityResult,
    NotRationalizable,
    build_design_system,
    construct_irreducible,
    construct_model,
    construct_trivial,
    forced_zero_pairs,
    rationalize,
    solve_feasibility,
    verify_rationalizes,
)
from .manipulate import (
    DecoyReport,
    InvalidRestriction,
    Restriction,
    apply_restriction,
    decoy_analysis,
    nudge_initial_finite,
    robustness_to_initial,
    robustness_to_restrictions,
)
from .io import load_dataset, load_model, save_dataset, save_model

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "AxiomViolation",
    "ChoiceDataset",
    "ClassificationReport",
    "CycleWitness",
    "DecoyReport",
    "DeltaGraph",
    "DesignSystem",
    "FeasibilityResult",
    "InvalidRestriction",
    "LuceFit",
    "Menu",
    "MissingMenuError",
    "ModelBlock",
    "MscModel",
    "NotRationalizable",
    "Restriction",
    "SccDecomposition",
    "StructuralError",
    "Tolerances",
    "Universe",
    "ValidationReport",
    "absorption_weights",
    "apply_restriction",
    "binary_share",
    "bounded_in_cycle",
    "build_delta_graph",
    "build_design_system",
    "check_detailed_balance",
    "check_iia",
    "check_kolmogorov",
    "check_positivity",
    "check_reversible",
    "classify",
    "construct_irreducible",
    "construct_model",
    "construct_trivial",
    "decoy_analysis",
    "delta",
    "enumerate_sign_consistent_cycles",
    "fit_luce",
    "forced_zero_pairs",
    "generate_finite",
    "generate_limiting",
    "generate_series",
    "nudge_initial_finite",
    "rationalize",
    "robustness_to_initial",
    "robustness_to_restrictions",
    "scc_decompose",
    "solve_feasibility",
    "stationary_distribution",
    "theorem1_condition",
    "theorem2_condition",
    "theorem3_condition",
    "validate_dataset",
    "validate_model",
    "verify_rationalizes",
]
