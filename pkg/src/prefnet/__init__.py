"""Preference models over weighted knowledge bases, fuzzy interpretations,
and multilayer perceptrons.

The package builds concept-wise preferential models from weighted
defeasible knowledge bases (crisp and fuzzy readings), model-checks
typicality and graded axioms against them, reads trained networks as
fuzzy interpretations whose induced preferences it can verify for
coherence, and assigns probabilities to fuzzy events.
"""

from .concepts import (
    And,
    Assertion,
    Bottom,
    BOTTOM,
    Concept,
    ConditionalConstraint,
    DefeasibleInclusion,
    Exists,
    Forall,
    FuzzyAssertion,
    FuzzyInclusion,
    Name,
    Nominal,
    Not,
    Or,
    ProbAssertion,
    RoleAssertion,
    Signature,
    StrictInclusion,
    Top,
    TOP,
    Typ,
    axiom_to_text,
    concept_names_in,
    concept_to_text,
    individual_names_in,
    is_el_concept,
    is_rolefree_concept,
    parse_concept,
    parse_query_axiom,
    role_names_in,
)
from .errors import (
    ActivationPreconditionError,
    EnumerationLimitError,
    EvaluationError,
    FragmentError,
    NonConvergenceError,
    ParseError,
    PrefnetError,
    UndefinedConditionalError,
    UndefinedSubsethoodError,
    UnknownNameError,
    UnsupportedAxiomError,
)
from .fuzzy import (
    EPS_CMP,
    FAMILIES,
    GOEDEL,
    LUKASIEWICZ,
    PRODUCT,
    ZADEH,
    FuzzyInterpretation,
    LogicFamily,
    check_axiom,
    compare,
    crisp_interpretation,
    eval_concept,
    eval_inclusion,
    get_family,
    interpretation_from_json,
    interpretation_to_json,
    load_interpretation,
)
from .kb import (
    Diagnostic,
    WeightedKB,
    classify_fragment,
    load_kb,
    parse_kb,
    save_kb,
    serialize_kb,
    validate_kb,
)
from .mlp import (
    ACTIVATIONS,
    Activation,
    ActivityTable,
    Network,
    StimulusSet,
    Unit,
    VerificationReport,
    build_cwm_interp,
    build_fuzzy_interp,
    extract_kb,
    forward,
    get_activation,
    load_network,
    load_stimuli,
    network_from_json,
    network_to_json,
    stimuli_from_json,
    stimuli_to_json,
    verify_strict_coherence,
    verify_weak_coherence,
)
from .preferences import (
    ENUMERATION_LIMIT,
    NEG_INF,
    CoherenceReport,
    ConceptPreference,
    GlobalPreference,
    MultiprefModel,
    Violation,
    build_preferences,
    canonical_crisp_interpretation,
    check_typicality_axiom,
    coherence_report,
    consistent_valuations,
    crisp_weight,
    entails_rolefree,
    fuzzy_weight,
    is_crisp_model,
    is_fuzzy_model,
    typicality_global,
    typicality_induced,
)
from .probability import (
    Distribution,
    FuzzyProbInterp,
    check_conditional,
    conditional_prob,
    fuzzy_cardinality,
    fuzzy_event_prob,
    load_distribution,
    network_prob_abox,
    nominal_conditional,
    relative_cardinality,
    subsethood,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVATIONS",
    "Activation",
    "ActivationPreconditionError",
    "ActivityTable",
    "And",
    "Assertion",
    "axiom_to_text",
    "Bottom",
    "BOTTOM",
    "build_cwm_interp",
    "build_fuzzy_interp",
    "build_preferences",
    "canonical_crisp_interpretation",
    "check_axiom",
    "check_conditional",
    "check_typicality_axiom",
    "classify_fragment",
    "CoherenceReport",
    "coherence_report",
    "compare",
    "Concept",
    "concept_names_in",
    "ConceptPreference",
    "concept_to_text",
    "ConditionalConstraint",
    "conditional_prob",
    "consistent_valuations",
    "crisp_interpretation",
    "crisp_weight",
    "DefeasibleInclusion",
    "Diagnostic",
    "Distribution",
    "entails_rolefree",
    "ENUMERATION_LIMIT",
    "EnumerationLimitError",
    "EPS_CMP",
    "eval_concept",
    "eval_inclusion",
    "EvaluationError",
    "Exists",
    "extract_kb",
    "FAMILIES",
    "Forall",
    "forward",
    "FragmentError",
    "fuzzy_cardinality",
    "fuzzy_event_prob",
    "fuzzy_weight",
    "FuzzyAssertion",
    "FuzzyInclusion",
    "FuzzyInterpretation",
    "FuzzyProbInterp",
    "get_activation",
    "get_family",
    "GlobalPreference",
    "GOEDEL",
    "individual_names_in",
    "interpretation_from_json",
    "interpretation_to_json",
    "is_crisp_model",
    "is_el_concept",
    "is_fuzzy_model",
    "is_rolefree_concept",
    "load_distribution",
    "load_interpretation",
    "load_kb",
    "load_network",
    "load_stimuli",
    "LogicFamily",
    "LUKASIEWICZ",
    "MultiprefModel",
    "Name",
    "NEG_INF",
    "Network",
    "network_from_json",
    "network_prob_abox",
    "network_to_json",
    "Nominal",
    "NonConvergenceError",
    "nominal_conditional",
    "Not",
    "Or",
    "ParseError",
    "parse_concept",
    "parse_kb",
    "parse_query_axiom",
    "PrefnetError",
    "ProbAssertion",
    "PRODUCT",
    "relative_cardinality",
    "role_names_in",
    "RoleAssertion",
    "save_kb",
    "serialize_kb",
    "Signature",
    "StimulusSet",
    "stimuli_from_json",
    "stimuli_to_json",
    "StrictInclusion",
    "subsethood",
    "Top",
    "TOP",
    "Typ",
    "typicality_global",
    "typicality_induced",
    "UndefinedConditionalError",
    "UndefinedSubsethoodError",
    "Unit",
    "UnknownNameError",
    "UnsupportedAxiomError",
    "validate_kb",
    "verify_strict_coherence",
    "verify_weak_coherence",
    "VerificationReport",
    "Violation",
    "WeightedKB",
    "ZADEH",
]
