"""Homophily and preferential recruitment from respondent-driven
sampling data: exact point computation on known subgraphs, and sharp
identification intervals from the observed data alone."""

from .annealing import (
    AnnealRun,
    CoolingSchedule,
    IdentificationResult,
    IdentifyConfig,
    Objective,
    Witness,
    anneal,
    exact_bounds,
    identify,
    propose_rewire,
    propose_trait_flip,
)
from .compatibility import (
    CompatibleSpace,
    EnumerationCaps,
    enumerate_compatible,
    is_compatible,
    random_compatible,
)
from .errors import (
    CapExceededError,
    DegenerateCorrelationError,
    InconsistentInputError,
    MissingTraitError,
    RdsBoundsError,
    StudyParseError,
    StudyValidationError,
    UndefinedEstimandError,
)
from .estimator import IdentificationBounds
from .graphs import (
    NEVER,
    OTHER,
    AugmentedSubgraph,
    PopulationGraph,
    RecruitmentGraph,
    StudyData,
    Violation,
    extract_augmented_subgraph,
    susceptible_set,
    traits_match,
    undirected,
    validate_recruitment_graph,
)
from .measures import (
    HomophilyValue,
    PrefRecruitValue,
    RecruitTerm,
    homophily,
    pref_recruitment,
    same_count,
)
from .simulate import (
    PopulationConfig,
    RdsProcessConfig,
    RdsSample,
    generate_population,
    run_rds,
)
from .validation import check_compatible, check_study_data, drop_missing_traits

__version__ = "0.1.0"

__all__ = [
    "AnnealRun",
    "AugmentedSubgraph",
    "CapExceededError",
    "CompatibleSpace",
    "CoolingSchedule",
    "DegenerateCorrelationError",
    "EnumerationCaps",
    "HomophilyValue",
    "IdentificationBounds",
    "IdentificationResult",
    "IdentifyConfig",
    "InconsistentInputError",
    "MissingTraitError",
    "NEVER",
    "OTHER",
    "Objective",
    "PopulationConfig",
    "PopulationGraph",
    "PrefRecruitValue",
    "RdsBoundsError",
    "RdsProcessConfig",
    "RdsSample",
    "RecruitTerm",
    "RecruitmentGraph",
    "StudyData",
    "StudyParseError",
    "StudyValidationError",
    "UndefinedEstimandError",
    "Violation",
    "Witness",
    "anneal",
    "check_compatible",
    "check_study_data",
    "drop_missing_traits",
    "enumerate_compatible",
    "exact_bounds",
    "extract_augmented_subgraph",
    "generate_population",
    "homophily",
    "identify",
    "is_compatible",
    "pref_recruitment",
    "propose_rewire",
    "propose_trait_flip",
    "random_compatible",
    "run_rds",
    "same_count",
    "susceptible_set",
    "traits_match",
    "undirected",
    "validate_recruitment_graph",
]
