"""Single-source edge-fault-tolerant approximate-distance oracles."""

from ssdo._core import (
    NO_EDGE,
    UNREACHABLE,
    Answer2,
    Answer2Case,
    AnswerEps,
    AnswerEpsCase,
    BuildError,
    ContainerError,
    ContractError,
    DistinguishabilityReport,
    Edge,
    EdgeRank,
    EpsBuildStats,
    Error,
    ExactTable,
    Fingerprint,
    GenerationError,
    Graph,
    LowerBoundInstance,
    Oracle2,
    OracleEps,
    ParseError,
    QueryError,
    SeparationFailure,
    SeparationReport,
    Spt,
    SsspResult,
    ValidationError,
    build_spt,
    check_distinguishability,
    check_separation,
    dumps_oracle,
    fingerprint_of,
    gen_lower_bound,
    load_oracle,
    loads_oracle,
    save_oracle,
    sssp,
    validate_fault_coverage,
)

__all__ = [
    "NO_EDGE",
    "UNREACHABLE",
    "Answer2",
    "Answer2Case",
    "AnswerEps",
    "AnswerEpsCase",
    "BuildError",
    "ContainerError",
    "ContractError",
    "DistinguishabilityReport",
    "Edge",
    "EdgeRank",
    "EpsBuildStats",
    "Error",
    "ExactTable",
    "Fingerprint",
    "GenerationError",
    "Graph",
    "LowerBoundInstance",
    "Oracle2",
    "OracleEps",
    "ParseError",
    "QueryError",
    "SeparationFailure",
    "SeparationReport",
    "Spt",
    "SsspResult",
    "ValidationError",
    "build_spt",
    "check_distinguishability",
    "check_separation",
    "dumps_oracle",
    "fingerprint_of",
    "gen_lower_bound",
    "load_oracle",
    "loads_oracle",
    "save_oracle",
    "sssp",
    "validate_fault_coverage",
]

__version__ = "0.1.0"
