"""Count-formula cases, the numeric verdict, Hadamard checks and sweeps."""
from .cases import (
    CaseReport,
    HypothesisError,
    PredictionKind,
    Theorem,
    TheoremCase,
    Verdict,
    build_spec,
    predicted_count,
    run_case,
    validate,
)
from .hadamard import HadamardCheck, hadamard_partial_check
from .sweep import exit_code, load_config, parse_config, sweep, write_reports

__all__ = [
    "CaseReport", "HadamardCheck", "HypothesisError", "PredictionKind", "Theorem",
    "TheoremCase", "Verdict", "build_spec", "exit_code", "hadamard_partial_check",
    "load_config", "parse_config", "predicted_count", "run_case", "sweep", "validate",
    "write_reports",
]
