from src.lawcheck.faults import FaultyInstance
from src.lawcheck.laws import (
    LawFailure,
    LawReport,
    check_all,
    check_category,
    check_coherence,
    check_interchange,
    check_naturality,
    describe,
    run_law,
)
from src.lawcheck.sampling import SampleSpec, Sampler, sample, validate_spec

__all__ = [
    "FaultyInstance",
    "LawFailure",
    "LawReport",
    "SampleSpec",
    "Sampler",
    "check_all",
    "check_category",
    "check_coherence",
    "check_interchange",
    "check_naturality",
    "describe",
    "run_law",
    "sample",
    "validate_spec",
]
