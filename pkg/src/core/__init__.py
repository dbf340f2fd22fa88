from src.core.category import (
    compose,
    identity,
    iso_check,
    mproduct_mor,
    mproduct_obj,
    state_embed,
    state_extract,
    structural_iso,
)
from src.core.instance import EmptyHomSet, MonoidalInstance, StructuralIso
from src.core.morphisms import Morphism
from src.core.objects import Label, ObjectHandle
from src.core.outcome import DecompositionOutcome, Witness, decide, seq_verify

__all__ = [
    "DecompositionOutcome",
    "EmptyHomSet",
    "Label",
    "Morphism",
    "MonoidalInstance",
    "ObjectHandle",
    "StructuralIso",
    "Witness",
    "compose",
    "decide",
    "seq_verify",
    "identity",
    "iso_check",
    "mproduct_mor",
    "mproduct_obj",
    "state_embed",
    "state_extract",
    "structural_iso",
]
