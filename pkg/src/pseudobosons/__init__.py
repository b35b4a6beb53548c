"""Biorthogonal pairs and pseudo-bosonic ladder operators on truncated Fock spaces."""

from .biortho import (
    BiorthogonalPair,
    PseudoBosonSystem,
    build_system,
    construct_pair,
    find_vacuum,
    positive_form,
    recover_T,
)
from .errors import PseudoBosonError
from .fock import TruncatedFockSpace, make_lowering, make_raising
from .models import ModelKind, ModelRealization, ModelSpec, make_hamiltonians, make_model
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "BiorthogonalPair",
    "ModelKind",
    "ModelRealization",
    "ModelSpec",
    "PseudoBosonError",
    "PseudoBosonSystem",
    "TruncatedFockSpace",
    "VerificationReport",
    "build_system",
    "construct_pair",
    "find_vacuum",
    "make_hamiltonians",
    "make_lowering",
    "make_model",
    "make_raising",
    "positive_form",
    "recover_T",
]
