"""Exact and finite-precision computations with p-adic modular forms."""

from .errors import (
    DomainError,
    InsufficientOrder,
    NonOrdinaryError,
    NotCompatible,
    PoleError,
    PrecisionExhausted,
)
from .padic import INF, PadicNumber, WeightCharacter, teichmuller, valuation
from .qseries import QQ, QExpansion, Qp, from_text, hecke_T, op_U, op_V, to_text
from .zeta import bernoulli, kl_zeta, padic_eisenstein, zeta_neg

__all__ = [
    "DomainError", "InsufficientOrder", "NonOrdinaryError", "NotCompatible", "PoleError",
    "PrecisionExhausted", "INF", "PadicNumber", "WeightCharacter", "teichmuller", "valuation",
    "QQ", "QExpansion", "Qp", "from_text", "hecke_T", "op_U", "op_V", "to_text",
    "bernoulli", "kl_zeta", "padic_eisenstein", "zeta_neg",
]

__version__ = "0.1.0"
