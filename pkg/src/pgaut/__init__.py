"""Automorphism groups of a family of finite p-groups, with brute-force cross-checks."""
__version__ = "0.1.0"

from .errors import ContractError, HypothesisFailure, ParameterError, ResourceGuardError  # noqa: E402
from .modarith import GroupParams, Regime, derive_appendix_constants  # noqa: E402

__all__ = ["__version__", "GroupParams", "Regime", "derive_appendix_constants", "ParameterError",
           "ContractError", "ResourceGuardError", "HypothesisFailure"]
