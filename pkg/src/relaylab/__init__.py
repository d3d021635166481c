"""relaylab: achievable rates, cut-set bounds and minimum energy-per-bit
for Gaussian N-relay parallel (diamond) networks, with low-SNR asymptotic
curve generation and CSV emission for figure reproduction."""

from .errors import (
    ConvergenceError,
    DomainError,
    InfeasibleError,
    OptimizerError,
    RelaylabError,
)
from .network import NetworkConfig, NormalizedNetwork, normalize

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "InfeasibleError",
    "OptimizerError",
    "RelaylabError",
    "NetworkConfig",
    "NormalizedNetwork",
    "normalize",
    "__version__",
]
