"""Quantum-fluctuation propagation through a three-level lambda medium.

Solves the driven atomic working point, linearizes the coupled
atom-field dynamics, accumulates Langevin noise consistently with the
dissipation, and reports the joint-quadrature inseparability V12 and the
normalized probe absorption.
"""

from .metrics import (DuanVariances, EntanglementReport, PointResult, duan_v12,
                      evaluate_point, run_point)
from .fluctuations import FluctuationBasis, FluctuationSystem, build_system
from .noise import DiffusionMatrix, diffusion_matrix
from .params import (CONSTANTS, Couplings, PhysicalConstants, SystemParams,
                     derive_couplings, validate)
from .steady_state import SteadyState, absorption_coefficient, solve_steady_state
from .transfer import TransferResult, propagate, vacuum_input

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "Couplings",
    "DiffusionMatrix",
    "DuanVariances",
    "EntanglementReport",
    "FluctuationBasis",
    "FluctuationSystem",
    "PhysicalConstants",
    "PointResult",
    "SteadyState",
    "SystemParams",
    "TransferResult",
    "absorption_coefficient",
    "build_system",
    "derive_couplings",
    "diffusion_matrix",
    "duan_v12",
    "evaluate_point",
    "propagate",
    "run_point",
    "solve_steady_state",
    "vacuum_input",
    "validate",
    "__version__",
]
