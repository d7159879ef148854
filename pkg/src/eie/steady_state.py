"""Mean-field working point of the driven three-level lambda system.

The nine collective operator means <sigma_ij> (sigma_ij = |i><j|, so
<sigma_ij> = conj(<sigma_ji>)) obey linear equations at fixed mean fields.
After eliminating sigma_33 = 1 - sigma_11 - sigma_22 the remaining eight
components form a square complex system  M x + b = 0  that is solved
directly.  The same (M, b) assembly doubles as the drift of the linearized
fluctuation dynamics, so it lives here and is reused downstream.

Component ordering (used for every 8-vector and 8x8 matrix in the package):

    [s11, s22, s12, s21, s13, s31, s23, s32]
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SteadyStateError
from .params import Couplings, SystemParams

# Indices into the 8-component atomic ordering.
A11, A22, A12, A21, A13, A31, A23, A32 = range(8)

#: operator labels of the 8-component basis, 1-based level pairs
ATOM_PAIRS = ((1, 1), (2, 2), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))

_COND_LIMIT = 1e12
_RESIDUAL_LIMIT = 1e-10


def drift_matrix(params: SystemParams, couplings: Couplings):
    """Assemble the mean-field drift (M, b) with d/dt x = M x + b.

    M holds every coefficient of the operator means in the equations of
    motion with the field operators replaced by their coherent amplitudes
    (Rabi frequencies Omega_i = g_i alpha_i); b collects the constants
    produced by the sigma_33 elimination.  M is also the drift matrix of
    the fluctuation dynamics around the working point.
    """
    om1 = couplings.g1 * complex(params.alpha1)
    om2 = couplings.g2 * complex(params.alpha2)
    g1, g2 = params.gamma1, params.gamma2
    big_gamma12 = params.gamma12 - 1j * (params.delta1 - params.delta2)
    big_gamma13 = params.gamma13 - 1j * params.delta1
    big_gamma23 = params.gamma23 - 1j * params.delta2

    m = np.zeros((8, 8), dtype=complex)
    # populations
    m[A11, A11] = -g1
    m[A11, A22] = -g1
    m[A11, A13] = 1j * np.conj(om1)
    m[A11, A31] = -1j * om1
    m[A22, A11] = -g2
    m[A22, A22] = -g2
    m[A22, A23] = 1j * np.conj(om2)
    m[A22, A32] = -1j * om2
    # lower-doublet coherence
    m[A12, A12] = -big_gamma12
    m[A12, A13] = 1j * np.conj(om2)
    m[A12, A32] = -1j * om1
    m[A21, A21] = -np.conj(big_gamma12)
    m[A21, A23] = 1j * np.conj(om1)
    m[A21, A31] = -1j * om2
    # optical coherences (population differences carry the s33 elimination)
    m[A13, A11] = 2j * om1
    m[A13, A22] = 1j * om1
    m[A13, A12] = 1j * om2
    m[A13, A13] = -big_gamma13
    m[A31, A11] = -2j * np.conj(om1)
    m[A31, A22] = -1j * np.conj(om1)
    m[A31, A21] = -1j * np.conj(om2)
    m[A31, A31] = -np.conj(big_gamma13)
    m[A23, A11] = 1j * om2
    m[A23, A22] = 2j * om2
    m[A23, A21] = 1j * om1
    m[A23, A23] = -big_gamma23
    m[A32, A11] = -1j * np.conj(om2)
    m[A32, A22] = -2j * np.conj(om2)
    m[A32, A12] = -1j * np.conj(om1)
    m[A32, A32] = -np.conj(big_gamma23)

    b = np.zeros(8, dtype=complex)
    b[A11] = g1
    b[A22] = g2
    b[A13] = -1j * om1
    b[A31] = 1j * np.conj(om1)
    b[A23] = -1j * om2
    b[A32] = 1j * np.conj(om2)
    return m, b


@dataclass(frozen=True)
class SteadyState:
    """Mean operator values at the working point.

    ``sigma[i-1, j-1]`` is <sigma_ij> for levels i, j in {1, 2, 3}.  The
    matrix is hermitian with unit trace and nonnegative populations.
    """

    sigma: np.ndarray

    def __post_init__(self):
        s = self.sigma
        if s.shape != (3, 3):
            raise ValueError("sigma must be 3x3")
        if np.max(np.abs(s - s.conj().T)) > 1e-9:
            raise SteadyStateError("steady state violates hermiticity")
        if abs(np.trace(s) - 1.0) > 1e-12:
            raise SteadyStateError("steady state trace deviates from 1")
        if np.min(np.linalg.eigvalsh(s)) < -1e-10:
            raise SteadyStateError("steady state is not positive semidefinite")

    def __getitem__(self, ij) -> complex:
        i, j = ij
        return complex(self.sigma[i - 1, j - 1])

    @property
    def populations(self) -> np.ndarray:
        return self.sigma.real.diagonal().copy()

    def as_vector(self) -> np.ndarray:
        """The 8-component [s11, s22, s12, s21, s13, s31, s23, s32]."""
        s = self.sigma
        return np.array([s[0, 0], s[1, 1], s[0, 1], s[1, 0],
                         s[0, 2], s[2, 0], s[1, 2], s[2, 1]], dtype=complex)

    def to_dict(self) -> dict:
        out = {}
        for i in range(1, 4):
            for j in range(1, 4):
                z = self[i, j]
                out[f"sigma{i}{j}"] = [z.real, z.imag]
        return out


def _from_vector(x: np.ndarray) -> SteadyState:
    s = np.empty((3, 3), dtype=complex)
    s[0, 0], s[1, 1] = x[A11], x[A22]
    s[2, 2] = 1.0 - x[A11] - x[A22]
    s[0, 1], s[1, 0] = x[A12], x[A21]
    s[0, 2], s[2, 0] = x[A13], x[A31]
    s[1, 2], s[2, 1] = x[A23], x[A32]
    s = 0.5 * (s + s.conj().T)  # scrub solver roundoff
    return SteadyState(sigma=s)


def _dark_state(om1: complex, om2: complex) -> SteadyState:
    """Closed-form lower-doublet superposition decoupled from both fields."""
    norm = abs(om1) ** 2 + abs(om2) ** 2
    if norm == 0.0:
        raise SteadyStateError(
            "degenerate regime: gamma12 = 0 with both fields off has no unique steady state")
    s = np.zeros((3, 3), dtype=complex)
    s[0, 0] = abs(om2) ** 2 / norm
    s[1, 1] = abs(om1) ** 2 / norm
    s[0, 1] = -om1 * np.conj(om2) / norm
    s[1, 0] = np.conj(s[0, 1])
    return SteadyState(sigma=s)


def solve_steady_state(params: SystemParams, couplings: Couplings) -> SteadyState:
    """Solve the mean-field equations with time derivatives and noise set to zero.

    Special cases:

    * gamma12 = 0 at two-photon resonance leaves a decoupled dark state and
      a singular linear system; the closed form is returned instead.
    * a level whose decay and drive both vanish is pinned empty (its
      population is conserved, making the linear system singular); this
      realises the bare two-level limit used for absorption normalization.
    """
    om1 = couplings.g1 * complex(params.alpha1)
    om2 = couplings.g2 * complex(params.alpha2)

    if params.gamma12 == 0.0 and params.delta1 == params.delta2:
        return _dark_state(om1, om2)

    m, b = drift_matrix(params, couplings)

    pinned = []
    if om2 == 0 and params.gamma2 == 0.0:
        pinned = [A22, A12, A21, A23, A32]
    elif om1 == 0 and params.gamma1 == 0.0:
        pinned = [A11, A12, A21, A13, A31]
    if pinned:
        m = m.copy()
        b = b.copy()
        for k in pinned:
            m[k, :] = 0.0
            m[k, k] = 1.0
            b[k] = 0.0

    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SteadyStateError(
            f"degenerate regime: steady-state system condition number {cond:.3g} exceeds "
            f"{_COND_LIMIT:.0e} (dark-state null direction, e.g. gamma12 -> 0 or undriven level)")
    x = np.linalg.solve(m, -b)

    m_full, b_full = drift_matrix(params, couplings)
    residual = np.max(np.abs(m_full @ x + b_full)) if not pinned else np.max(np.abs(m @ x + b))
    if residual > _RESIDUAL_LIMIT:
        raise SteadyStateError(f"steady-state residual {residual:.3g} exceeds {_RESIDUAL_LIMIT:g}")
    return _from_vector(x)


def steady_residual(state: SteadyState, params: SystemParams, couplings: Couplings) -> float:
    """Max-norm of the drift right-hand sides evaluated at the state."""
    m, b = drift_matrix(params, couplings)
    return float(np.max(np.abs(m @ state.as_vector() + b)))


def absorption_coefficient(state: SteadyState, params: SystemParams,
                           couplings: Couplings) -> float:
    """Normalized probe absorption at the working point.

    Proportional to the absorptive part of the probe coherence per unit
    drive, Im(conj(Omega1) <sigma_13>) gamma13 / |Omega1|^2, normalized so
    a resonantly driven bare two-level transition in the weak-probe limit
    absorbs with coefficient 1 and a perfectly transparent medium gives 0.
    """
    om1 = couplings.g1 * complex(params.alpha1)
    if om1 == 0:
        raise SteadyStateError("absorption undefined: probe amplitude alpha1 is zero")
    s13 = state[1, 3]
    return float(params.gamma13 * (np.conj(om1) * s13).imag / abs(om1) ** 2)
