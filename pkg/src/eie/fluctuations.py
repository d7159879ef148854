"""Linearized frequency-domain dynamics of atomic and field fluctuations.

Every operator is split into mean plus fluctuation; around the working
point the atomic fluctuations obey

    d/dt dsigma = M dsigma + B da + F

over the 8-component atomic ordering of :mod:`eie.steady_state`, with the
field fluctuations ordered [da1, da1+, da2, da2+] and F the Langevin
noises.  Fourier convention x(t) = Int x(w) exp(-iwt) dw/2pi, so d/dt maps
to -iw and the conjugate components da+(w) denote the transform of the
conjugate operator ([da(-w)]+), which closes all matrices at a single
analysis frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResponseError
from .params import CONSTANTS, Couplings, PhysicalConstants, SystemParams
from .steady_state import (A11, A12, A13, A21, A22, A23, A31, A32, ATOM_PAIRS,
                           SteadyState, drift_matrix)

# Field-component indices: probe, probe-conjugate, pump, pump-conjugate.
F1, F1D, F2, F2D = range(4)
FIELD_LABELS = ("a1", "a1_dag", "a2", "a2_dag")


def _permutation(mapping) -> np.ndarray:
    j = np.zeros((len(mapping), len(mapping)))
    for a, b in enumerate(mapping):
        j[a, b] = 1.0
    return j


class FluctuationBasis:
    """Orderings and conjugation-pair permutations of the fluctuation bases."""

    atomic_pairs = ATOM_PAIRS
    field_labels = FIELD_LABELS
    #: atomic pair swap (populations self-paired, coherences swapped)
    J_ATOMIC = _permutation([A11, A22, A21, A12, A31, A13, A32, A23])
    #: field pair swap (annihilation <-> creation components)
    J_FIELD = _permutation([F1D, F1, F2D, F2])


_JA = FluctuationBasis.J_ATOMIC
_JF = FluctuationBasis.J_FIELD


def pair_adjoint_field(x: np.ndarray) -> np.ndarray:
    """Adjoint of a 4x4 field-space matrix under the w/-w pairing convention."""
    return _JF @ x.conj().T @ _JF


def pair_adjoint_mixed(h: np.ndarray) -> np.ndarray:
    """Pairing adjoint of a 4x8 field-from-atom map (returns 8x4)."""
    return _JA @ h.conj().T @ _JF


@dataclass(frozen=True)
class FluctuationSystem:
    """Drift M (8x8, rad/us), field coupling B (8x4, rad/us), back-action K (4x8, m^-1)."""

    M: np.ndarray
    B: np.ndarray
    K: np.ndarray
    atom_number: float

    def conjugation_defect(self) -> float:
        """Max entrywise violation of the conjugation symmetry of M, B, K."""
        dm = np.max(np.abs(self.M - _JA @ self.M.conj() @ _JA))
        db = np.max(np.abs(self.B - _JA @ self.B.conj() @ _JF))
        dk = np.max(np.abs(self.K - _JF @ self.K.conj() @ _JA))
        return float(max(dm, db, dk))


def build_system(state: SteadyState, params: SystemParams, couplings: Couplings,
                 constants: PhysicalConstants = CONSTANTS) -> FluctuationSystem:
    """Linearize the coupled atom-field equations around the working point.

    M reuses the mean-field drift (the equations are linear in the atomic
    operators at fixed fields, so drift and linearization coincide).  B
    carries the steady-state coherences and population differences that
    multiply the field fluctuations.  K encodes the propagation sources:
    the probe row picks up i g1 N / c times dsigma_13, its conjugate the
    opposite sign at dsigma_31, and likewise for the pump at dsigma_23.
    """
    m, _ = drift_matrix(params, couplings)

    s = state.sigma
    s11, s22, s33 = s[0, 0], s[1, 1], s[2, 2]
    s12, s21 = s[0, 1], s[1, 0]
    s13, s31 = s[0, 2], s[2, 0]
    s23, s32 = s[1, 2], s[2, 1]
    g1, g2 = couplings.g1, couplings.g2

    b = np.zeros((8, 4), dtype=complex)
    b[A11, F1] = -1j * g1 * s31
    b[A11, F1D] = 1j * g1 * s13
    b[A22, F2] = -1j * g2 * s32
    b[A22, F2D] = 1j * g2 * s23
    b[A12, F1] = -1j * g1 * s32
    b[A12, F2D] = 1j * g2 * s13
    b[A21, F1D] = 1j * g1 * s23
    b[A21, F2] = -1j * g2 * s31
    b[A13, F1] = 1j * g1 * (s11 - s33)
    b[A13, F2] = 1j * g2 * s12
    b[A31, F1D] = -1j * g1 * (s11 - s33)
    b[A31, F2D] = -1j * g2 * s21
    b[A23, F1] = 1j * g1 * s21
    b[A23, F2] = 1j * g2 * (s22 - s33)
    b[A32, F1D] = -1j * g1 * s12
    b[A32, F2D] = -1j * g2 * (s22 - s33)

    n_atoms = params.atom_number
    k = np.zeros((4, 8), dtype=complex)
    k[F1, A13] = 1j * g1 * n_atoms / constants.c
    k[F1D, A31] = -1j * g1 * n_atoms / constants.c
    k[F2, A23] = 1j * g2 * n_atoms / constants.c
    k[F2D, A32] = -1j * g2 * n_atoms / constants.c

    return FluctuationSystem(M=m, B=b, K=k, atom_number=n_atoms)


_COND_LIMIT = 1e12
_RESIDUAL_LIMIT = 1e-10


def sigma_response(system: FluctuationSystem, omega: float) -> np.ndarray:
    """Resolvent R(w) = (-iw I - M)^-1 of the atomic fluctuations.

    dsigma(w) = R(w) (B da(w) + F(w)).  Raises when -iw sits numerically on
    the spectrum of M (e.g. the dark-state zero mode at gamma12 = 0, w = 0).
    """
    a = -1j * omega * np.eye(8) - system.M
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise ResponseError(
            f"degenerate regime: atomic response at omega={omega:g} rad/us is "
            f"ill-conditioned (cond={cond:.3g}); -i*omega lies on the drift spectrum")
    r = np.linalg.solve(a, np.eye(8, dtype=complex))
    residual = np.max(np.abs(a @ r - np.eye(8)))
    if residual > _RESIDUAL_LIMIT:
        raise ResponseError(f"resolvent residual {residual:.3g} exceeds {_RESIDUAL_LIMIT:g}")
    return r


def propagation_generator(system: FluctuationSystem, resolvent: np.ndarray,
                          omega: float,
                          constants: PhysicalConstants = CONSTANTS):
    """Spatial generator (G, H) of the field fluctuations along the medium.

    d/dz da(z, w) = G da(z, w) + H F(z, w), with G = (iw/c) I + K R B and
    H = K R, both in m^-1.
    """
    h = system.K @ resolvent
    g = (1j * omega / constants.c) * np.eye(4) + h @ system.B
    return g, h
