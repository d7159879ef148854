"""Covariance transfer of the field fluctuations from z = 0 to z = L.

The spectral covariance S_ab(w), defined by <dA_a(z,w) dA_b(z,w')> =
2 pi S_ab(w) delta(w+w') over the field ordering [da1, da1+, da2, da2+],
is normalized so that coherent (vacuum) inputs have <da da+> = 1.  Along
the medium it obeys

    dS/dz = G S + S G# + Q,      Q = (2c/N) H D H#,

where # is the adjoint consistent with the w/-w pairing (plain conjugate
transpose composed with the pair swap), so

    S(L) = E S(0) E# + Int_0^L exp(G(L-z)) Q exp(G#(L-z)) dz,  E = exp(GL).

The noise integral is evaluated in closed form with an augmented-block
matrix exponential: exp([[G, Q], [0, -G#]] l) yields both exp(G l) and the
integral over a segment l.  Segments are kept short enough that the
anti-stable -G# block cannot overflow and the result is composed dyadically
(the composition is exact because the generator is z-independent), which
keeps the construction stable at arbitrarily large optical depth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import TransferError
from .fluctuations import (F1, F1D, F2, F2D, FluctuationSystem, pair_adjoint_field,
                           pair_adjoint_mixed, propagation_generator, sigma_response)
from .noise import DiffusionMatrix
from .params import CONSTANTS, PhysicalConstants, SystemParams

# Largest dimensionless generator norm handled before advising a rescale;
# the dyadic composition keeps exponents per segment below _SEGMENT_NORM.
_NORM_LIMIT = 1e7
_SEGMENT_NORM = 8.0


def vacuum_input() -> np.ndarray:
    """Spectral covariance of coherent-state (vacuum-fluctuation) inputs."""
    s = np.zeros((4, 4), dtype=complex)
    s[F1, F1D] = 1.0
    s[F2, F2D] = 1.0
    return s


def commutator_residuals(s: np.ndarray, s_neg: np.ndarray | None = None) -> np.ndarray:
    """Self-commutator deviations from 1 and cross-commutators from 0.

    The commutator coefficient pairs the covariance at +w with the one at
    -w; at zero analysis frequency the two coincide and `s` alone
    suffices.  Returns the six residuals [a1 self, a2 self, four cross
    pairs]; all vanish for any physical covariance regardless of state.
    """
    t = s if s_neg is None else s_neg
    return np.array([
        s[F1, F1D] - t[F1D, F1] - 1.0,
        s[F2, F2D] - t[F2D, F2] - 1.0,
        s[F1, F2D] - t[F2D, F1],
        s[F1, F2] - t[F2, F1],
        s[F1D, F2] - t[F2, F1D],
        s[F1D, F2D] - t[F2D, F1D],
    ])


def pairing_hermiticity_defect(s: np.ndarray) -> float:
    """Max violation of S_ab = conj(S_{Jb,Ja}) (conjugation symmetry)."""
    return float(np.max(np.abs(s - pair_adjoint_field(s))))


@dataclass(frozen=True)
class TransferResult:
    """Coherent transfer E = exp(G L), output covariance, and the added noise.

    S_out = E S_in E# + noise_contribution holds exactly by construction.
    """

    E: np.ndarray
    S_out: np.ndarray
    noise_contribution: np.ndarray


def _segment_maps(g: np.ndarray, q: np.ndarray, ell: float):
    """exp(G l) and the noise integral over one segment via one 8x8 exponential."""
    c = np.zeros((8, 8), dtype=complex)
    c[:4, :4] = g
    c[:4, 4:] = q
    c[4:, 4:] = -pair_adjoint_field(g)
    full = expm(c * ell)
    e_seg = full[:4, :4]
    w_seg = full[:4, 4:] @ pair_adjoint_field(e_seg)
    return e_seg, w_seg


def propagate(system: FluctuationSystem, diffusion: DiffusionMatrix,
              s_in: np.ndarray, params: SystemParams, omega: float,
              length: float | None = None,
              constants: PhysicalConstants = CONSTANTS) -> TransferResult:
    """Propagate an input spectral covariance through the medium at frequency w.

    The mean fields are z-independent (no depletion), so G, H and the
    diffusion coefficients are constant along the medium; `length`
    defaults to the medium length and is exposed to allow composing
    partial propagations.
    """
    ell_total = params.length if length is None else float(length)
    if ell_total < 0:
        raise TransferError("propagation length must be nonnegative")

    resolvent = sigma_response(system, omega)
    g, h = propagation_generator(system, resolvent, omega, constants)

    n_atoms = system.atom_number
    if n_atoms > 0:
        q = (2.0 * constants.c / n_atoms) * h @ diffusion.D @ pair_adjoint_mixed(h)
    else:
        q = np.zeros((4, 4), dtype=complex)

    gnorm = np.linalg.norm(g, 1) * ell_total
    if not np.isfinite(gnorm) or gnorm > _NORM_LIMIT:
        raise TransferError(
            f"generator norm ||G||*L = {gnorm:.3g} exceeds {_NORM_LIMIT:.0e}; "
            "rescale density/length (physically implausible optical depth)")

    doublings = max(0, int(np.ceil(np.log2(max(gnorm, 1e-30) / _SEGMENT_NORM))))
    e_seg, w_seg = _segment_maps(g, q, ell_total / 2**doublings)
    with np.errstate(over="ignore", invalid="ignore"):  # overflow checked below
        for _ in range(doublings):
            w_seg = e_seg @ w_seg @ pair_adjoint_field(e_seg) + w_seg
            e_seg = e_seg @ e_seg

    if not (np.all(np.isfinite(e_seg)) and np.all(np.isfinite(w_seg))):
        raise TransferError("matrix exponential produced non-finite entries "
                            "(runaway parametric gain); rescale density/length")

    s_out = e_seg @ s_in @ pair_adjoint_field(e_seg) + w_seg
    return TransferResult(E=e_seg, S_out=s_out, noise_contribution=w_seg)
