"""Langevin diffusion coefficients from the generalized Einstein relation.

The delta-correlated atomic noises F_ij satisfy, at the working point,

    <F_mu(t) F_nu(t')> = 2 D_mu,nu delta(t - t')

with 2 D_mu,nu = d<sigma_mu sigma_nu>/dt|_drift - <A_mu sigma_nu>
- <sigma_mu A_nu>, where A_mu is the deterministic drift of sigma_mu with
the field operators frozen at their mean values and operator products
reduce through the single-atom identity sigma_ij sigma_kl = delta_jk
sigma_il.  The coefficients are generated programmatically from the drift
table rather than transcribed, so detuned and field-dressed cases are
covered uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SteadyStateError
from .fluctuations import FluctuationBasis
from .params import Couplings, SystemParams
from .steady_state import ATOM_PAIRS, SteadyState, steady_residual

# Full nine-operator ordering used internally (populations first).
OPS9 = ((1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))
_IDX9 = {pair: k for k, pair in enumerate(OPS9)}


def _drift_table(params: SystemParams, couplings: Couplings) -> np.ndarray:
    """9x9 coefficient table T with A_mu = sum_nu T[mu, nu] sigma_nu."""
    om1 = couplings.g1 * complex(params.alpha1)
    om2 = couplings.g2 * complex(params.alpha2)
    g1, g2 = params.gamma1, params.gamma2
    gam12 = params.gamma12 - 1j * (params.delta1 - params.delta2)
    gam13 = params.gamma13 - 1j * params.delta1
    gam23 = params.gamma23 - 1j * params.delta2

    t = np.zeros((9, 9), dtype=complex)

    def put(target, **terms):
        row = _IDX9[target]
        for key, coeff in terms.items():
            t[row, _IDX9[(int(key[1]), int(key[2]))]] += coeff

    put((1, 1), s33=g1, s13=1j * np.conj(om1), s31=-1j * om1)
    put((2, 2), s33=g2, s23=1j * np.conj(om2), s32=-1j * om2)
    put((3, 3), s33=-(g1 + g2), s13=-1j * np.conj(om1), s31=1j * om1,
        s23=-1j * np.conj(om2), s32=1j * om2)
    put((1, 2), s12=-gam12, s32=-1j * om1, s13=1j * np.conj(om2))
    put((2, 1), s21=-np.conj(gam12), s23=1j * np.conj(om1), s31=-1j * om2)
    put((1, 3), s13=-gam13, s11=1j * om1, s33=-1j * om1, s12=1j * om2)
    put((3, 1), s31=-np.conj(gam13), s11=-1j * np.conj(om1), s33=1j * np.conj(om1),
        s21=-1j * np.conj(om2))
    put((2, 3), s23=-gam23, s22=1j * om2, s33=-1j * om2, s21=1j * om1)
    put((3, 2), s32=-np.conj(gam23), s22=-1j * np.conj(om2), s33=1j * np.conj(om2),
        s12=-1j * np.conj(om1))
    return t


def _means9(state: SteadyState) -> np.ndarray:
    return np.array([state[i, j] for (i, j) in OPS9], dtype=complex)


@dataclass(frozen=True)
class DiffusionMatrix:
    """Diffusion coefficients over the 8-component atomic noise ordering.

    ``D[a, b]`` is the coefficient for the ordered pair (F at index a, F at
    index b); the physical correlator carries twice this value.
    """

    D: np.ndarray

    def pairing_defect(self) -> float:
        """Max violation of D_ij,kl = conj(D_lk,ji)."""
        ja = FluctuationBasis.J_ATOMIC
        return float(np.max(np.abs(self.D - ja @ self.D.conj().T @ ja)))

    def noise_product_matrix(self) -> np.ndarray:
        """<F F+> correlation coefficients, hermitian by the pairing symmetry."""
        ja = FluctuationBasis.J_ATOMIC
        return 2.0 * self.D @ ja


_RESIDUAL_LIMIT = 1e-10


def diffusion_matrix(state: SteadyState, params: SystemParams,
                     couplings: Couplings) -> DiffusionMatrix:
    """Evaluate the Einstein-relation coefficients at the steady state.

    Meaningful only at a fixed point of the drift, so the residual of the
    mean-field equations is re-checked first.
    """
    residual = steady_residual(state, params, couplings)
    if residual > _RESIDUAL_LIMIT:
        raise SteadyStateError(
            f"diffusion coefficients need a steady state; drift residual {residual:.3g}")

    t = _drift_table(params, couplings)
    means = _means9(state)
    drift_means = t @ means  # <A_mu>, zero at an exact fixed point

    def reduced_mean(p, q, k, l):
        # <sigma_pq sigma_kl> = delta_qk <sigma_pl>
        return means[_IDX9[(p, l)]] if q == k else 0.0

    d = np.zeros((8, 8), dtype=complex)
    for a, (i, j) in enumerate(ATOM_PAIRS):
        for b, (k, l) in enumerate(ATOM_PAIRS):
            total = drift_means[_IDX9[(i, l)]] if j == k else 0.0
            row_a = t[_IDX9[(i, j)]]
            row_b = t[_IDX9[(k, l)]]
            for c, (p, q) in enumerate(OPS9):
                if row_a[c] != 0.0:
                    total -= row_a[c] * reduced_mean(p, q, k, l)
                if row_b[c] != 0.0:
                    total -= row_b[c] * reduced_mean(i, j, p, q)
            d[a, b] = 0.5 * total
    return DiffusionMatrix(D=d)
