import numpy as np
import pytest

from eie import SystemParams, build_system, derive_couplings, solve_steady_state
from eie.errors import ResponseError
from eie.fluctuations import (FluctuationBasis, pair_adjoint_field, propagation_generator,
                              sigma_response)
from eie.steady_state import A11, A22, A12, A21, A13, A31, A23, A32
from conftest import random_params

JA = FluctuationBasis.J_ATOMIC
JF = FluctuationBasis.J_FIELD


def test_pair_swaps_are_involutions():
    assert np.array_equal(JA @ JA, np.eye(8))
    assert np.array_equal(JF @ JF, np.eye(4))


def test_coherence_decay_entries(fig_system, fig_params):
    p = fig_params
    m = fig_system.M
    assert m[A12, A12] == -(p.gamma12 - 1j * (p.delta1 - p.delta2))
    assert m[A21, A21] == np.conj(m[A12, A12])


def test_optical_decay_entry_with_fields_off():
    from eie.steady_state import SteadyState
    p = SystemParams(alpha1=0.0, alpha2=0.0, delta1=1.3)
    c = derive_couplings(p)
    ground = SteadyState(sigma=np.diag([1.0, 0.0, 0.0]).astype(complex))
    sys_ = build_system(ground, p, c)
    assert sys_.M[A13, A13] == -(p.gamma13 - 1j * p.delta1)
    assert sys_.M[A23, A23] == -(p.gamma23 - 1j * p.delta2)


def test_conjugation_symmetry_exact(fig_system):
    assert fig_system.conjugation_defect() == 0.0


def test_conjugation_symmetry_random_points():
    rng = np.random.RandomState(11)
    for _ in range(10):
        p = random_params(rng)
        c = derive_couplings(p)
        s = solve_steady_state(p, c)
        assert build_system(s, p, c).conjugation_defect() == 0.0


def test_drift_stability(fig_system):
    assert np.max(np.linalg.eigvals(fig_system.M).real) <= 1e-10


def test_drift_stability_random_points():
    rng = np.random.RandomState(13)
    for _ in range(15):
        p = random_params(rng)
        c = derive_couplings(p)
        s = solve_steady_state(p, c)
        sys_ = build_system(s, p, c)
        assert np.max(np.linalg.eigvals(sys_.M).real) <= 1e-10


def test_trace_closure(fig_system, fig_params, fig_couplings, fig_steady):
    """The eliminated population row is minus the sum of the kept ones."""
    p, c, s = fig_params, fig_couplings, fig_steady
    om1 = c.g1 * complex(p.alpha1)
    om2 = c.g2 * complex(p.alpha2)
    row33_m = np.zeros(8, dtype=complex)
    row33_m[A11] = p.gamma1 + p.gamma2
    row33_m[A22] = p.gamma1 + p.gamma2
    row33_m[A13] = -1j * np.conj(om1)
    row33_m[A31] = 1j * om1
    row33_m[A23] = -1j * np.conj(om2)
    row33_m[A32] = 1j * om2
    assert np.max(np.abs(row33_m + fig_system.M[A11] + fig_system.M[A22])) == 0.0

    sig = fig_steady.sigma
    row33_b = np.zeros(4, dtype=complex)
    row33_b[0] = 1j * c.g1 * sig[2, 0]
    row33_b[1] = -1j * c.g1 * sig[0, 2]
    row33_b[2] = 1j * c.g2 * sig[2, 1]
    row33_b[3] = -1j * c.g2 * sig[1, 2]
    assert np.max(np.abs(row33_b + fig_system.B[A11] + fig_system.B[A22])) == 0.0


def test_backaction_sparsity(fig_system, fig_params, fig_couplings):
    k = fig_system.K
    scale = fig_couplings.g1 * fig_params.atom_number / 299.792458
    assert k[0, A13] == pytest.approx(1j * scale, rel=1e-12)
    assert k[1, A31] == pytest.approx(-1j * scale, rel=1e-12)
    assert k[2, A23] == pytest.approx(1j * scale, rel=1e-12)
    assert k[3, A32] == pytest.approx(-1j * scale, rel=1e-12)
    mask = np.ones((4, 8), dtype=bool)
    mask[0, A13] = mask[1, A31] = mask[2, A23] = mask[3, A32] = False
    assert np.all(k[mask] == 0.0)


def test_resolvent_definition_and_residual(fig_system):
    r0 = sigma_response(fig_system, 0.0)
    assert np.max(np.abs(-fig_system.M @ r0 - np.eye(8))) < 1e-10
    r = sigma_response(fig_system, 1.7)
    a = -1j * 1.7 * np.eye(8) - fig_system.M
    assert np.max(np.abs(a @ r - np.eye(8))) < 1e-10


def test_resolvent_decays_at_high_frequency(fig_system):
    r = sigma_response(fig_system, 1e6)
    assert np.max(np.abs(r)) < 2.0 / 1e6


def test_resolvent_regular_at_dark_point():
    # driven dark state still relaxes (optical pumping), so the
    # zero-frequency response stays well conditioned
    p = SystemParams(gamma12=0.0)
    c = derive_couplings(p)
    s = solve_steady_state(p, c)
    sys_ = build_system(s, p, c)
    r = sigma_response(sys_, 0.0)
    assert np.max(np.abs(-sys_.M @ r - np.eye(8))) < 1e-10


def test_resolvent_singular_without_drive_or_dephasing():
    from eie.steady_state import SteadyState
    # undriven medium with gamma12 = 0 has a non-decaying coherence mode
    p = SystemParams(alpha1=0.0, alpha2=0.0, gamma12=0.0)
    c = derive_couplings(p)
    ground = SteadyState(sigma=np.diag([1.0, 0.0, 0.0]).astype(complex))
    sys_ = build_system(ground, p, c)
    with pytest.raises(ResponseError):
        sigma_response(sys_, 0.0)


def test_response_is_steady_state_jacobian(fig_params, fig_couplings, fig_system):
    """R(0) B equals the derivative of the steady state w.r.t. the field
    amplitudes (independent finite-difference oracle for M and B jointly)."""
    p, c = fig_params, fig_couplings
    r0 = sigma_response(fig_system, 0.0)
    b = fig_system.B
    base = solve_steady_state(p, c).as_vector()
    eps = 1e-7
    cases = [
        (p.replace(alpha1=p.alpha1 + eps), b[:, 0] + b[:, 1]),
        (p.replace(alpha1=p.alpha1 + 1j * eps), 1j * b[:, 0] - 1j * b[:, 1]),
        (p.replace(alpha2=p.alpha2 + eps), b[:, 2] + b[:, 3]),
        (p.replace(alpha2=p.alpha2 + 1j * eps), 1j * b[:, 2] - 1j * b[:, 3]),
    ]
    for perturbed, direction in cases:
        fd = (solve_steady_state(perturbed, c).as_vector() - base) / eps
        assert np.max(np.abs(fd - r0 @ direction)) < 1e-6


def test_generator_without_atoms():
    p = SystemParams(density=0.0)
    c = derive_couplings(p)
    s = solve_steady_state(p, c)
    sys_ = build_system(s, p, c)
    for omega in (0.0, 2.5):
        r = sigma_response(sys_, omega)
        g, h = propagation_generator(sys_, r, omega)
        assert np.all(h == 0.0)
        assert np.max(np.abs(g - (1j * omega / 299.792458) * np.eye(4))) == 0.0
    r = sigma_response(sys_, 0.0)
    g, _ = propagation_generator(sys_, r, 0.0)
    assert np.all(g == 0.0)


def test_generator_conjugation_symmetry(fig_system):
    r0 = sigma_response(fig_system, 0.0)
    g, h = propagation_generator(fig_system, r0, 0.0)
    assert np.max(np.abs(g - JF @ g.conj() @ JF)) < 1e-12 * np.max(np.abs(g))
    assert np.max(np.abs(h - JF @ h.conj() @ JA)) < 1e-12 * np.max(np.abs(h))


def test_pair_adjoint_field_matches_definition():
    rng = np.random.RandomState(3)
    x = rng.randn(4, 4) + 1j * rng.randn(4, 4)
    assert np.array_equal(pair_adjoint_field(x), JF @ x.conj().T @ JF)
