"""Physical inputs, unit conventions, and the atom-field coupling derivation.

Unit conventions used throughout the package:

* every rate, detuning, Rabi frequency and Fourier frequency is an angular
  frequency in rad/us, so a quoted "3 MHz" decay rate enters the equations
  of motion directly as 3.0;
* all lengths are in metres; the speed of light is therefore carried in
  m/us so that propagation phases stay in the same time unit.

Dipole moments are not free inputs: each arm's moment is derived from its
partial population decay rate through the free-space spontaneous-emission
relation, and the coupling constants follow from the single-photon field
of the quantisation volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CouplingError

# rad/us -> rad/s
_PER_US = 1e6


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants; `c` is in m/us, the rest in SI."""

    c: float = 299.792458          # speed of light (m us^-1)
    hbar: float = 1.054571817e-34  # reduced Planck constant (J s)
    eps0: float = 8.8541878128e-12  # vacuum permittivity (F m^-1)

    def __post_init__(self):
        for name in ("c", "hbar", "eps0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"physical constant {name} must be positive")


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs of one working point.

    alpha1/alpha2 are the mean coherent amplitudes of the probe and pump
    (dimensionless, complex accepted, real and positive by default);
    omega is the Fourier analysis frequency of the fluctuation spectra.
    """

    delta1: float = 0.0        # probe detuning (rad/us)
    delta2: float = 0.0        # pump detuning (rad/us)
    gamma1: float = 3.0        # population decay 3->1 (rad/us)
    gamma2: float = 3.0        # population decay 3->2 (rad/us)
    gamma12: float = 0.1       # lower-doublet dephasing (rad/us)
    lambda1: float = 794.98e-9  # probe wavelength (m)
    lambda2: float = 794.98e-9  # pump wavelength (m)
    density: float = 1e19      # atomic number density (m^-3)
    length: float = 0.06       # medium length (m)
    radius: float = 2e-4       # beam radius (m)
    alpha1: complex = 1.0      # probe mean amplitude
    alpha2: complex = 20.0     # pump mean amplitude
    omega: float = 0.0         # analysis frequency (rad/us)

    def __post_init__(self):
        if not (self.gamma1 >= 0 and self.gamma2 >= 0):
            raise ValueError("gamma1 and gamma2 must be nonnegative")
        if self.gamma1 + self.gamma2 <= 0:
            raise ValueError("gamma1 + gamma2 must be positive (gamma13 would vanish)")
        if self.gamma12 < 0:
            raise ValueError("gamma12 must be nonnegative")
        if self.density < 0:
            raise ValueError("density must be nonnegative")
        if not (self.length > 0 and self.radius > 0):
            raise ValueError("length and radius must be positive")
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise ValueError("wavelengths must be positive")
        for name in ("delta1", "delta2", "gamma1", "gamma2", "gamma12", "density",
                     "length", "radius", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"parameter {name} is not finite")
        for name in ("alpha1", "alpha2"):
            z = complex(getattr(self, name))
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"parameter {name} is not finite")

    @property
    def gamma13(self) -> float:
        """Optical coherence decay of the 1-3 arm, (gamma1+gamma2)/2."""
        return 0.5 * (self.gamma1 + self.gamma2)

    @property
    def gamma23(self) -> float:
        """Optical coherence decay of the 2-3 arm; equal to gamma13."""
        return self.gamma13

    @property
    def volume(self) -> float:
        """Interaction volume pi r^2 L (m^3)."""
        return math.pi * self.radius**2 * self.length

    @property
    def atom_number(self) -> float:
        """Total atom number in the interaction volume."""
        return self.density * self.volume

    def replace(self, **changes) -> "SystemParams":
        from dataclasses import replace as _replace
        return _replace(self, **changes)


@dataclass(frozen=True)
class Couplings:
    """Atom-field coupling constants (rad/us) and dipole moments (C m)."""

    g1: float
    g2: float
    mu13: float
    mu23: float


def derive_couplings(params: SystemParams,
                     constants: PhysicalConstants = CONSTANTS) -> Couplings:
    """Derive dipole moments and coupling constants from the decay rates.

    Each arm's dipole moment comes from its partial decay rate gamma_i via
    mu_i^2 = 3 pi eps0 hbar c^3 gamma_i / omega_i^3 (SI, omega_i = 2 pi c /
    lambda_i), and the coupling constant is g_i = mu_i sqrt(omega_i / (2
    eps0 hbar V)) converted back to rad/us.  g_i^2 N depends only on the
    density and atomic constants, not on the geometry.
    """
    c_si = constants.c * _PER_US
    volume = params.volume
    out = {}
    for tag, lam, gamma in (("13", params.lambda1, params.gamma1),
                            ("23", params.lambda2, params.gamma2)):
        omega_si = 2.0 * math.pi * c_si / lam
        gamma_si = gamma * _PER_US
        mu_sq = 3.0 * math.pi * constants.eps0 * constants.hbar * c_si**3 * gamma_si / omega_si**3
        if not (math.isfinite(mu_sq) and mu_sq >= 0):
            raise CouplingError(f"dipole moment mu{tag}^2 is non-finite "
                                f"(lambda={lam!r}, gamma={gamma!r})")
        mu = math.sqrt(mu_sq)
        g_si = mu * math.sqrt(omega_si / (2.0 * constants.eps0 * constants.hbar * volume))
        g = g_si / _PER_US
        if not math.isfinite(g):
            raise CouplingError(f"coupling g{tag} is non-finite (volume={volume!r})")
        out[tag] = (g, mu)
    return Couplings(g1=out["13"][0], g2=out["23"][0],
                     mu13=out["13"][1], mu23=out["23"][1])


# Warning thresholds for the modelling assumptions.
EIT_REGIME_FACTOR = 10.0     # pump Rabi frequency must exceed 10*sqrt(gamma12*gamma13)
ABSORPTION_LIMIT = 0.1       # normalized probe absorption above this questions no-depletion


def validate(params: SystemParams,
             constants: PhysicalConstants = CONSTANTS,
             absorption: float | None = None) -> list[str]:
    """Check the modelling assumptions and return human-readable warnings.

    The propagation model treats the mean fields as undepleted and assumes
    the strong-pump transparency regime.  Neither condition is enforced --
    points outside them still evaluate -- but the warnings are attached to
    sweep rows and reports.  Pass the computed normalized absorption to
    enable the no-depletion check.
    """
    warnings = []
    couplings = derive_couplings(params, constants)
    pump_rabi = couplings.g2 * abs(complex(params.alpha2))
    threshold = EIT_REGIME_FACTOR * math.sqrt(params.gamma12 * params.gamma13)
    if pump_rabi < threshold:
        warnings.append(
            f"transparency-regime assumption marginal: g2*|alpha2|={pump_rabi:.6g} rad/us "
            f"< {EIT_REGIME_FACTOR:g}*sqrt(gamma12*gamma13)={threshold:.6g} rad/us")
    if absorption is not None and absorption > ABSORPTION_LIMIT:
        warnings.append(
            f"no-depletion assumption questionable: normalized absorption "
            f"{absorption:.6g} > {ABSORPTION_LIMIT:g}")
    return warnings
