"""Effective cavity-QED coefficients after eliminating the excited states.

The atom is driven by a classical field (Rabi frequency Omega, ellipticity
theta) and couples with strength g to two circularly polarized cavity modes a
(sigma+) and b (sigma-).  All frequencies are in 2pi*MHz with the reduced
dipole units absorbed into g and Omega.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from magicdetune import settings
from magicdetune.dipole import atom_elements
from magicdetune.exceptions import InvalidArgumentError
from magicdetune.polarizability import DriveConfig, inverse_detunings, resolve_manifold

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CavityConfig:
    g: float
    omega_rabi: float
    kappa: float
    delta_c: float
    theta: float = math.pi / 4
    phases: tuple = (math.pi / 2,)

    def __post_init__(self):
        for name in ('g', 'omega_rabi', 'kappa', 'delta_c', 'theta'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgumentError('{} must be finite, got {}'.format(name, value))
            object.__setattr__(self, name, value)
        if self.kappa <= 0:
            raise InvalidArgumentError('kappa must be > 0, got {}'.format(self.kappa))
        if not 0.0 <= self.theta <= math.pi / 2:
            raise InvalidArgumentError('theta={} outside [0, pi/2]'.format(self.theta))
        object.__setattr__(self, 'phases', tuple(float(phi) for phi in self.phases))

    @property
    def couplings(self):
        return tuple(self.g * math.sin(phi) for phi in self.phases)

    def with_phases(self, phases):
        return CavityConfig(self.g, self.omega_rabi, self.kappa, self.delta_c, self.theta, tuple(phases))

    def with_delta_c(self, delta_c):
        return CavityConfig(self.g, self.omega_rabi, self.kappa, delta_c, self.theta, self.phases)


@dataclass(frozen=True)
class EffectiveCavityParams:
    """Per-m coefficients, arrays ordered m = -F..F.

    omega_tilde, h and eta_raman couple m to m+2 and are zero where m+2 > F.
    """
    m_values: tuple
    U_a: np.ndarray
    U_b: np.ndarray
    omega: np.ndarray
    omega_tilde: np.ndarray
    h: np.ndarray
    eta_plus_ray: np.ndarray
    eta_minus_ray: np.ndarray
    eta_raman: np.ndarray
    warnings: tuple = field(default=(), compare=False)

    def at(self, name, m):
        return float(getattr(self, name)[self.m_values.index(m)])


def _raman_products(elements):
    products = np.zeros_like(elements.r)
    products[:, :-2] = elements.r[:, :-2] * elements.s[:, 2:]
    return products


def effective_params(atom, F, cfg, delta):
    resolve_manifold(atom, F)
    drive = DriveConfig(cfg.theta, delta)
    elements = atom_elements(atom)
    x = inverse_detunings(atom, drive.delta, drive.pole_radius)

    warnings = []
    ratio = abs(cfg.omega_rabi) * float(np.max(np.abs(x)))
    if ratio > settings.CavitySettings.VALIDITY_THRESHOLD:
        message = 'Omega/|delta| = {:.3g} exceeds {} for {}; adiabatic elimination is unreliable'.format(
            ratio, settings.CavitySettings.VALIDITY_THRESHOLD, atom)
        logger.warning(message)
        warnings.append(message)

    c, s = math.cos(cfg.theta), math.sin(cfg.theta)
    g, omega = cfg.g, cfg.omega_rabi
    r2, s2 = elements.r ** 2, elements.s ** 2
    raman = x @ _raman_products(elements)

    return EffectiveCavityParams(
        m_values=tuple(elements.m_values),
        U_a=g ** 2 * (x @ r2),
        U_b=g ** 2 * (x @ s2),
        omega=omega ** 2 / 4 * (x @ (c ** 2 * r2 + s ** 2 * s2)),
        omega_tilde=c * s * omega ** 2 / 4 * raman,
        h=g ** 2 * raman,
        eta_plus_ray=c * omega * g / 2 * (x @ r2),
        eta_minus_ray=s * omega * g / 2 * (x @ s2),
        eta_raman=omega * g / 2 * raman,
        warnings=tuple(warnings))


def _relative_spread(values):
    mean = float(np.mean(values))
    deviation = float(np.max(np.abs(values - mean)))
    return deviation / abs(mean) if mean else deviation


@dataclass(frozen=True)
class ParallelBasis:
    U_par: np.ndarray
    U_perp: np.ndarray
    eta_par: np.ndarray
    m_spread: float

    @property
    def U_par_mean(self):
        return float(np.mean(self.U_par))

    @property
    def eta_par_mean(self):
        return float(np.mean(self.eta_par))


def parallel_basis_params(params, theta):
    c, s = math.cos(theta), math.sin(theta)
    U_par = c ** 2 * params.U_a + s ** 2 * params.U_b
    U_perp = s ** 2 * params.U_a + c ** 2 * params.U_b
    eta_par = c * params.eta_plus_ray + s * params.eta_minus_ray
    spread = max(_relative_spread(U_par), _relative_spread(eta_par))
    return ParallelBasis(U_par=U_par, U_perp=U_perp, eta_par=eta_par, m_spread=spread)


@dataclass(frozen=True)
class SteadyState:
    drive_sum: float
    shift_sum: float
    photon_number: float


def multi_atom_steady_state(cfg, U_par, eta_par):
    """Driven-damped cavity mode with one parallel-basis scatterer per phase."""
    U_par, eta_par = float(U_par), float(eta_par)
    weights = [math.sin(phi) for phi in cfg.phases]
    drive_sum = sum(w * eta_par for w in weights)
    shift_sum = sum(w * w * U_par for w in weights)
    photon_number = drive_sum ** 2 / ((cfg.delta_c + shift_sum) ** 2 + cfg.kappa ** 2)
    return SteadyState(drive_sum=drive_sum, shift_sum=shift_sum, photon_number=photon_number)


def compensated_detuning(cfg, U_par, reference_atoms=1):
    """delta_c that keeps delta_c + shift_sum at its `reference_atoms` in-phase value."""
    shift_sum = sum(math.sin(phi) ** 2 * float(U_par) for phi in cfg.phases)
    return cfg.delta_c + reference_atoms * float(U_par) - shift_sum
