"""Generalized polarizability tensor and the magic-distance functional.

The drive polarization is e_par = cos(theta) e_+ + sin(theta) e_-, and the
output basis is anchored to it: parallel, perpendicular = sin e_+ - cos e_-,
and pi.  Every entry is linear in the inverse line detunings
x_l = 1/(delta + zeta_l), which :class:`MagicDistanceForm` exploits for scans.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from magicdetune import settings
from magicdetune.dipole import LINES, atom_elements
from magicdetune.exceptions import InvalidArgumentError, PoleError, VanishingNormalizerError
from magicdetune.wigner import half

logger = logging.getLogger(__name__)

PARALLEL, PERPENDICULAR, PI, PLUS, MINUS = range(5)
OUTPUTS = ('parallel', 'perpendicular', 'pi', 'plus', 'minus')
# Circular-input block: input index 0 = sigma+, 1 = sigma-; output 0 = +, 1 = -, 2 = pi.
CIRCULAR_OUTPUTS = ('plus', 'minus', 'pi')

COMPONENTS = ('perp_rayleigh', 'par_rayleigh', 'raman_circ', 'raman_pi')

# Normalizers smaller than this fraction of the largest entry count as zero.
VANISHING_NORMALIZER = 1e-14


@dataclass(frozen=True)
class DriveConfig:
    theta: float
    delta: float
    pole_radius: float = None

    def __post_init__(self):
        theta, delta = float(self.theta), float(self.delta)
        if not math.isfinite(theta) or not 0.0 <= theta <= math.pi / 2:
            raise InvalidArgumentError('theta={} outside [0, pi/2]'.format(self.theta))
        if not math.isfinite(delta):
            raise InvalidArgumentError('delta={} is not finite'.format(self.delta))
        radius = settings.POLE_EXCLUSION_MHZ if self.pole_radius is None else float(self.pole_radius)
        if radius < 0:
            raise InvalidArgumentError('pole_radius must be nonnegative')
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'pole_radius', radius)


def resolve_manifold(atom, F):
    if F is not None and half(F) != atom.F:
        raise InvalidArgumentError('{} describes F={}, not F={}'.format(atom.species, atom.F, F))
    return atom.F


def line_offsets(atom):
    """zeta_l as floats in LINES order, None for lines that do not couple."""
    return tuple(float(atom.zeta(line)) if line in atom.lines else None for line in LINES)


def inverse_detunings(atom, delta, pole_radius=None):
    """x_l = 1/(delta + zeta_l) for coupled lines, 0 for the others."""
    radius = settings.POLE_EXCLUSION_MHZ if pole_radius is None else pole_radius
    x = np.zeros(len(LINES))
    for li, offset in enumerate(line_offsets(atom)):
        if offset is None:
            continue
        detuning = delta + offset
        if abs(detuning) <= radius:
            resonance = atom.excited(LINES[li])
            raise PoleError('delta={} is within {} of the F\'={} resonance of {}'.format(
                delta, radius, resonance, atom), metadata={'resonance': resonance, 'line': LINES[li]})
        x[li] = 1.0 / detuning
    return x


def circular_numerators(elements):
    """Products of elements per line, shape (line, input, output, n, m)."""
    dim = elements.dim
    out = np.zeros((len(LINES), 2, 3, dim, dim))
    r, s, t = elements.r, elements.s, elements.t
    for i in range(dim):
        out[:, 0, 0, i, i] = r[:, i] * r[:, i]
        out[:, 1, 1, i, i] = s[:, i] * s[:, i]
        if i + 2 < dim:
            out[:, 0, 1, i + 2, i] = r[:, i] * s[:, i + 2]
        if i - 2 >= 0:
            out[:, 1, 0, i - 2, i] = s[:, i] * r[:, i - 2]
        if i + 1 < dim:
            out[:, 0, 2, i + 1, i] = r[:, i] * t[:, i + 1]
        if i - 1 >= 0:
            out[:, 1, 2, i - 1, i] = s[:, i] * t[:, i - 1]
    return out


def projected_numerators(elements, theta):
    """Drive-anchored numerators, shape (line, output, n, m), output per OUTPUTS."""
    c, s = math.cos(theta), math.sin(theta)
    circ = circular_numerators(elements)
    driven = c * circ[:, 0] + s * circ[:, 1]
    plus, minus, pi = driven[:, 0], driven[:, 1], driven[:, 2]
    return np.stack([c * plus + s * minus, s * plus - c * minus, pi, plus, minus], axis=1)


@dataclass(frozen=True)
class PolarizabilityTensor:
    """alpha^{nm}_{mu,parallel}; entries[mu, n, m] with m-index i <-> m = -F + i."""
    F: object
    theta: float
    delta: float
    entries: np.ndarray
    circular: np.ndarray

    @property
    def dim(self):
        return self.entries.shape[-1]

    def index(self, m):
        m = half(m)
        return (m.twice_value + self.F.twice_value) // 2

    def component(self, mu):
        return self.entries[OUTPUTS.index(mu) if isinstance(mu, str) else mu]

    def entry(self, mu, n, m):
        return self.component(mu)[self.index(n), self.index(m)]

    def circular_entry(self, input_pol, output_pol, n, m):
        block = self.circular[('plus', 'minus').index(input_pol), CIRCULAR_OUTPUTS.index(output_pol)]
        return block[self.index(n), self.index(m)]

    @property
    def normalizer_index(self):
        return (self.dim - 1) // 2 if self.F.is_integer else self.dim // 2

    @property
    def normalizer(self):
        k = self.normalizer_index
        return self.entries[PARALLEL, k, k]

    def distance_components(self):
        norm = self.normalizer
        if abs(norm) <= VANISHING_NORMALIZER * np.max(np.abs(self.entries[:3])):
            raise VanishingNormalizerError('alpha_parallel at the normalizing state vanishes for F={} at delta={}'.format(
                self.F, self.delta))
        off = ~np.eye(self.dim, dtype=bool)
        par_diag = np.diag(self.entries[PARALLEL])
        return {
            'perp_rayleigh': float(np.sum(np.diag(self.entries[PERPENDICULAR]) ** 2) / norm ** 2),
            'par_rayleigh': float(np.sum((par_diag - norm) ** 2) / norm ** 2),
            'raman_circ': float((np.sum(self.entries[PARALLEL][off] ** 2)
                                 + np.sum(self.entries[PERPENDICULAR][off] ** 2)) / norm ** 2),
            'raman_pi': float(np.sum(self.entries[PI] ** 2) / norm ** 2),
        }


def generalized_polarizability(atom, drive):
    elements = atom_elements(atom)
    x = inverse_detunings(atom, drive.delta, drive.pole_radius)
    entries = -np.einsum('l,lunm->unm', x, projected_numerators(elements, drive.theta))
    circular = -np.einsum('l,liunm->iunm', x, circular_numerators(elements))
    return PolarizabilityTensor(F=atom.F, theta=drive.theta, delta=drive.delta, entries=entries, circular=circular)


def _residual_scale(atom, x):
    squares = np.array([float(q) for q in atom_elements(atom).six_j_squares])
    return float(np.sum(squares * np.abs(x)))


@dataclass(frozen=True)
class ConditionResiduals:
    perp_residual: float
    parallel_residual: float
    raman_circ_residual: float
    raman_pi_scalar_residual: float

    def as_dict(self):
        return {
            'perp_residual': self.perp_residual,
            'parallel_residual': self.parallel_residual,
            'raman_circ_residual': self.raman_circ_residual,
            'raman_pi_scalar_residual': self.raman_pi_scalar_residual,
        }


def condition_residuals(atom, F, delta):
    """Scale-free left-hand sides of the three state-insensitivity conditions.

    perp: r^2 - s^2 summed over lines (linear in m, so the largest |value|).
    parallel: m^2 coefficient of the r^2 + s^2 sum.
    raman_circ: largest |sum r_m s_{m+2}/delta_l| over m.
    raman_pi_scalar: the pi-Raman sum at the stretched pair m = F-1 -> F, which
    is the m-independent part once the linear-in-m part is removed.
    """
    resolve_manifold(atom, F)
    elements = atom_elements(atom)
    x = inverse_detunings(atom, float(delta))
    scale = _residual_scale(atom, x)
    r, s, t = elements.r, elements.s, elements.t
    ms = elements.m_array

    perp = x @ (r ** 2 - s ** 2)
    par = x @ (r ** 2 + s ** 2)
    if elements.dim >= 3:
        parallel = np.polyfit(ms, par, 2)[0]
        circ = np.max(np.abs(x @ (r[:, :-2] * s[:, 2:])))
    else:
        parallel, circ = 0.0, 0.0
    if elements.dim >= 2:
        pi_scalar = x @ (r[:, -2] * t[:, -1])
    else:
        pi_scalar = 0.0

    return ConditionResiduals(perp_residual=float(np.max(np.abs(perp)) / scale),
                              parallel_residual=float(abs(parallel) / scale),
                              raman_circ_residual=float(circ / scale),
                              raman_pi_scalar_residual=float(abs(pi_scalar) / scale))


def magic_distance_components(atom, F, theta, delta):
    resolve_manifold(atom, F)
    return generalized_polarizability(atom, DriveConfig(theta, delta)).distance_components()


def magic_distance(atom, F, theta, delta):
    """M(F, delta): squared normalized Frobenius distance to the ideal tensor."""
    return sum(magic_distance_components(atom, F, theta, delta).values())


class MagicDistanceForm:
    """M and its components as quadratic forms in x = (1/delta_l).

    M_c(x) = x^T G_c x / (n . x)^2 with fixed 3x3 Gram matrices, so a whole
    grid of detunings costs a few matrix products.
    """

    def __init__(self, atom, theta):
        self.atom = atom
        self.theta = float(theta)
        elements = atom_elements(atom)
        numer = projected_numerators(elements, self.theta)
        k = elements.normalizer_index
        dim = elements.dim
        off = ~np.eye(dim, dtype=bool)
        diag = np.arange(dim)

        par_diag = numer[:, PARALLEL, diag, diag]
        self.normalizer = numer[:, PARALLEL, k, k].copy()
        vectors = {
            'perp_rayleigh': numer[:, PERPENDICULAR, diag, diag],
            'par_rayleigh': par_diag - self.normalizer[:, None],
            'raman_circ': np.concatenate([numer[:, PARALLEL][:, off], numer[:, PERPENDICULAR][:, off]], axis=1),
            'raman_pi': numer[:, PI].reshape(len(LINES), -1),
        }
        self.grams = {name: v @ v.T for name, v in vectors.items()}
        self.offsets = line_offsets(atom)

    def inverse_detunings(self, deltas, pole_radius=None):
        """Grid of x_l; rows within the pole radius are NaN."""
        radius = settings.POLE_EXCLUSION_MHZ if pole_radius is None else pole_radius
        deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
        x = np.zeros((deltas.size, len(LINES)))
        masked = np.zeros(deltas.size, dtype=bool)
        for li, offset in enumerate(self.offsets):
            if offset is None:
                continue
            detuning = deltas + offset
            near = np.abs(detuning) <= radius
            masked |= near
            with np.errstate(divide='ignore'):
                x[:, li] = np.where(near, 0.0, 1.0 / np.where(near, 1.0, detuning))
        x[masked] = np.nan
        return x

    def components(self, deltas, pole_radius=None):
        x = self.inverse_detunings(deltas, pole_radius)
        denom = (x @ self.normalizer) ** 2
        scale = np.sum(x * x, axis=1) * np.sum(self.normalizer ** 2)
        vanishing = denom <= (VANISHING_NORMALIZER ** 2) * scale
        denom = np.where(vanishing, np.nan, denom)
        return {name: np.einsum('kl,lp,kp->k', x, gram, x) / denom for name, gram in self.grams.items()}

    def total(self, deltas, pole_radius=None):
        return sum(self.components(deltas, pole_radius).values())

    def __call__(self, delta):
        return float(self.total(delta)[0])
