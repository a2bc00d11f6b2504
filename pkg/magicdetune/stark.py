"""ac Stark shifts of the Zeeman states and their m-polynomial decomposition.

    dE(m) = sum_l [(r^2 + s^2) + (cos^2 theta - sin^2 theta)(r^2 - s^2)] |E0|^2 / delta_l

which equals -2 alpha^{mm}_{par,par} |E0|^2 with unit-norm circular drive
vectors.
"""
import logging
from dataclasses import dataclass

import numpy as np

from magicdetune.dipole import atom_elements
from magicdetune.exceptions import InternalConsistencyError, InvalidArgumentError
from magicdetune.polarizability import DriveConfig, inverse_detunings, resolve_manifold

logger = logging.getLogger(__name__)

FIT_TOLERANCE = 1e-12


def _validate_intensity(intensity):
    intensity = float(intensity)
    if not intensity >= 0:
        raise InvalidArgumentError('intensity must be >= 0, got {}'.format(intensity))
    return intensity


def stark_shifts(atom, F, theta, delta, intensity=1.0):
    """Shift of every Zeeman state, ordered m = -F..F."""
    resolve_manifold(atom, F)
    intensity = _validate_intensity(intensity)
    drive = DriveConfig(theta, delta)
    elements = atom_elements(atom)
    x = inverse_detunings(atom, drive.delta, drive.pole_radius)
    r2, s2 = elements.r ** 2, elements.s ** 2
    ellipticity = np.cos(drive.theta) ** 2 - np.sin(drive.theta) ** 2
    return intensity * (x @ ((r2 + s2) + ellipticity * (r2 - s2)))


def ac_stark_shift(atom, F, m, theta, delta, intensity):
    shifts = stark_shifts(atom, F, theta, delta, intensity)
    return float(shifts[atom_elements(atom).index(m)])


@dataclass(frozen=True)
class StarkDecomposition:
    scalar: float
    vector_coeff: float
    tensor_coeff: float
    fit_residual: float
    scale: float
    m_spread: float

    def normalized(self):
        return (self.scalar / self.scale, self.vector_coeff / self.scale, self.tensor_coeff / self.scale)


def stark_decompose(atom, F, theta, delta):
    """Fit dE(m) per unit intensity to c0 + c1 m + c2 m^2."""
    shifts = stark_shifts(atom, F, theta, delta, 1.0)
    elements = atom_elements(atom)
    ms = elements.m_array
    degree = min(2, elements.dim - 1)
    coeffs = np.polyfit(ms, shifts, degree)[::-1]
    coeffs = np.concatenate([coeffs, np.zeros(3 - coeffs.size)])

    scale = float(np.max(np.abs(shifts)))
    fitted = coeffs[0] + coeffs[1] * ms + coeffs[2] * ms ** 2
    residual = float(np.max(np.abs(fitted - shifts)) / scale) if scale else 0.0
    if residual > FIT_TOLERANCE:
        raise InternalConsistencyError('Stark shift of {} is not quadratic in m (residual {:.2e})'.format(
            atom, residual))

    mean = float(np.mean(shifts))
    spread = float((np.max(shifts) - np.min(shifts)) / abs(mean)) if mean else float('inf')
    return StarkDecomposition(scalar=float(coeffs[0]), vector_coeff=float(coeffs[1]), tensor_coeff=float(coeffs[2]),
                              fit_residual=residual, scale=scale, m_spread=spread)
