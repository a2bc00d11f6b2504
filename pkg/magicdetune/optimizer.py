"""Minimization of the magic distance M(F, delta) and component scans."""
import csv
import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from magicdetune import settings
from magicdetune.detunings import compute_detunings
from magicdetune.exceptions import CapabilityError, InvalidArgumentError
from magicdetune.polarizability import COMPONENTS, MagicDistanceForm, line_offsets, resolve_manifold

logger = logging.getLogger(__name__)

INTERIOR_MINIMUM = 'interior_minimum'
NO_INTERIOR_MINIMUM = 'no_interior_minimum'

SCAN_HEADER = ('delta_MHz', 'total', 'perp_rayleigh', 'par_rayleigh', 'raman_circ', 'raman_pi')


@dataclass(frozen=True)
class OptimizationResult:
    delta_opt: float
    m_value: float
    bracket: tuple
    status: str
    nearest_resonance: float = None
    grid_step: float = None

    @property
    def found(self):
        return self.status == INTERIOR_MINIMUM


def _require_capable(atom):
    if not atom.magic_capable:
        raise CapabilityError('{} is not magic-capable: {}'.format(atom, atom.capability_reason),
                              metadata={'species': atom.species, 'F': atom.F})


def search_bracket(detunings, atom, expansion=None):
    """Hull of the condition detunings widened by `expansion` of its width per side."""
    expansion = settings.OptimizerConfig.BRACKET_EXPANSION if expansion is None else expansion
    points = detunings.conditions
    lo, hi = min(points), max(points)
    width = hi - lo
    if width <= 0:
        width = max(abs(offset) for offset in line_offsets(atom) if offset)
    return lo - expansion * width, hi + expansion * width


def _grid(lo, hi):
    config = settings.OptimizerConfig
    n = max(config.GRID_MIN_POINTS, int(math.ceil((hi - lo) * config.GRID_DENSITY))) + 1
    return np.linspace(lo, hi, n)


def nearest_resonance(atom, delta):
    return min(abs(delta + offset) for offset in line_offsets(atom) if offset is not None)


def accepted_minimum(detunings, delta, value, max_value=None):
    """A magic detuning lies among the condition detunings and keeps M small."""
    max_value = settings.OptimizerConfig.MAX_MAGIC_DISTANCE if max_value is None else max_value
    points = detunings.conditions
    lo, hi = min(points), max(points)
    slack = settings.OptimizerConfig.HULL_SLACK * (hi - lo)
    return lo - slack <= delta <= hi + slack and value <= max_value


def optimize_detuning(atom, F=None, theta=None):
    resolve_manifold(atom, F)
    _require_capable(atom)
    theta = settings.DEFAULT_THETA if theta is None else float(theta)

    detunings = compute_detunings(atom)
    lo, hi = search_bracket(detunings, atom)
    grid = _grid(lo, hi)
    form = MagicDistanceForm(atom, theta)
    values = form.total(grid)
    values = np.where(np.isfinite(values), values, np.inf)
    step = float(grid[1] - grid[0])

    k = int(np.argmin(values))
    if k == 0 or k == grid.size - 1 or not np.isfinite(values[k]):
        logger.info('{}: no interior minimum of M in [{:.3f}, {:.3f}]'.format(atom, lo, hi))
        return OptimizationResult(None, None, (lo, hi), NO_INTERIOR_MINIMUM, grid_step=step)

    def objective(delta):
        value = form(delta)
        return value if math.isfinite(value) else math.inf

    best, best_value = float(grid[k]), float(values[k])
    if values[k - 1] > values[k] < values[k + 1]:
        scale = max(2 * abs(best), settings.OptimizerConfig.REFINE_TOL_MHZ)
        bracket = (float(grid[k - 1]), best, float(grid[k + 1]))
        try:
            refined = optimize.minimize_scalar(objective, bracket=bracket, method='golden',
                                               options={'xtol': settings.OptimizerConfig.REFINE_TOL_MHZ / scale})
        except ValueError as exc:
            logger.warning('{}: golden refinement skipped, keeping grid minimum: {}'.format(atom, exc))
        else:
            if refined.fun <= best_value:
                best, best_value = float(refined.x), float(refined.fun)

    if not accepted_minimum(detunings, best, best_value):
        logger.info('{}: minimum M={:.3e} at {:.3f} rejected, outside [{:.3f}, {:.3f}] or above {}'.format(
            atom, best_value, best, min(detunings.conditions), max(detunings.conditions),
            settings.OptimizerConfig.MAX_MAGIC_DISTANCE))
        return OptimizationResult(None, None, (lo, hi), NO_INTERIOR_MINIMUM, grid_step=step)

    logger.debug('{}: delta_opt={:.4f} M={:.3e} bracket=({:.3f}, {:.3f})'.format(atom, best, best_value, lo, hi))
    return OptimizationResult(best, best_value, (lo, hi), INTERIOR_MINIMUM,
                              nearest_resonance=nearest_resonance(atom, best), grid_step=step)


def characterize(atom, theta=None):
    """Condition detunings together with the optimized detuning."""
    detunings = compute_detunings(atom)
    result = optimize_detuning(atom, theta=theta)
    return replace(detunings, delta_opt=result.delta_opt, m_value=result.m_value, opt_status=result.status,
                   extras={'bracket': result.bracket, 'nearest_resonance': result.nearest_resonance})


@dataclass(frozen=True)
class MagicScan:
    theta: float
    deltas: np.ndarray
    total: np.ndarray
    components: dict

    def argmin(self, component='total'):
        values = self.total if component == 'total' else self.components[component]
        return float(self.deltas[int(np.nanargmin(values))])

    def rows(self):
        for i, delta in enumerate(self.deltas):
            yield (float(delta), float(self.total[i])) + tuple(float(self.components[c][i]) for c in COMPONENTS)

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(SCAN_HEADER)
        for row in self.rows():
            writer.writerow(['{:.6f}'.format(row[0])] + ['{:.9e}'.format(value) for value in row[1:]])

    def write_csv(self, path):
        with open(path, 'w', newline='') as stream:
            self.to_csv(stream)


def scan_magic_distance(atom, F, theta, lo, hi, n_points):
    resolve_manifold(atom, F)
    lo, hi = float(lo), float(hi)
    if isinstance(n_points, bool) or int(n_points) != n_points or n_points < 2:
        raise InvalidArgumentError('n_points must be an integer >= 2, got {!r}'.format(n_points))
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise InvalidArgumentError('Empty scan range [{}, {}]'.format(lo, hi))

    deltas = np.linspace(lo, hi, int(n_points))
    form = MagicDistanceForm(atom, theta)
    components = form.components(deltas)
    total = sum(components[name] for name in COMPONENTS)
    return MagicScan(theta=float(theta), deltas=deltas, total=total, components=components)


@dataclass(frozen=True)
class SensitivityResult:
    spread: float
    deltas: tuple
    smooth: bool


def _is_smooth(values):
    steps = np.sign(np.diff(values))
    steps = steps[steps != 0]
    return int(np.count_nonzero(np.diff(steps))) <= 1


def polarization_sensitivity(atom, F=None):
    """max |delta_opt(theta) - delta_opt(pi/4)| over the configured theta grid."""
    resolve_manifold(atom, F)
    _require_capable(atom)
    thetas = settings.OptimizerConfig.SENSITIVITY_THETAS
    deltas = []
    for theta in thetas:
        deltas.append((theta, optimize_detuning(atom, theta=theta).delta_opt))

    found = [delta for _, delta in deltas if delta is not None]
    reference = optimize_detuning(atom, theta=math.pi / 4).delta_opt
    if reference is None or len(found) != len(deltas):
        logger.warning('{}: optimizer found no minimum for some polarizations'.format(atom))
        return SensitivityResult(None, tuple(deltas), False)

    spread = max(abs(delta - reference) for delta in found)
    smooth = _is_smooth(found)
    if not smooth:
        logger.warning('{}: delta_opt varies non-monotonically with theta: {}'.format(atom, found))
    return SensitivityResult(spread, tuple(deltas), smooth)
