"""Condition detunings Delta_perp, Delta_parallel and Delta_pi.

Each condition is a weighted sum over the excited lines,

    sum_l w_l / (delta + zeta_l) = 0,

with exact rational weights taken from the dipole layer.  Clearing the
denominators gives a polynomial whose coefficients are assembled exactly in
rationals; the only inexact step is the square root of the discriminant.
"""
import logging
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from magicdetune import exceptions
from magicdetune.atomic_data import HyperfineConstants, dipole_limit_record
from magicdetune.dipole import LINES, DipoleKind, dipole_coupling
from magicdetune.polarizability import resolve_manifold
from magicdetune.wigner import HalfInt, half, triangle_ok, wigner_6j

logger = logging.getLogger(__name__)

TWO_ROOTS = 'two_roots'
SINGLE_ROOT = 'single_root'
DEGENERATE = 'degenerate'
NO_REAL_ROOT = 'no_real_root'
NO_ROOT = 'no_root'

DIPOLE_LIMIT_TOL = 1e-9


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p, q):
    size = max(len(p), len(q))
    p = [Fraction(0)] * (size - len(p)) + list(p)
    q = [Fraction(0)] * (size - len(q)) + list(q)
    return [a + b for a, b in zip(p, q)]


def condition_polynomial(weights, zetas):
    """Coefficients, highest power first, of sum_l w_l prod_{k != l}(delta + zeta_k).

    Lines with zero weight drop out, so a condition on two lines is linear.
    """
    active = [line for line in LINES if weights.get(line, 0) != 0]
    poly = [Fraction(0)] * max(len(active), 1)
    for line in active:
        term = [Fraction(weights[line])]
        for other in active:
            if other != line:
                term = _poly_mul(term, [Fraction(1), Fraction(zetas[other])])
        poly = _poly_add(poly, term)
    return tuple(poly)


def _decimal(value):
    return Decimal(value.numerator) / Decimal(value.denominator)


@dataclass(frozen=True)
class ConditionRoots:
    name: str
    roots: tuple
    status: str
    coefficients: tuple
    flagged: bool = False

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, item):
        return self.roots[item]

    @property
    def value(self):
        if len(self.roots) != 1:
            raise exceptions.InvalidArgumentError('{} condition has {} roots, not one'.format(
                self.name, len(self.roots)))
        return self.roots[0]

    def __float__(self):
        return self.value

    def nearest(self, target):
        if not self.roots:
            raise exceptions.InvalidArgumentError('{} condition has no real root'.format(self.name))
        return min(self.roots, key=lambda root: (abs(root - target), root))

    @property
    def quadratic(self):
        padded = (Fraction(0),) * (3 - len(self.coefficients)) + tuple(self.coefficients)
        return dict(zip('abc', padded[-3:]))


def solve_polynomial(name, coefficients):
    coefficients = tuple(Fraction(c) for c in coefficients)
    leading_zero = False
    while len(coefficients) > 1 and coefficients[0] == 0:
        leading_zero = True
        coefficients = coefficients[1:]

    with localcontext() as ctx:
        ctx.prec = 50
        if len(coefficients) == 3:
            a, b, c = coefficients
            disc = b * b - 4 * a * c
            if disc < 0:
                return ConditionRoots(name, (), NO_REAL_ROOT, coefficients)
            root_disc = _decimal(disc).sqrt()
            if b == 0 and c == 0:
                roots = (0.0, 0.0)
            else:
                sign = 1 if b >= 0 else -1
                q = -(_decimal(b) + sign * root_disc) / 2
                roots = (float(q / _decimal(a)), float(_decimal(c) / q)) if q != 0 else (0.0, 0.0)
            return ConditionRoots(name, tuple(sorted(roots)), TWO_ROOTS, coefficients)
        if len(coefficients) == 2:
            b, c = coefficients
            status = DEGENERATE if leading_zero else SINGLE_ROOT
            return ConditionRoots(name, (float(-c / b),), status, coefficients)
    return ConditionRoots(name, (), NO_ROOT, coefficients)


class ConditionManager:
    CONDITIONS = {}

    @classmethod
    def register_condition(cls, target):
        name = getattr(target, 'NAME', target.__name__)
        cls.CONDITIONS[name] = target
        return target

    @classmethod
    def get_condition(cls, name):
        condition = cls.CONDITIONS.get(name)
        if condition is None:
            raise exceptions.InvalidArgumentError('Unknown condition {!r}'.format(name))
        return condition()


class BaseCondition:
    NAME = ''

    def weights(self, atom):
        raise NotImplementedError()

    def solve(self, atom):
        weights = {line: w for line, w in self.weights(atom).items() if line in atom.lines}
        zetas = {line: atom.zeta(line) for line in atom.lines}
        roots = solve_polynomial(self.NAME, condition_polynomial(weights, zetas))
        logger.debug('{} condition for {}: {} {}'.format(self.NAME, atom, roots.status, roots.roots))
        return roots


def _square(kind, line, m, atom):
    return dipole_coupling(kind, m, atom.F, atom.F + line, atom.I, atom.J, atom.Jp).square


def _intensity(line, m, atom):
    return _square(DipoleKind.SIGMA_PLUS, line, m, atom) + _square(DipoleKind.SIGMA_MINUS, line, m, atom)


@ConditionManager.register_condition
class PerpendicularCondition(BaseCondition):
    """Preserved ellipticity: sum_l (r^2 - s^2)/delta_l = 0.

    r^2 - s^2 is proportional to m on every line, so the stretched state m=F
    supplies the weights.
    """
    NAME = 'perp'

    def weights(self, atom):
        m = atom.F
        return {line: _square(DipoleKind.SIGMA_PLUS, line, m, atom) - _square(DipoleKind.SIGMA_MINUS, line, m, atom)
                for line in LINES if atom.F + line >= 0}


@ConditionManager.register_condition
class ParallelCondition(BaseCondition):
    """Equal dipole amplitude: the m^2 part of sum_l (r^2 + s^2)/delta_l vanishes."""
    NAME = 'parallel'

    def weights(self, atom):
        if atom.F < 1:
            raise exceptions.InvalidArgumentError('{} has no m^2 dependence to cancel'.format(atom))
        F = atom.F
        weights = {}
        for line in LINES:
            if atom.F + line < 0:
                continue
            top, middle, bottom = (_intensity(line, m, atom) for m in (F, F - 1, F - 2))
            weights[line] = (top - 2 * middle + bottom) / 2
        return weights


@ConditionManager.register_condition
class PiCondition(BaseCondition):
    """pi-Raman m-independent part, from the stretched pair m = F-1 -> F."""
    NAME = 'pi'

    def weights(self, atom):
        P, Q, _ = six_j_squares(atom.J, atom.Jp, atom.F, atom.I)
        return {1: -P, 0: Q, -1: Fraction(0)}


def six_j_squares(J, Jp, F, I):
    """<F+1>^2, <F>^2, <F-1>^2 as exact rationals."""
    F = half(F)
    squares = []
    for line in LINES:
        Fp = F + line
        squares.append(Fraction(0) if Fp < 0 else wigner_6j(J, Jp, 1, Fp, F, I).square)
    return tuple(squares)


def _require_three_lines(atom):
    if not atom.three_line:
        raise exceptions.InvalidArgumentError(
            '{} couples to lines {}; three lines are required (use solve_d1 for two-line records)'.format(
                atom, list(atom.lines)))


def solve_delta_perp(atom, F=None):
    resolve_manifold(atom, F)
    _require_three_lines(atom)
    return ConditionManager.get_condition(PerpendicularCondition.NAME).solve(atom)


def solve_delta_parallel(atom, F=None):
    """Single root when the delta^2 coefficient vanishes; otherwise both roots, flagged."""
    resolve_manifold(atom, F)
    _require_three_lines(atom)
    roots = ConditionManager.get_condition(ParallelCondition.NAME).solve(atom)
    if roots.status == TWO_ROOTS:
        logger.warning('{}: parallel condition is quadratic, returning both roots'.format(atom))
        return ConditionRoots(roots.name, roots.roots, roots.status, roots.coefficients, flagged=True)
    if roots.status == DEGENERATE:
        return ConditionRoots(roots.name, roots.roots, SINGLE_ROOT, roots.coefficients)
    return roots


def solve_delta_pi(atom, F=None):
    resolve_manifold(atom, F)
    _require_three_lines(atom)
    P, Q, _ = six_j_squares(atom.J, atom.Jp, atom.F, atom.I)
    if P == Q:
        raise exceptions.SingularFormulaError('<F+1>^2 equals <F>^2 for {}'.format(atom))
    root = atom.zeta_plus * Q / (P - Q)
    return ConditionRoots(PiCondition.NAME, (float(root),), SINGLE_ROOT, (P - Q, -atom.zeta_plus * Q))


@dataclass(frozen=True)
class D1Detunings:
    delta_perp: float
    delta_parallel: Optional[float]
    published_formula: bool = False

    @property
    def coincide(self):
        if self.delta_parallel is None:
            return False
        scale = max(abs(self.delta_perp), abs(self.delta_parallel), 1.0)
        return abs(self.delta_perp - self.delta_parallel) <= DIPOLE_LIMIT_TOL * scale


def published_d1_parallel(atom):
    """Printed closed form of the two-line Delta_parallel.

    Its denominator carries (2F+1)<F>^2 where the m^2 weights give (4F+2)<F>^2,
    so it stays finite where the exact condition has no root.
    """
    P, Q, R = six_j_squares(atom.J, atom.Jp, atom.F, atom.I)
    F = atom.F.value
    if 1 in atom.lines:
        zeta, denominator = atom.zeta_plus, 2 * F * P - (2 * F + 1) * Q
    else:
        zeta, denominator = atom.zeta_minus, (2 * F + 2) * R - (2 * F + 1) * Q
    if denominator == 0:
        raise exceptions.SingularFormulaError('closed-form D1 parallel detuning of {} is singular'.format(atom))
    return float(zeta * (4 * F + 2) * Q / denominator)


def solve_d1(atom, F=None):
    """Delta_perp and Delta_parallel of a two-line J'=J record.

    For J=1/2 the m^2 weights of the two lines cancel exactly and the parallel
    condition has no finite root; the printed closed form is returned instead,
    with published_formula set.
    """
    resolve_manifold(atom, F)
    if atom.J != atom.Jp or len(atom.lines) != 2 or 0 not in atom.lines:
        raise exceptions.InvalidArgumentError(
            '{} is not a two-line J\'=J record (J={}, Jp={}, lines {})'.format(atom, atom.J, atom.Jp, list(atom.lines)))
    perp = ConditionManager.get_condition(PerpendicularCondition.NAME).solve(atom)
    if len(perp) != 1:
        raise exceptions.SingularFormulaError('perp condition of {} has no single root'.format(atom))
    if atom.F < 1:
        return D1Detunings(delta_perp=perp.value, delta_parallel=None)
    roots = ConditionManager.get_condition(ParallelCondition.NAME).solve(atom)
    if len(roots) == 1:
        return D1Detunings(delta_perp=perp.value, delta_parallel=roots.value)
    parallel = published_d1_parallel(atom)
    logger.warning('{}: parallel condition has no finite root ({}); using the printed closed form {:.4f}'.format(
        atom, roots.status, parallel))
    return D1Detunings(delta_perp=perp.value, delta_parallel=parallel, published_formula=True)


@dataclass(frozen=True)
class MagicExistence:
    exists: bool
    residual: Fraction

    def __bool__(self):
        return self.exists


def magic_exists(J, Jp, F, I):
    """Whether the delta^2 coefficient D of the parallel condition vanishes."""
    J, Jp, F, I = (half(x) for x in (J, Jp, F, I))
    if Jp != J + 1:
        raise exceptions.UnsupportedCaseError('Only Jp = J+1 is classified (J={}, Jp={})'.format(J, Jp))
    if not triangle_ok(I.twice_value, J.twice_value, F.twice_value):
        raise exceptions.InvalidArgumentError('F={} is not in |I-J|..I+J for I={}, J={}'.format(F, I, J))
    P, Q, R = six_j_squares(J, Jp, F, I)
    f = F.value
    residual = 2 * f * P - (4 * f + 2) * Q + (2 * f + 2) * R
    return MagicExistence(residual == 0, residual)


def magic_manifolds(I, J):
    """Every F = I+J-n whose Jp=J+1 line admits a single parallel root."""
    I, J = half(I), half(J)
    low, high = abs(I - J), I + J
    return [F for F in (HalfInt.from_twice(t) for t in range(high.twice_value, low.twice_value - 1, -2))
            if magic_exists(J, J + 1, F, I).exists]


@dataclass(frozen=True)
class DipoleLimitDetunings:
    a_hfs: Fraction
    common: float
    discarded_perp: float
    delta_perp: tuple
    delta_parallel: float
    delta_pi: float

    @property
    def ratio(self):
        return self.common / float(self.a_hfs)


def dipole_limit_detunings(a_hfs, F, I, J, Jp):
    existence = magic_exists(J, Jp, F, I)
    if not existence:
        raise exceptions.CapabilityError('No single parallel root for J={}, Jp={}, F={}, I={} (D={})'.format(
            J, Jp, F, I, existence.residual))
    constants = HyperfineConstants(a_hfs)
    atom = dipole_limit_record(constants, F, I, J, Jp)
    perp = solve_delta_perp(atom)
    parallel = solve_delta_parallel(atom).value
    pi = solve_delta_pi(atom).value

    P, Q, _ = six_j_squares(atom.J, atom.Jp, atom.F, atom.I)
    common = float(-(atom.F.value + 1) * Q / (P - Q) * constants.a_hfs)
    nearest = perp.nearest(parallel)
    discarded = [root for root in perp.roots if root != nearest] or [nearest]

    scale = abs(common)
    for label, value in (('perp', nearest), ('parallel', parallel), ('pi', pi)):
        if abs(value - common) > DIPOLE_LIMIT_TOL * scale:
            raise exceptions.InternalConsistencyError(
                'Dipole limit {}: {} root {} departs from common root {}'.format(atom, label, value, common))
    return DipoleLimitDetunings(a_hfs=constants.a_hfs, common=common, discarded_perp=discarded[0],
                                delta_perp=tuple(perp.roots), delta_parallel=parallel, delta_pi=pi)


@dataclass(frozen=True)
class DetuningSet:
    atom: object
    delta_perp: tuple
    delta_parallel: float
    delta_pi: float
    delta_perp_nearest: float
    quadratic: dict
    parallel_flagged: bool = False
    delta_opt: float = None
    m_value: float = None
    opt_status: str = None
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def conditions(self):
        return tuple(self.delta_perp) + (self.delta_parallel, self.delta_pi)


def compute_detunings(atom, F=None):
    resolve_manifold(atom, F)
    if not atom.magic_capable:
        raise exceptions.CapabilityError('{} is not magic-capable: {}'.format(atom, atom.capability_reason))
    perp = solve_delta_perp(atom)
    if len(perp) != 2:
        raise exceptions.SingularFormulaError('{}: perpendicular condition returned {}'.format(atom, perp.status))
    parallel_roots = solve_delta_parallel(atom)
    pi = solve_delta_pi(atom).value
    if parallel_roots.flagged:
        parallel = parallel_roots.nearest(pi)
    else:
        parallel = parallel_roots.value
    return DetuningSet(atom=atom,
                       delta_perp=tuple(perp.roots),
                       delta_parallel=parallel,
                       delta_pi=pi,
                       delta_perp_nearest=perp.nearest(parallel),
                       quadratic=perp.quadratic,
                       parallel_flagged=parallel_roots.flagged)


@dataclass(frozen=True)
class DiagnosticPoint:
    species: str
    F: object
    b_over_a: float
    normalized_difference: float
    upper_manifold: bool


def quadrupole_diagnostic(registry):
    """|delta_perp(nearest) - delta_parallel| / |delta_parallel| against |B/A|."""
    points = []
    for atom in registry:
        if not atom.magic_capable or atom.b_over_a is None:
            continue
        detunings = compute_detunings(atom)
        difference = abs(detunings.delta_perp_nearest - detunings.delta_parallel) / abs(detunings.delta_parallel)
        points.append(DiagnosticPoint(species=atom.species, F=atom.F, b_over_a=abs(float(atom.b_over_a)),
                                      normalized_difference=difference, upper_manifold=atom.F == atom.I + atom.J))
    return points
