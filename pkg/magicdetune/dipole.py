"""Dipole matrix elements r, s, t between a ground manifold F and excited F'.

Reduced units: the reduced matrix element together with the sqrt((2F+1)(2J+1))
factor is set to one, so

    e_q(m, F, F') = (-1)^(m-F) sqrt(2F'+1) {J J' 1; F' F I} (F 1 F'; m q -m-q)

with q = +1, -1, 0 for r, s, t.  The phase (-1)^(m-F) differs from (-1)^m by a
constant per manifold and keeps every element real for half-integer F.
"""
import enum
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from magicdetune.exceptions import InvalidArgumentError
from magicdetune.wigner import HalfInt, ZERO, CouplingValue, half, wigner_3j, wigner_6j

logger = logging.getLogger(__name__)

# Order of the excited lines F' = F+1, F, F-1 everywhere in the package.
LINES = (1, 0, -1)


class DipoleKind(enum.Enum):
    SIGMA_PLUS = 'r'
    SIGMA_MINUS = 's'
    PI = 't'

    @property
    def q(self):
        return {'r': 1, 's': -1, 't': 0}[self.value]

    @classmethod
    def parse(cls, kind):
        if isinstance(kind, cls):
            return kind
        aliases = {
            'r': cls.SIGMA_PLUS, 'sigma_plus': cls.SIGMA_PLUS, '+': cls.SIGMA_PLUS,
            's': cls.SIGMA_MINUS, 'sigma_minus': cls.SIGMA_MINUS, '-': cls.SIGMA_MINUS,
            't': cls.PI, 'pi': cls.PI, '0': cls.PI,
        }
        try:
            return aliases[str(kind).lower()]
        except KeyError:
            raise InvalidArgumentError('Unknown dipole kind {!r}'.format(kind))


def dipole_coupling(kind, m, F, Fp, I, J, Jp):
    """Exact signed-square dipole element."""
    kind = DipoleKind.parse(kind)
    m, F, Fp, I, J, Jp = (half(x) for x in (m, F, Fp, I, J, Jp))
    if (m.twice_value - F.twice_value) % 2:
        raise InvalidArgumentError('m={} has the wrong parity for F={}'.format(m, F))
    if Fp < 0 or (Fp.twice_value - F.twice_value) % 2 or abs(Fp.twice_value - F.twice_value) > 2:
        return ZERO

    q = HalfInt(kind.q)
    six = wigner_6j(J, Jp, 1, Fp, F, I)
    if six.is_zero:
        return ZERO
    three = wigner_3j(F, 1, Fp, m, q, -m - q)
    if three.is_zero:
        return ZERO

    phase = -1 if ((m.twice_value - F.twice_value) // 2) % 2 else 1
    return CouplingValue(phase * six.sign * three.sign, (Fp.twice_value + 1) * six.square * three.square)


def dipole_element(kind, m, F, Fp, I, J, Jp):
    return float(dipole_coupling(kind, m, F, Fp, I, J, Jp))


def dipole_row(F, m, I, J, Jp):
    F = half(F)
    row = {}
    for line in LINES:
        Fp = F + line
        if Fp < 0:
            continue
        for kind in DipoleKind:
            row[(kind, Fp)] = dipole_element(kind, m, F, Fp, I, J, Jp)
    return row


@dataclass(frozen=True)
class ManifoldElements:
    """Every r, s, t element of one ground manifold, indexed [line, m-index].

    Line index follows LINES; m-index i stands for m = -F + i.  Lines that do
    not couple hold zeros.
    """
    F: HalfInt
    I: HalfInt
    J: HalfInt
    Jp: HalfInt
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray
    six_j_squares: tuple

    @property
    def dim(self):
        return self.F.twice_value + 1

    @property
    def m_values(self):
        return self.F.projections()

    @property
    def m_array(self):
        return np.array([float(m) for m in self.m_values])

    @property
    def normalizer_index(self):
        """Index of m=0, or of m=1/2 for half-integer F."""
        return (self.dim - 1) // 2 if self.F.is_integer else self.dim // 2

    def index(self, m):
        m = half(m)
        i = (m.twice_value + self.F.twice_value) // 2
        if (m.twice_value + self.F.twice_value) % 2 or not 0 <= i < self.dim:
            raise InvalidArgumentError('m={} is not a projection of F={}'.format(m, self.F))
        return i

    def element(self, kind, line, m):
        kind = DipoleKind.parse(kind)
        return getattr(self, kind.value)[LINES.index(line), self.index(m)]


@lru_cache(maxsize=1024)
def _manifold_elements(twice_f, twice_i, twice_j, twice_jp):
    F, I, J, Jp = (HalfInt.from_twice(t) for t in (twice_f, twice_i, twice_j, twice_jp))
    dim = twice_f + 1
    arrays = {kind: np.zeros((len(LINES), dim)) for kind in DipoleKind}
    squares = []
    for li, line in enumerate(LINES):
        Fp = F + line
        if Fp < 0:
            squares.append(ZERO.square)
            continue
        squares.append(wigner_6j(J, Jp, 1, Fp, F, I).square)
        for i, m in enumerate(F.projections()):
            for kind in DipoleKind:
                arrays[kind][li, i] = dipole_element(kind, m, F, Fp, I, J, Jp)
    for array in arrays.values():
        array.setflags(write=False)
    return ManifoldElements(F, I, J, Jp,
                            arrays[DipoleKind.SIGMA_PLUS], arrays[DipoleKind.SIGMA_MINUS], arrays[DipoleKind.PI],
                            tuple(squares))


def manifold_elements(F, I, J, Jp):
    F, I, J, Jp = (half(x) for x in (F, I, J, Jp))
    return _manifold_elements(F.twice_value, I.twice_value, J.twice_value, Jp.twice_value)


def atom_elements(atom):
    return manifold_elements(atom.F, atom.I, atom.J, atom.Jp)
