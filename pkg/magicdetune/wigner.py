"""Exact Wigner 3-j and 6-j symbols from the Racah sums.

Symbols are returned as :class:`CouplingValue`, a sign together with the exact
rational square, so squares and products of symbols stay exact all the way up
to the detuning solvers.
"""
import logging
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from magicdetune import settings
from magicdetune.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)


def _twice(value):
    if isinstance(value, HalfInt):
        return value.twice_value
    if isinstance(value, bool):
        raise InvalidArgumentError('Boolean is not an angular momentum: {!r}'.format(value))
    if isinstance(value, numbers.Integral):
        return 2 * int(value)
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidArgumentError('Cannot parse half-integer from {!r}'.format(value))
    if isinstance(value, numbers.Rational):
        doubled = 2 * Fraction(value)
        if doubled.denominator != 1:
            raise InvalidArgumentError('{} is not a multiple of 1/2'.format(value))
        return int(doubled)
    if isinstance(value, numbers.Real):
        doubled = 2 * float(value)
        if not math.isfinite(doubled) or doubled != round(doubled):
            raise InvalidArgumentError('{} is not a multiple of 1/2'.format(value))
        return int(round(doubled))
    raise InvalidArgumentError('Unsupported angular momentum type: {!r}'.format(value))


@total_ordering
class HalfInt:
    """An integer or half-integer quantum number, stored as twice its value."""
    __slots__ = ('twice_value',)

    def __init__(self, value=0):
        object.__setattr__(self, 'twice_value', _twice(value))

    @classmethod
    def from_twice(cls, twice_value):
        if isinstance(twice_value, bool) or not isinstance(twice_value, numbers.Integral):
            raise InvalidArgumentError('twice_value must be an integer, got {!r}'.format(twice_value))
        obj = cls.__new__(cls)
        object.__setattr__(obj, 'twice_value', int(twice_value))
        return obj

    def __setattr__(self, key, value):
        raise AttributeError('HalfInt is immutable')

    @property
    def value(self):
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self):
        return self.twice_value % 2 == 0

    def projections(self):
        if self.twice_value < 0:
            raise InvalidArgumentError('Projections of negative {} requested'.format(self))
        return [HalfInt.from_twice(t) for t in range(-self.twice_value, self.twice_value + 1, 2)]

    def __float__(self):
        return self.twice_value / 2

    def __int__(self):
        if not self.is_integer:
            raise ValueError('{} is not an integer'.format(self))
        return self.twice_value // 2

    def __index__(self):
        return self.__int__()

    def __neg__(self):
        return HalfInt.from_twice(-self.twice_value)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice_value))

    def __add__(self, other):
        try:
            return HalfInt.from_twice(self.twice_value + _twice(other))
        except InvalidArgumentError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return HalfInt.from_twice(self.twice_value - _twice(other))
        except InvalidArgumentError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return HalfInt.from_twice(_twice(other) - self.twice_value)
        except InvalidArgumentError:
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice_value == other.twice_value
        if isinstance(other, numbers.Real):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.twice_value < other.twice_value
        if isinstance(other, numbers.Real):
            return self.value < other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return 'HalfInt({})'.format(self)

    def __str__(self):
        if self.is_integer:
            return str(self.twice_value // 2)
        return '{}/2'.format(self.twice_value)


def half(value):
    return value if isinstance(value, HalfInt) else HalfInt(value)


@dataclass(frozen=True)
class CouplingValue:
    sign: int
    square: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise InvalidArgumentError('sign must be -1, 0 or +1, got {}'.format(self.sign))
        square = Fraction(self.square)
        if square < 0:
            raise InvalidArgumentError('square must be nonnegative, got {}'.format(square))
        if (square == 0) != (self.sign == 0):
            raise InvalidArgumentError('sign {} inconsistent with square {}'.format(self.sign, square))
        object.__setattr__(self, 'square', square)

    @classmethod
    def from_signed_square(cls, signed_square):
        signed_square = Fraction(signed_square)
        if signed_square == 0:
            return ZERO
        return cls(1 if signed_square > 0 else -1, abs(signed_square))

    @property
    def signed_square(self):
        return self.sign * self.square

    @property
    def is_zero(self):
        return self.sign == 0

    def __float__(self):
        if self.sign == 0:
            return 0.0
        return self.sign * math.sqrt(self.square)

    def __neg__(self):
        return CouplingValue(-self.sign, self.square)

    def __mul__(self, other):
        if isinstance(other, CouplingValue):
            return CouplingValue(self.sign * other.sign, self.square * other.square)
        if isinstance(other, numbers.Integral) and other in (-1, 1):
            return CouplingValue(self.sign * int(other), self.square)
        return NotImplemented

    __rmul__ = __mul__


ZERO = CouplingValue(0, Fraction(0))


def triangle_ok(ta, tb, tc):
    """Triangle rule on doubled angular momenta, including integer perimeter."""
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _check_magnitude(twice_value):
    if twice_value < 0:
        raise InvalidArgumentError('Angular momentum must be nonnegative, got 2j={}'.format(twice_value))
    if twice_value > settings.MAX_TWICE_J:
        raise InvalidArgumentError('2j={} exceeds the supported cap {}'.format(twice_value, settings.MAX_TWICE_J))


def _check_projection(twice_j, twice_m):
    if (twice_j - twice_m) % 2:
        raise InvalidArgumentError('Projection 2m={} has the wrong parity for 2j={}'.format(twice_m, twice_j))


def _delta_squared(ta, tb, tc):
    f = math.factorial
    return Fraction(f((ta + tb - tc) // 2) * f((ta - tb + tc) // 2) * f((-ta + tb + tc) // 2),
                    f((ta + tb + tc) // 2 + 1))


def _from_sum(prefactor_square, phase, total):
    if total == 0:
        return ZERO
    sign = phase * (1 if total > 0 else -1)
    return CouplingValue(sign, prefactor_square * total * total)


@lru_cache(maxsize=65536)
def _three_j(t1, t2, t3, tm1, tm2, tm3):
    if abs(tm1) > t1 or abs(tm2) > t2 or abs(tm3) > t3:
        return ZERO
    if tm1 + tm2 + tm3 != 0 or not triangle_ok(t1, t2, t3):
        return ZERO

    f = math.factorial
    prefactor = _delta_squared(t1, t2, t3)
    for tj, tm in ((t1, tm1), (t2, tm2), (t3, tm3)):
        prefactor *= f((tj + tm) // 2) * f((tj - tm) // 2)

    kmin = max(0, (t2 - t3 - tm1) // 2, (t1 - t3 + tm2) // 2)
    kmax = min((t1 + t2 - t3) // 2, (t1 - tm1) // 2, (t2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        denominator = (f(k) * f((t3 - t2 + tm1) // 2 + k) * f((t3 - t1 - tm2) // 2 + k)
                       * f((t1 + t2 - t3) // 2 - k) * f((t1 - tm1) // 2 - k) * f((t2 + tm2) // 2 - k))
        total += Fraction((-1) ** k, denominator)

    phase = -1 if ((t1 - t2 - tm3) // 2) % 2 else 1
    return _from_sum(prefactor, phase, total)


@lru_cache(maxsize=65536)
def _six_j(t1, t2, t3, t4, t5, t6):
    triads = ((t1, t2, t3), (t1, t5, t6), (t4, t2, t6), (t4, t5, t3))
    if not all(triangle_ok(*triad) for triad in triads):
        return ZERO

    f = math.factorial
    prefactor = Fraction(1)
    for triad in triads:
        prefactor *= _delta_squared(*triad)

    alphas = [sum(triad) // 2 for triad in triads]
    betas = [(t1 + t2 + t4 + t5) // 2, (t2 + t3 + t5 + t6) // 2, (t3 + t1 + t6 + t4) // 2]
    total = Fraction(0)
    for t in range(max(alphas), min(betas) + 1):
        denominator = 1
        for a in alphas:
            denominator *= f(t - a)
        for b in betas:
            denominator *= f(b - t)
        total += Fraction((-1) ** t * f(t + 1), denominator)

    return _from_sum(prefactor, 1, total)


def wigner_3j(j1, j2, j3, m1, m2, m3):
    """(j1 j2 j3; m1 m2 m3) by the general Racah sum.

    Projections outside |m| <= j and broken selection rules give zero; negative
    magnitudes and projections of the wrong parity are rejected.
    """
    tj = [half(j).twice_value for j in (j1, j2, j3)]
    tm = [half(m).twice_value for m in (m1, m2, m3)]
    for t, m in zip(tj, tm):
        _check_magnitude(t)
        _check_projection(t, m)
    return _three_j(*tj, *tm)


def wigner_6j(j1, j2, j3, j4, j5, j6):
    """{j1 j2 j3; j4 j5 j6} by the Racah single sum; zero if any triad fails."""
    tj = [half(j).twice_value for j in (j1, j2, j3, j4, j5, j6)]
    for t in tj:
        _check_magnitude(t)
    return _six_j(*tj)
