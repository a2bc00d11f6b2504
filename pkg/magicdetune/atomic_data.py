"""Hyperfine line records, the atom table file format and the registry.

A record describes one ground hyperfine manifold F of a D-line: the excited
splittings zeta_{+1} = w_F - w_{F+1} and zeta_{-1} = w_F - w_{F-1}, in 2pi*MHz,
are the primary inputs.  B/A is kept only as a diagnostic.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from decimal import Decimal, localcontext
from fractions import Fraction

from marshmallow import Schema, fields, validate, ValidationError, post_load

from magicdetune import exceptions, tables
from magicdetune.wigner import HalfInt, half, triangle_ok
from utils import Singleton

logger = logging.getLogger(__name__)

FILE_HEADER = 'magicdetune-atoms v1'
FILE_KEYS = ('species', 'twoI', 'twoJ', 'twoJp', 'twoF', 'zeta_plus_MHz', 'zeta_minus_MHz', 'b_over_a', 'source')
LINES = (1, 0, -1)


def to_fraction(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise exceptions.InvalidArgumentError('Non-finite frequency {}'.format(value))
        return Fraction(repr(value))
    try:
        return Fraction(value)
    except (TypeError, ValueError, ArithmeticError):
        raise exceptions.InvalidArgumentError('Cannot read {!r} as an exact number'.format(value))


def format_fraction(value):
    """Exact decimal text of a Fraction with a terminating expansion."""
    if value is None:
        return None
    with localcontext() as ctx:
        ctx.prec = 60
        return str(Decimal(value.numerator) / Decimal(value.denominator))


@dataclass(frozen=True)
class HyperfineConstants:
    a_hfs: Fraction
    b_hfs: Fraction = None

    def __post_init__(self):
        object.__setattr__(self, 'a_hfs', to_fraction(self.a_hfs))
        object.__setattr__(self, 'b_hfs', to_fraction(self.b_hfs))


def hyperfine_shift(a_hfs, Fp, I, J):
    """Magnetic-dipole energy of level F': A/2 [F'(F'+1) - I(I+1) - J(J+1)]."""
    a_hfs = to_fraction(a_hfs)
    Fp, I, J = half(Fp).value, half(I).value, half(J).value
    return a_hfs / 2 * (Fp * (Fp + 1) - I * (I + 1) - J * (J + 1))


def zeta_from_dipole_constant(c, F):
    if c.b_hfs is not None:
        raise exceptions.InvalidArgumentError('Quadrupole splittings are not synthesized; pass measured zeta instead')
    if c.a_hfs == 0:
        raise exceptions.InvalidArgumentError('a_hfs must be nonzero to synthesize splittings')
    F = half(F).value
    return -c.a_hfs * (F + 1), c.a_hfs * F


@dataclass(frozen=True)
class AtomRecord:
    species: str
    I: HalfInt
    J: HalfInt
    Jp: HalfInt
    F: HalfInt
    zeta_plus: Fraction = None
    zeta_minus: Fraction = None
    b_over_a: Fraction = None
    source: str = ''
    lines: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ('I', 'J', 'Jp', 'F'):
            object.__setattr__(self, name, half(getattr(self, name)))
        for name in ('zeta_plus', 'zeta_minus', 'b_over_a'):
            try:
                object.__setattr__(self, name, to_fraction(getattr(self, name)))
            except exceptions.InvalidArgumentError as exc:
                raise exceptions.RecordInvariantError(exc.message, metadata={'field': name})
        object.__setattr__(self, 'lines', self._couple_lines())
        self._validate()

    def _couple_lines(self):
        lines = []
        for line in LINES:
            target = self.F.twice_value + 2 * line
            if target >= 0 and triangle_ok(self.Jp.twice_value, self.I.twice_value, target):
                lines.append(line)
        return tuple(lines)

    def _fail(self, name, message):
        raise exceptions.RecordInvariantError('{} F={}: {}'.format(self.species, self.F, message),
                                              metadata={'field': name})

    def _validate(self):
        if not self.species or not self.species.strip():
            self._fail('species', 'species label is empty')
        for name in ('I', 'J', 'Jp', 'F'):
            if getattr(self, name).twice_value < 0:
                self._fail(name, '{} must be nonnegative'.format(name))
        if not triangle_ok(self.I.twice_value, self.J.twice_value, self.F.twice_value):
            self._fail('F', 'F={} is not in |I-J|..I+J for I={}, J={}'.format(self.F, self.I, self.J))
        if abs(self.Jp.twice_value - self.J.twice_value) > 2 or self.Jp.twice_value == 0 == self.J.twice_value:
            self._fail('Jp', 'J={} -> Jp={} is not an electric dipole line'.format(self.J, self.Jp))
        if not self.lines:
            self._fail('Jp', 'no excited level couples to F={}'.format(self.F))
        for line, name in ((1, 'zeta_plus'), (-1, 'zeta_minus')):
            if line not in self.lines:
                continue
            value = getattr(self, name)
            if value is None:
                self._fail(name, 'splitting to F\'=F{:+d} is required'.format(line))
            if value == 0:
                self._fail(name, 'splitting to F\'=F{:+d} must be nonzero'.format(line))
        if self.three_line and self.zeta_plus == self.zeta_minus:
            self._fail('zeta_minus', 'zeta_plus and zeta_minus must be distinct')

    @property
    def key(self):
        return (self.species, self.F.value)

    @property
    def three_line(self):
        return len(self.lines) == 3

    @property
    def is_d2(self):
        return self.J == HalfInt('1/2') and self.Jp == HalfInt('3/2')

    @property
    def magic_capable(self):
        return self.I >= 1 and self.three_line

    @property
    def capability_reason(self):
        if self.I < 1:
            return 'nuclear spin I={} is below 1; a magic detuning needs I >= 1'.format(self.I)
        if not self.three_line:
            return 'only excited levels F\'-F in {} couple; three lines are needed'.format(list(self.lines))
        return ''

    def zeta(self, line):
        """Offset of line F'=F+line relative to the F'=F line."""
        if line == 0:
            return Fraction(0)
        if line not in self.lines:
            raise exceptions.InvalidArgumentError('{} F={} has no F\'=F{:+d} line'.format(self.species, self.F, line))
        return self.zeta_plus if line == 1 else self.zeta_minus

    def excited(self, line):
        return self.F + line

    def with_zetas(self, zeta_plus, zeta_minus):
        return replace(self, zeta_plus=zeta_plus, zeta_minus=zeta_minus)

    def __str__(self):
        return '{} F={}'.format(self.species, self.F)


def dipole_limit_record(constants, F, I, J, Jp, species='dipole-limit'):
    zeta_plus, zeta_minus = zeta_from_dipole_constant(constants, F)
    return AtomRecord(species=species, I=I, J=J, Jp=Jp, F=F,
                      zeta_plus=zeta_plus, zeta_minus=zeta_minus, source='A_hfs={}'.format(constants.a_hfs))


class AtomRecordSchema(Schema):
    species = fields.Str(required=True, validate=validate.Length(min=1))
    twoI = fields.Int(required=True, strict=False)
    twoJ = fields.Int(required=True, strict=False)
    twoJp = fields.Int(required=True, strict=False)
    twoF = fields.Int(required=True, strict=False)
    zeta_plus_MHz = fields.Decimal(as_string=True, allow_none=True, load_default=None)
    zeta_minus_MHz = fields.Decimal(as_string=True, allow_none=True, load_default=None)
    b_over_a = fields.Decimal(as_string=True, allow_none=True, load_default=None)
    source = fields.Str(load_default='')

    @post_load
    def make_record(self, data, **kwargs):
        def exact(value):
            return None if value is None else Fraction(value)

        return AtomRecord(species=data['species'].strip(),
                          I=HalfInt.from_twice(data['twoI']),
                          J=HalfInt.from_twice(data['twoJ']),
                          Jp=HalfInt.from_twice(data['twoJp']),
                          F=HalfInt.from_twice(data['twoF']),
                          zeta_plus=exact(data['zeta_plus_MHz']),
                          zeta_minus=exact(data['zeta_minus_MHz']),
                          b_over_a=exact(data['b_over_a']),
                          source=data['source'])


def record_to_fields(record):
    def exact(value):
        return None if value is None else Decimal(format_fraction(value))

    return AtomRecordSchema().dump({
        'species': record.species,
        'twoI': record.I.twice_value,
        'twoJ': record.J.twice_value,
        'twoJp': record.Jp.twice_value,
        'twoF': record.F.twice_value,
        'zeta_plus_MHz': exact(record.zeta_plus),
        'zeta_minus_MHz': exact(record.zeta_minus),
        'b_over_a': exact(record.b_over_a),
        'source': record.source,
    })


def serialize_atom_table(records):
    chunks = [FILE_HEADER]
    for record in records:
        values = record_to_fields(record)
        chunk = ['{}={}'.format(key, values[key]) for key in FILE_KEYS if values.get(key) not in (None, '')]
        chunks.append('\n'.join(chunk))
    return '\n\n'.join(chunks) + '\n'


def dump_atom_table(records, stream):
    stream.write(serialize_atom_table(records).encode('utf-8'))


def _split_records(text):
    lines = text.splitlines()
    if not lines or lines[0].split('#', 1)[0].strip() != FILE_HEADER:
        raise exceptions.AtomFileParseError('Expected header {!r}'.format(FILE_HEADER), metadata={'line': 1})

    records, current = [], None
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            current = None
            continue
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        key, sep, value = content.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise exceptions.AtomFileParseError('Line {}: expected key=value, got {!r}'.format(lineno, content),
                                                metadata={'line': lineno})
        if key not in FILE_KEYS:
            raise exceptions.AtomFileParseError('Line {}: unknown key {!r}'.format(lineno, key),
                                                metadata={'line': lineno})
        if current is None:
            current = {'values': {}, 'lines': {}, 'start': lineno}
            records.append(current)
        if key in current['values']:
            raise exceptions.AtomFileParseError('Line {}: key {!r} repeated in record'.format(lineno, key),
                                                metadata={'line': lineno})
        current['values'][key] = value if value != '' else None
        current['lines'][key] = lineno
    return records


def load_atom_table(source):
    """Parse an atom table from a byte stream (or bytes/str content)."""
    content = source.read() if hasattr(source, 'read') else source
    if isinstance(content, bytes):
        try:
            content = content.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise exceptions.AtomFileParseError('Atom table is not UTF-8: {}'.format(exc), metadata={'line': None})

    schema = AtomRecordSchema()
    records, seen = [], {}
    for chunk in _split_records(content):
        try:
            record = schema.load(chunk['values'])
        except ValidationError as exc:
            key = sorted(exc.messages.keys())[0]
            lineno = chunk['lines'].get(key, chunk['start'])
            raise exceptions.AtomFileParseError('Line {}: {}: {}'.format(lineno, key, exc.messages[key]),
                                                metadata={'line': lineno, 'field': key})
        if record.key in seen:
            raise exceptions.DuplicateRecordError('Line {}: duplicate record {} (first at line {})'.format(
                chunk['start'], record, seen[record.key]), metadata={'line': chunk['start'], 'key': record.key})
        seen[record.key] = chunk['start']
        if not record.magic_capable:
            logger.info('Loaded {} flagged non-magic-capable: {}'.format(record, record.capability_reason))
        records.append(record)
    logger.debug('Loaded {} atom records'.format(len(records)))
    return records


def load_atom_file(path):
    try:
        with open(path, 'rb') as stream:
            return load_atom_table(stream)
    except OSError as exc:
        raise exceptions.AtomFileNotFoundError('Cannot read atom table {}: {}'.format(path, exc.strerror),
                                               metadata={'path': path})


def _builtin_records():
    records = []
    for row in tables.RAW_ROWS:
        records.append(AtomRecord(species=row.species,
                                  I=row.nuclear_spin,
                                  J=HalfInt.from_twice(tables.D2_TWICE_J),
                                  Jp=HalfInt.from_twice(tables.D2_TWICE_JP),
                                  F=HalfInt.from_twice(row.twice_f),
                                  zeta_plus=Fraction(row.zeta_plus),
                                  zeta_minus=Fraction(row.zeta_minus),
                                  b_over_a=Fraction(row.b_over_a),
                                  source=row.source))
    return records


def builtin_registry():
    return list(BuiltinRegistry().records)


@dataclass(frozen=True)
class SpeciesInfo:
    species: str
    I: HalfInt
    J: HalfInt
    Jp: HalfInt

    def manifolds(self):
        low, high = abs(self.I - self.J), self.I + self.J
        return [HalfInt.from_twice(t) for t in range(low.twice_value, high.twice_value + 1, 2)]


class AtomRegistry:
    def __init__(self, records=()):
        self._records = {}
        for record in records:
            if record.key in self._records:
                raise exceptions.DuplicateRecordError('Duplicate record {}'.format(record),
                                                      metadata={'key': record.key})
            self._records[record.key] = record

    @property
    def records(self):
        return tuple(self._records.values())

    def __iter__(self):
        return iter(self._records.values())

    def __len__(self):
        return len(self._records)

    def __contains__(self, key):
        species, F = key
        return (species, half(F).value) in self._records

    def extend(self, records):
        return AtomRegistry(self.records + tuple(records))

    def lookup(self, species, F):
        try:
            F = half(F)
        except exceptions.InvalidArgumentError:
            raise exceptions.SpeciesNotFoundError('F={!r} is not a valid manifold label'.format(F))
        record = self._records.get((species, F.value))
        if record is None:
            raise exceptions.SpeciesNotFoundError('No record for {} F={}'.format(species, F),
                                                  metadata={'species': species, 'F': F})
        return record

    def species(self, name):
        return [record for record in self if record.species == name]

    def species_info(self, name):
        known = self.species(name)
        if known:
            first = known[0]
            return SpeciesInfo(name, first.I, first.J, first.Jp)
        if name in tables.NUCLEAR_SPINS:
            return SpeciesInfo(name, HalfInt(tables.NUCLEAR_SPINS[name]),
                               HalfInt.from_twice(tables.D2_TWICE_J), HalfInt.from_twice(tables.D2_TWICE_JP))
        raise exceptions.SpeciesNotFoundError('Unknown species {}'.format(name), metadata={'species': name})

    def table(self, which):
        if which not in tables.TABLES:
            raise exceptions.InvalidArgumentError('Unknown table {!r}; choose from {}'.format(which, tables.TABLES))
        return [(self.lookup(row.species, row.key[1]), row) for row in tables.published_rows(which)]


class BuiltinRegistry(AtomRegistry, metaclass=Singleton):
    def __init__(self):
        super().__init__(_builtin_records())


def registry_with(path=None):
    """Built-in registry, optionally extended with an atom table file."""
    registry = BuiltinRegistry()
    if not path:
        return registry
    return registry.extend(load_atom_file(path))
