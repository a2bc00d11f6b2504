import io
import logging
from fractions import Fraction

import pytest

from magicdetune import tables
from magicdetune.atomic_data import (AtomRecord, AtomRegistry, BuiltinRegistry, HyperfineConstants, builtin_registry,
                                     hyperfine_shift, load_atom_file, load_atom_table, registry_with,
                                     serialize_atom_table, zeta_from_dipole_constant)
from magicdetune.exceptions import (AtomFileNotFoundError, AtomFileParseError, DuplicateRecordError,
                                    InvalidArgumentError, RecordInvariantError, SpeciesNotFoundError)
from magicdetune.factories import AtomRecordFactory
from magicdetune.wigner import HalfInt

logger = logging.getLogger(__name__)

TWO_RECORDS = b"""magicdetune-atoms v1
# two manifolds of a made-up line
species=39K
twoI=3
twoJ=1
twoJp=3
twoF=2
zeta_plus_MHz=-21.1
zeta_minus_MHz=9.4

species=39K
twoI=3
twoJ=1
twoJp=3
twoF=4
zeta_plus_MHz=-55.5
zeta_minus_MHz=21.1
b_over_a=0.2
source=made up
"""


class TestRegistry:
    def test_builtin_rows(self, registry):
        assert len(registry) == 31
        assert len(registry.table(tables.ALKALI)) == 13
        assert len(registry.table(tables.IONS)) == 18

    def test_builtin_registry_is_shared(self, registry):
        assert isinstance(registry, BuiltinRegistry)
        assert isinstance(registry, AtomRegistry)
        assert BuiltinRegistry() is registry
        assert registry_with() is registry
        BuiltinRegistry.reset()
        fresh = BuiltinRegistry()
        assert fresh is not registry
        assert list(fresh) == list(registry)

    def test_builtin_records_are_ordered(self, registry):
        records = builtin_registry()
        assert records == list(registry)
        assert records[0].species == '6Li'
        assert records[0].F == HalfInt('3/2')

    @pytest.mark.parametrize('species,F,zeta_plus,zeta_minus,b_over_a', [
        ('87Rb', 1, '-156.9', '72.2', '0.148'),
        ('133Cs', 3, '-201.29', '151.22', '-0.00981'),
        ('221Ra+', 3, '-1001.8', '-681.1', '-60.9'),
    ])
    def test_lookup(self, registry, species, F, zeta_plus, zeta_minus, b_over_a):
        atom = registry.lookup(species, F)
        assert atom.zeta_plus == Fraction(zeta_plus)
        assert atom.zeta_minus == Fraction(zeta_minus)
        assert atom.b_over_a == Fraction(b_over_a)
        assert atom.is_d2
        assert atom.magic_capable

    def test_lookup_accepts_text_labels(self, registry):
        assert registry.lookup('6Li', '3/2').F == HalfInt('3/2')
        assert ('6Li', '3/2') in registry

    def test_lookup_missing(self, registry):
        with pytest.raises(SpeciesNotFoundError):
            registry.lookup('Xx', 1)
        with pytest.raises(SpeciesNotFoundError):
            registry.lookup('87Rb', 3)
        with pytest.raises(SpeciesNotFoundError):
            registry.species_info('Xx')

    def test_species_catalogue(self, registry):
        info = registry.species_info('133Ba+')
        assert info.I == HalfInt('1/2')
        assert info.manifolds() == [0, 1]
        assert registry.species('133Ba+') == []
        assert [str(atom.F) for atom in registry.species('87Rb')] == ['1', '2']

    def test_extend_keeps_builtin(self, registry, extra_record):
        extended = registry.extend([extra_record])
        assert len(extended) == 32
        assert len(registry) == 31
        with pytest.raises(DuplicateRecordError):
            extended.extend([extra_record])

    def test_registry_with_file(self, atoms_file):
        assert len(registry_with(atoms_file)) == 32
        assert len(registry_with(None)) == 31

    def test_unknown_table(self, registry):
        with pytest.raises(InvalidArgumentError):
            registry.table('molecules')


class TestAtomRecord:
    def test_lines(self):
        atom = AtomRecordFactory(I=HalfInt('3/2'))
        assert atom.lines == (1, 0, -1)
        assert atom.F == 2

    def test_f_outside_range(self):
        with pytest.raises(RecordInvariantError) as exc:
            AtomRecord(species='Xa', I='3/2', J='1/2', Jp='3/2', F=3, zeta_plus=-1, zeta_minus=1)
        assert exc.value.field == 'F'

    def test_missing_splitting(self):
        with pytest.raises(RecordInvariantError) as exc:
            AtomRecord(species='Xa', I='3/2', J='1/2', Jp='3/2', F=1, zeta_plus=-1)
        assert exc.value.field == 'zeta_minus'

    def test_equal_splittings(self):
        with pytest.raises(RecordInvariantError) as exc:
            AtomRecord(species='Xa', I='3/2', J='1/2', Jp='3/2', F=1, zeta_plus=5, zeta_minus=5)
        assert exc.value.field == 'zeta_minus'

    def test_not_a_dipole_line(self):
        with pytest.raises(RecordInvariantError) as exc:
            AtomRecord(species='Xa', I='3/2', J='1/2', Jp='7/2', F=1, zeta_plus=-1, zeta_minus=1)
        assert exc.value.field == 'Jp'

    def test_low_spin_is_flagged(self):
        atom = AtomRecord(species='133Ba+', I='1/2', J='1/2', Jp='3/2', F=1, zeta_plus=-100, zeta_minus=None)
        assert atom.lines == (1, 0)
        assert not atom.magic_capable
        assert 'I >= 1' in atom.capability_reason

    def test_zeta_of_missing_line(self):
        atom = AtomRecord(species='133Ba+', I='1/2', J='1/2', Jp='3/2', F=1, zeta_plus=-100)
        assert atom.zeta(0) == 0
        with pytest.raises(InvalidArgumentError):
            atom.zeta(-1)


class TestHyperfine:
    @pytest.mark.parametrize('a_hfs,F,expected', [
        (1, 1, (-2, 1)),
        (-3, 2, (9, -6)),
        (100, 3, (-400, 300)),
    ])
    def test_zeta_from_dipole_constant(self, a_hfs, F, expected):
        assert zeta_from_dipole_constant(HyperfineConstants(a_hfs), F) == expected

    def test_zeta_matches_level_energies(self):
        I, J, Jp, F = '3/2', '1/2', '3/2', 2
        zeta_plus, zeta_minus = zeta_from_dipole_constant(HyperfineConstants(Fraction(7, 3)), F)
        energy = {Fp: hyperfine_shift(Fraction(7, 3), Fp, I, Jp) for Fp in (1, 2, 3)}
        assert zeta_plus == energy[2] - energy[3]
        assert zeta_minus == energy[2] - energy[1]
        assert hyperfine_shift(1, 2, I, J) == Fraction(3, 4)

    def test_rejects_quadrupole_and_zero(self):
        with pytest.raises(InvalidArgumentError):
            zeta_from_dipole_constant(HyperfineConstants(1, 2), 1)
        with pytest.raises(InvalidArgumentError):
            zeta_from_dipole_constant(HyperfineConstants(0), 1)


class TestAtomFile:
    def test_two_records(self):
        records = load_atom_table(io.BytesIO(TWO_RECORDS))
        assert [str(record) for record in records] == ['39K F=1', '39K F=2']
        assert records[1].b_over_a == Fraction(1, 5)
        assert records[1].source == 'made up'
        assert records[0].zeta_plus == Fraction('-21.1')

    def test_builtin_round_trip(self, registry):
        text = serialize_atom_table(registry.records)
        loaded = load_atom_table(text.encode('utf-8'))
        assert loaded == list(registry.records)
        for original, again in zip(registry.records, loaded):
            assert (original.zeta_plus, original.zeta_minus, original.b_over_a, original.source) == \
                (again.zeta_plus, again.zeta_minus, again.b_over_a, again.source)
        assert serialize_atom_table(loaded) == text

    def test_low_spin_record_loads(self):
        text = b'magicdetune-atoms v1\nspecies=133Ba+\ntwoI=1\ntwoJ=1\ntwoJp=3\ntwoF=2\nzeta_plus_MHz=-100\n'
        record, = load_atom_table(text)
        assert not record.magic_capable

    def test_invariant_error_names_field(self):
        bad = TWO_RECORDS.replace(b'twoF=4', b'twoF=6')
        with pytest.raises(RecordInvariantError) as exc:
            load_atom_table(bad)
        assert exc.value.field == 'F'

    @pytest.mark.parametrize('text,line', [
        (b'not a header\n', 1),
        (b'magicdetune-atoms v1\nspecies=Xa\ncolour=blue\n', 3),
        (b'magicdetune-atoms v1\nspecies=Xa\ntwoI=three\ntwoJ=1\ntwoJp=3\ntwoF=2\n', 3),
        (b'magicdetune-atoms v1\nspecies=Xa\nspecies=Xb\n', 3),
        (b'magicdetune-atoms v1\nspecies Xa\n', 2),
    ])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(AtomFileParseError) as exc:
            load_atom_table(text)
        assert exc.value.line == line

    def test_duplicate_records(self):
        duplicated = TWO_RECORDS + b'\n' + TWO_RECORDS.split(b'\n\n')[1]
        with pytest.raises(DuplicateRecordError):
            load_atom_table(duplicated)

    def test_missing_file(self, tmp_path):
        with pytest.raises(AtomFileNotFoundError):
            load_atom_file(str(tmp_path / 'missing.txt'))

    def test_registry_from_loaded_records(self):
        registry = AtomRegistry(load_atom_table(TWO_RECORDS))
        assert registry.lookup('39K', 2).zeta_minus == Fraction('21.1')


class TestManager:
    def test_dump_and_check(self, registry, tmp_path, capsys):
        from manager import AtomTableHandler
        path = AtomTableHandler.dump_builtin(str(tmp_path / 'builtin.txt'))
        assert AtomTableHandler.check(path) == 31
        assert '87Rb F=1' in capsys.readouterr().out

    def test_dipole_limit_file(self, tmp_path):
        from manager import AtomTableHandler
        path = str(tmp_path / 'limit.txt')
        assert AtomTableHandler.dipole_limit(path, 'Xa', 100, '3/2', 2) == 'Xa F=2'
        record, = load_atom_file(path)
        assert (record.zeta_plus, record.zeta_minus) == (-300, 200)
