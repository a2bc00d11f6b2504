import logging
import re

import mock
import pytest

from magicdetune import settings, tables
from magicdetune import exception_codes as codes
from magicdetune.main import main
from magicdetune.reports import REPORT_FIELDS

logger = logging.getLogger(__name__)


def numbers(line):
    return [float(x) for x in re.findall(r'-?\d+\.\d+', line)]


def line_starting(out, prefix):
    return next(line for line in out.splitlines() if line.startswith(prefix))


class TestAtomsCommand:
    def test_lists_builtin(self, app, capsys):
        assert app.run(['atoms']) == codes.EXIT_OK
        out = capsys.readouterr().out.splitlines()
        assert out[0].split()[0] == 'species'
        assert len(out) == 32

    def test_with_atom_file(self, app, capsys, atoms_file):
        assert app.run(['atoms', '--atoms', atoms_file]) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 33
        assert '39K' in out

    def test_missing_atom_file(self, app, capsys, tmp_path):
        assert app.run(['atoms', '--atoms', str(tmp_path / 'nope.txt')]) == codes.EXIT_USAGE
        assert 'error: ' in capsys.readouterr().err

    def test_unknown_command(self, app):
        assert app.run(['bogus']) == codes.EXIT_USAGE

    def test_main_entry_point(self, capsys):
        assert main(['atoms']) == codes.EXIT_OK
        assert '87Rb' in capsys.readouterr().out


class TestDetuningsCommand:
    def test_rubidium(self, app, capsys):
        assert app.run(['detunings', '87Rb', '1']) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert numbers(line_starting(out, 'delta_perp '))[-2:] == pytest.approx([-36.4, 389.4], abs=0.1)
        assert numbers(line_starting(out, 'delta_parallel'))[0] == pytest.approx(429.4, abs=0.1)
        assert numbers(line_starting(out, 'delta_pi'))[0] == pytest.approx(392.2, abs=0.1)
        assert out.count('residuals at') == 3

    def test_half_integer_manifold(self, app, capsys):
        assert app.run(['detunings', '6Li', '3/2']) == codes.EXIT_OK
        assert capsys.readouterr().out.startswith('6Li F=3/2')

    def test_low_spin_species(self, app, capsys):
        assert app.run(['detunings', '133Ba+', '1']) == codes.EXIT_CAPABILITY
        assert 'I >= 1' in capsys.readouterr().err

    def test_unknown_species(self, app):
        assert app.run(['detunings', 'Xx', '1']) == codes.EXIT_NOT_FOUND

    def test_unknown_manifold(self, app):
        assert app.run(['detunings', '87Rb', '3']) == codes.EXIT_NOT_FOUND

    def test_deterministic(self, app, capsys):
        app.run(['detunings', '133Cs', '4'])
        first = capsys.readouterr().out
        app.run(['detunings', '133Cs', '4'])
        assert capsys.readouterr().out == first


class TestOptimizeCommand:
    def test_rubidium(self, app, capsys):
        assert app.run(['optimize', '87Rb', '1']) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert 'interior_minimum' in line_starting(out, 'status')
        assert numbers(line_starting(out, 'delta_opt'))[0] == pytest.approx(389.97, abs=0.01)

    def test_radium(self, app, capsys):
        assert app.run(['optimize', '221Ra+', '3']) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert line_starting(out, 'delta_opt').split()[-1] == 'N/A'


class TestTableCommand:
    def test_ions_agree(self, app, capsys):
        assert app.run(['table', 'ions']) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert '18 rows, all cells agree, 38 documented discrepancies (~)' in out
        assert '~ {}'.format(tables.SR91_ZETA) in out
        assert '~' in line_starting(out, '91Sr+')

    def test_alkali_csv(self, app, capsys, tmp_path):
        path = tmp_path / 'alkali.csv'
        assert app.run(['table', 'alkali', '--csv', str(path)]) == codes.EXIT_OK
        assert '13 rows, all cells agree' in capsys.readouterr().out
        lines = path.read_text().splitlines()
        assert lines[0] == ','.join(REPORT_FIELDS + ('agrees',))
        assert len(lines) == 14
        assert all(line.endswith(',true') for line in lines[1:])

    def test_disagreement(self, app, capsys):
        with mock.patch.object(settings.TableConfig, 'TOLERANCE_MHZ', -1.0):
            assert app.run(['table', 'ions']) == codes.EXIT_DISAGREEMENT
        captured = capsys.readouterr()
        assert 'disagree' in captured.err
        assert '*' in captured.out

    def test_unknown_table(self, app):
        assert app.run(['table', 'molecules']) == codes.EXIT_USAGE


class TestScanCommand:
    def test_to_stdout(self, app, capsys):
        assert app.run(['scan', '87Rb', '1', '300', '310', '--n', '11']) == codes.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith('delta_MHz,total')
        assert len(lines) == 12

    def test_to_file(self, app, capsys, tmp_path):
        path = tmp_path / 'scan.csv'
        assert app.run(['scan', '87Rb', '1', '300', '310', '--n', '5', '--out', str(path)]) == codes.EXIT_OK
        assert 'wrote 5 rows' in capsys.readouterr().out
        assert len(path.read_text().splitlines()) == 6

    @pytest.mark.parametrize('argv', [
        ['scan', '87Rb', '1', '300', '310', '--n', '0'],
        ['scan', '87Rb', '1', '300', '300'],
        ['scan', '87Rb', '1', '350', '100'],
    ])
    def test_bad_range(self, app, argv):
        assert app.run(argv) == codes.EXIT_USAGE


class TestStarkCommand:
    def test_shifts(self, app, capsys):
        assert app.run(['stark', '87Rb', '1', '--delta', '391.2', '--intensity', '2']) == codes.EXIT_OK
        out = capsys.readouterr().out
        assert len([line for line in out.splitlines() if line.startswith('m=')]) == 3
        assert 'vector=' in out

    def test_negative_intensity(self, app):
        assert app.run(['stark', '87Rb', '1', '--delta', '391.2', '--intensity', '-1']) == codes.EXIT_USAGE

    def test_pole_is_a_usage_error(self, app):
        assert app.run(['stark', '87Rb', '1', '--delta', '156.9']) == codes.EXIT_USAGE


class TestCavityCommand:
    def run_ratio(self, app, capsys, *extra):
        assert app.run(['cavity', '87Rb', '1', '--delta', '391.2'] + list(extra)) == codes.EXIT_OK
        out = capsys.readouterr().out
        return float(re.search(r'ratio=(\S+)', out).group(1))

    def test_in_phase_scaling(self, app, capsys):
        assert self.run_ratio(app, capsys, '--compensate', '--n_atoms', '8') == pytest.approx(64.0)

    def test_alternating_even(self, app, capsys):
        assert self.run_ratio(app, capsys, '--alternating', '--n_atoms', '4') == 0.0

    def test_alternating_odd(self, app, capsys):
        assert self.run_ratio(app, capsys, '--alternating', '--n_atoms', '3') == pytest.approx(1.0)

    def test_kappa_must_be_positive(self, app):
        assert app.run(['cavity', '87Rb', '1', '--delta', '391.2', '--kappa', '0']) == codes.EXIT_USAGE

    def test_validity_warning(self, app, capsys):
        assert app.run(['cavity', '87Rb', '1', '--delta', '391.2', '--omega', '100']) == codes.EXIT_OK
        assert 'warning: ' in capsys.readouterr().out


class TestMagicAndDiagnostic:
    def test_magic(self, app, capsys):
        assert app.run(['magic', '1/2', '3/2']) == codes.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert all(line.endswith('magic') for line in lines)

    def test_magic_rejects_bad_spin(self, app):
        assert app.run(['magic', '1/3', '3/2']) == codes.EXIT_USAGE

    def test_diagnostic_csv(self, app, capsys, tmp_path):
        path = tmp_path / 'diag.csv'
        assert app.run(['diagnostic', '--csv', str(path)]) == codes.EXIT_OK
        lines = path.read_text().splitlines()
        assert lines[0] == 'species,F,b_over_a,normalized_difference,manifold'
        assert len(lines) == 32
