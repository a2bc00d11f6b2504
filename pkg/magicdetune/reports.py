"""Recomputation of the published tables and the text/CSV renderings."""
import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from magicdetune import settings, tables
from magicdetune.optimizer import characterize
from utils import format_optional

logger = logging.getLogger(__name__)

REPORT_FIELDS = ('species', 'F', 'zeta_plus', 'zeta_minus', 'b_over_a', 'delta_perp_1', 'delta_perp_2',
                 'delta_parallel', 'delta_pi', 'delta_opt', 'm_value')
TIGHT_SPECIES = ('133Cs',)


def format_value(value, decimals):
    return format_optional(value, '.{}f'.format(decimals), tables.NA)


def format_m(value):
    return format_optional(value, '.1e', tables.NA)


def format_exact(value):
    return '' if value is None else str(float(value))


@dataclass(frozen=True)
class ReportRow:
    species: str
    F: object
    zeta_plus: object
    zeta_minus: object
    b_over_a: object
    delta_perp: tuple
    delta_parallel: float
    delta_pi: float
    delta_opt: float
    m_value: float
    decimals: int = 1

    @classmethod
    def from_detunings(cls, detunings, decimals=1):
        atom = detunings.atom
        return cls(species=atom.species, F=atom.F, zeta_plus=atom.zeta_plus, zeta_minus=atom.zeta_minus,
                   b_over_a=atom.b_over_a, delta_perp=tuple(detunings.delta_perp),
                   delta_parallel=detunings.delta_parallel, delta_pi=detunings.delta_pi,
                   delta_opt=detunings.delta_opt, m_value=detunings.m_value, decimals=decimals)

    def csv_fields(self):
        d = self.decimals
        return [self.species, str(self.F), format_exact(self.zeta_plus), format_exact(self.zeta_minus),
                format_exact(self.b_over_a), format_value(self.delta_perp[0], d), format_value(self.delta_perp[1], d),
                format_value(self.delta_parallel, d), format_value(self.delta_pi, d), format_value(self.delta_opt, d),
                format_m(self.m_value)]


@dataclass(frozen=True)
class CellCheck:
    name: str
    computed: object
    published: object
    ok: bool
    documented: tables.KnownDiscrepancy = None

    @property
    def target(self):
        return self.published if self.documented is None else self.documented.recomputed


def tolerance_for(species):
    if species in TIGHT_SPECIES:
        return settings.TableConfig.CS_TOLERANCE_MHZ
    return settings.TableConfig.TOLERANCE_MHZ


def _close(computed, published, tolerance):
    if published is None or computed is None:
        return published is None and computed is None
    return abs(computed - published) <= tolerance


def _close_relative(computed, published, tolerance):
    if published is None or computed is None:
        return published is None and computed is None
    return abs(computed - published) <= tolerance * abs(published)


def compare_row(row, published, documented=None):
    """Check every cell; a documented cell is held to its recomputed value instead of the printed one."""
    tolerance = tolerance_for(row.species)
    m_tolerance = settings.TableConfig.M_RELATIVE_TOLERANCE
    documented = documented or {}
    pairs = (
        ('delta_perp_1', row.delta_perp[0], published.delta_perp[0]),
        ('delta_perp_2', row.delta_perp[1], published.delta_perp[1]),
        ('delta_parallel', row.delta_parallel, published.delta_parallel),
        ('delta_pi', row.delta_pi, published.delta_pi),
        ('delta_opt', row.delta_opt, published.delta_opt),
        ('m_value', row.m_value, published.m_value),
    )
    cells = []
    for name, computed, printed in pairs:
        entry = documented.get(name)
        target = printed if entry is None else entry.recomputed
        if name == 'm_value':
            ok = _close_relative(computed, target, m_tolerance)
        else:
            ok = _close(computed, target, tolerance)
        cells.append(CellCheck(name, computed, printed, ok, entry))
    return cells


@dataclass(frozen=True)
class TableEntry:
    row: ReportRow
    published: object
    cells: tuple

    @property
    def agrees(self):
        return all(cell.ok for cell in self.cells)


@dataclass(frozen=True)
class TableReport:
    which: str
    entries: tuple

    @property
    def agrees(self):
        return all(entry.agrees for entry in self.entries)

    def failures(self):
        return ['{} F={} {}: computed {} expected {}'.format(entry.row.species, entry.row.F, cell.name,
                                                              cell.computed, cell.target)
                for entry in self.entries for cell in entry.cells if not cell.ok]

    def documented(self):
        return [(entry.row.species, entry.row.F, cell)
                for entry in self.entries for cell in entry.cells if cell.documented is not None]

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(REPORT_FIELDS + ('agrees',))
        for entry in self.entries:
            writer.writerow(entry.row.csv_fields() + [str(entry.agrees).lower()])

    def render(self):
        lines = ['{:<8} {:>4} | {:>20} | {:>20} | {:>20} | {:>20} | {:>20} | {:>18}'.format(
            'species', 'F', 'delta_perp_1', 'delta_perp_2', 'delta_parallel', 'delta_pi', 'delta_opt', 'M')]
        for entry in self.entries:
            d = entry.row.decimals
            cells = []
            for cell in entry.cells:
                if cell.name == 'm_value':
                    text = '{} ({})'.format(format_m(cell.computed), format_m(cell.published))
                else:
                    text = '{} ({})'.format(format_value(cell.computed, d), format_value(cell.published, d))
                cells.append('{}{}'.format(text, '*' if not cell.ok else '~' if cell.documented else ' '))
            lines.append('{:<8} {:>4} | {:>20} | {:>20} | {:>20} | {:>20} | {:>20} | {:>18}'.format(
                entry.row.species, str(entry.row.F), *cells))
        summary = '{} rows, {}'.format(len(self.entries), 'all cells agree' if self.agrees else
                                       '{} cells disagree (*)'.format(len(self.failures())))
        documented = self.documented()
        if documented:
            summary += ', {} documented discrepancies (~)'.format(len(documented))
        lines.append(summary)
        lines.extend('~ {}'.format(reason) for reason in sorted({cell.documented.reason for _, _, cell in documented}))
        return '\n'.join(lines)


def compute_table(registry, which, theta=None, workers=None, published=None):
    """Recompute a published table; rows are returned in table order."""
    workers = settings.TableConfig.WORKERS if workers is None else workers
    pairs = registry.table(which)
    if published is not None:
        pairs = [(atom, published.get(row.key, row)) for atom, row in pairs]

    def run(pair):
        atom, row = pair
        return ReportRow.from_detunings(characterize(atom, theta), decimals=row.decimals)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(run, pairs))

    entries = tuple(TableEntry(row, published_row,
                               tuple(compare_row(row, published_row, tables.known_discrepancies(published_row.key))))
                    for row, (_, published_row) in zip(rows, pairs))
    report = TableReport(which, entries)
    logger.info('Table {}: {} rows, agreement {}'.format(which, len(entries), report.agrees))
    return report
