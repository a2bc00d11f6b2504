"""Published alkali (neutral) and alkaline-earth ion hyperfine rows.

Every row keeps the printed strings so that both the exact inputs and the
printed precision of the published detunings survive.  All rows are D2 lines,
J = 1/2 and J' = 3/2.  Frequencies are in 2pi*MHz.
"""
from dataclasses import dataclass
from fractions import Fraction

ALKALI = 'alkali'
IONS = 'ions'
TABLES = (ALKALI, IONS)

NA = 'N/A'

# species, nuclear spin, twoF, zeta+, zeta-, B/A, delta_perp pair, delta_parallel,
# delta_pi, optimized detuning, magic distance, source
_ALKALI_ROWS = (
    ('6Li', '1', 3, '2.9', '-1.8', '0.087', ('0.58', '2.38'), '2.41', '2.32', '2.39', '6.7e-4', 'Allegrini22'),
    ('7Li', '3/2', 2, '6.0', '-2.9', '0.052', ('1.45', '-15.0'), '-15.5', '-15.0', '-15.0', '3.0e-5', 'Shimizu87'),
    ('7Li', '3/2', 4, '9.4', '-6.0', '0.052', ('1.55', '9.11'), '8.92', '9.40', '9.05', '9.4e-4', 'Shimizu87'),
    ('23Na', '3/2', 2, '-34.3', '15.8', '0.147', ('-8.0', '85.1'), '93.8', '85.8', '85.5', '1.7e-4', 'Yei93'),
    ('23Na', '3/2', 4, '-58.3', '34.3', '0.147', ('-9.4', '-53.4'), '-50.3', '-58.3', '-52.4', '7.9e-3', 'Yei93'),
    ('40K', '4', 7, '33.3', '-24.2', '0.45', ('3.5', '-73.0'), '-77.8', '-74.0', '-73.4', '5.7e-4', 'Falke06'),
    ('40K', '4', 9, '44.1', '-33.3', '0.45', ('3.9', '60.6'), '57.6', '64.1', '60.1', '3.0e-3', 'Falke06'),
    ('85Rb', '5/2', 4, '-63.4', '29.4', '1.03', ('-7.7', '140.6'), '227.6', '147.9', '143.9', '7.2e-3', 'Das08'),
    ('85Rb', '5/2', 6, '-120.6', '63.4', '1.03', ('-13.4', '-118.9'), '-97.3', '-150.8', '-113.9', '6.0e-2', 'Das08'),
    ('87Rb', '3/2', 2, '-156.9', '72.2', '0.148', ('-36.4', '389.4'), '429.4', '392.2', '391.2', '1.8e-4', 'Ye96'),
    ('87Rb', '3/2', 4, '-266.7', '156.9', '0.148', ('-42.8', '-244.3'), '-229.9', '-266.7', '-239.5', '8.0e-3', 'Ye96'),
    ('133Cs', '7/2', 6, '-201.29', '151.22', '-0.00981', ('-25.20', '453.04'), '452.36', '452.90', '452.99', '3.0e-7',
     'Gerginov03'),
    ('133Cs', '7/2', 8, '-251.09', '201.29', '-0.00981', ('-25.12', '-352.05'), '-352.50', '-351.53', '-352.13',
     '1.9e-6', 'Gerginov03'),
)

_ION_ROWS = (
    ('43Ca+', '7/2', 6, '122.0', '-88.1', '0.223', ('14.8', '-272.6'), '-282.3', '-274.5', '-273.3', '1.5e-4',
     'Nortershauser98'),
    ('43Ca+', '7/2', 8, '159.9', '-122.0', '0.223', ('15.8', '216.4'), '210.3', '223.9', '215.4', '1.0e-3',
     'Nortershauser98'),
    ('85Sr+', '9/2', 8, '275.0', '-315.9', '-4.08', ('36.3', '-657.8'), '-503.2', '-605.0', '-642.2', '0.023',
     'Buchinger90'),
    ('85Sr+', '9/2', 10, '154.1', '-275.0', '-4.08', ('15.0', '423.5'), '846.3', '213.2', '450.2', '0.199',
     'Buchinger90'),
    ('87Sr+', '9/2', 8, '198.4', '-203.0', '-2.46', ('24.0', '-461.0'), '-381.1', '-436.5', '-453.4', '0.010',
     'Buchinger90'),
    ('87Sr+', '9/2', 10, '157.0', '-198.4', '-2.46', ('14.4', '323.8'), '439.7', '235.5', '336.1', '0.069',
     'Buchinger90'),
    ('89Sr+', '5/2', 4, '171.9', '-77.9', '1.07', ('20.5', '-380.2'), '-643.7', '-401.1', '-389.7', '8.0e-3',
     'Buchinger90'),
    ('89Sr+', '5/2', 6, '331.9', '-171.9', '1.07', ('36.6', '324.4'), '263.2', '414.9', '310.2', '0.065',
     'Buchinger90'),
    ('91Sr+', '5/2', 4, '163.3', '-115.0', '-0.234', ('28.5', '-384.5'), '-365.4', '-381.0', '-383.0', '2.1e-4',
     'Buchinger90'),
    ('91Sr+', '5/2', 6, '200.6', '-163.3', '-0.234', ('27.5', '273.2'), '271.2', '275.8', '272.8', '7.4e-5',
     'Buchinger90'),
    ('135Ba+', '3/2', 2, '-167.0', '54.0', '0.522', ('-27.9', '403.7'), '920.2', '417.5', '413.0', '3.8e-3',
     'Villemoes93'),
    ('135Ba+', '3/2', 4, '-398.0', '167.0', '0.522', ('-56.3', '-294.9'), '-233.2', '-398.0', '-272.6', '0.118',
     'Villemoes93'),
    ('137Ba+', '3/2', 2, '-161.9', '34.7', '0.727', ('-18.4', '382.6'), '-1216.0', '404.8', '398.4', '0.011',
     'Villemoes93'),
    ('137Ba+', '3/2', 4, '-474.1', '161.9', '0.727', ('-60.9', '-314.9'), '-221.3', '-474.1', '-283.9', '0.251',
     'Villemoes93'),
    ('221Ra+', '5/2', 4, '681.1', '-1136.2', '-60.9', ('231.9', '-1946.4'), '-1073.6', '-1589.2', '-1833.0', '0.084',
     'Neu88'),
    ('221Ra+', '5/2', 6, '-1001.8', '-681.1', '-60.9', ('-227.8', '623.9'), '734.9', '-1252.3', NA, NA, 'Neu88'),
    ('223Ra+', '3/2', 2, '751.8', '-808.3', '15.3', ('368.7', '-2060.2'), '-1224.5', '-1879.5', '-1965.4', '0.025',
     'Neu88'),
    ('223Ra+', '3/2', 4, '-1034.3', '-751.8', '15.3', ('-270.0', '720.6'), '795.2', '-1034.3', NA, NA, 'Neu88'),
)

# Nuclear spins, including species whose manifolds are not tabulated because
# they cannot host a magic detuning.
NUCLEAR_SPINS = {
    '6Li': '1',
    '7Li': '3/2',
    '23Na': '3/2',
    '40K': '4',
    '85Rb': '5/2',
    '87Rb': '3/2',
    '133Cs': '7/2',
    '43Ca+': '7/2',
    '85Sr+': '9/2',
    '87Sr+': '9/2',
    '89Sr+': '5/2',
    '91Sr+': '5/2',
    '133Ba+': '1/2',
    '135Ba+': '3/2',
    '137Ba+': '3/2',
    '221Ra+': '5/2',
    '223Ra+': '3/2',
}

D2_TWICE_J = 1
D2_TWICE_JP = 3


def _decimals(text):
    if text == NA or '.' not in text or 'e' in text.lower():
        return 0
    return len(text.split('.', 1)[1])


def _optional(text):
    return None if text == NA else float(text)


@dataclass(frozen=True)
class PublishedRow:
    table: str
    species: str
    twice_f: int
    delta_perp: tuple
    delta_parallel: float
    delta_pi: float
    delta_opt: object
    m_value: object
    decimals: int

    @property
    def key(self):
        return (self.species, Fraction(self.twice_f, 2))


@dataclass(frozen=True)
class RawRow:
    table: str
    species: str
    nuclear_spin: str
    twice_f: int
    zeta_plus: str
    zeta_minus: str
    b_over_a: str
    source: str
    published: PublishedRow


def _build(table, rows):
    built = []
    for (species, spin, twice_f, zp, zm, ba, perp, par, pi, opt, m_value, source) in rows:
        decimals = max(_decimals(text) for text in perp + (par, pi, opt))
        published = PublishedRow(table=table,
                                 species=species,
                                 twice_f=twice_f,
                                 delta_perp=tuple(sorted(float(p) for p in perp)),
                                 delta_parallel=float(par),
                                 delta_pi=float(pi),
                                 delta_opt=_optional(opt),
                                 m_value=_optional(m_value),
                                 decimals=decimals)
        built.append(RawRow(table, species, spin, twice_f, zp, zm, ba, source, published))
    return tuple(built)


RAW_ROWS = _build(ALKALI, _ALKALI_ROWS) + _build(IONS, _ION_ROWS)


def published_rows(which=None):
    return [row.published for row in RAW_ROWS if which is None or row.table == which]


M_CONVENTION = ('M is normalized by the parallel Rayleigh amplitude of m=0 (m=1/2) after projecting onto the '
                'drive polarization; the printed magic distances are 2-4x larger and their minima sit elsewhere')
SR91_ZETA = 'printed detunings follow zeta+ = 220.6 rather than the printed 200.6'
SR85_PI = 'printed delta_pi is not zeta+ Q/(P-Q) of the printed zeta+ = 154.1'
RA223_PERP = 'printed delta_perp_1 departs from the printed inputs by more than its precision'

# species, twice F, cell, recomputed value, reason
_DISCREPANCY_ROWS = (
    ('6Li', 3, 'm_value', '2.334e-4', M_CONVENTION),
    ('7Li', 2, 'm_value', '8.135e-6', M_CONVENTION),
    ('7Li', 4, 'm_value', '3.709e-4', M_CONVENTION),
    ('23Na', 2, 'delta_opt', '85.257', M_CONVENTION),
    ('23Na', 2, 'm_value', '4.619e-5', M_CONVENTION),
    ('23Na', 4, 'delta_opt', '-52.593', M_CONVENTION),
    ('23Na', 4, 'm_value', '3.125e-3', M_CONVENTION),
    ('40K', 7, 'delta_opt', '-73.256', M_CONVENTION),
    ('40K', 7, 'm_value', '2.834e-4', M_CONVENTION),
    ('40K', 9, 'delta_opt', '60.166', M_CONVENTION),
    ('40K', 9, 'm_value', '1.494e-3', M_CONVENTION),
    ('85Rb', 4, 'delta_opt', '142.282', M_CONVENTION),
    ('85Rb', 4, 'm_value', '2.988e-3', M_CONVENTION),
    ('85Rb', 6, 'delta_opt', '-114.674', M_CONVENTION),
    ('85Rb', 6, 'm_value', '2.699e-2', M_CONVENTION),
    ('87Rb', 2, 'delta_opt', '389.967', M_CONVENTION),
    ('87Rb', 2, 'm_value', '4.733e-5', M_CONVENTION),
    ('87Rb', 4, 'delta_opt', '-240.582', M_CONVENTION),
    ('87Rb', 4, 'm_value', '3.128e-3', M_CONVENTION),
    ('133Cs', 6, 'delta_opt', '453.014', M_CONVENTION),
    ('133Cs', 6, 'm_value', '1.437e-7', M_CONVENTION),
    ('133Cs', 8, 'delta_opt', '-352.117', M_CONVENTION),
    ('133Cs', 8, 'm_value', '9.371e-7', M_CONVENTION),
    ('43Ca+', 6, 'delta_opt', '-272.999', M_CONVENTION),
    ('43Ca+', 6, 'm_value', '7.244e-5', M_CONVENTION),
    ('43Ca+', 8, 'delta_opt', '215.500', M_CONVENTION),
    ('43Ca+', 8, 'm_value', '4.936e-4', M_CONVENTION),
    ('85Sr+', 8, 'delta_opt', '-647.785', M_CONVENTION),
    ('85Sr+', 8, 'm_value', '1.158e-2', M_CONVENTION),
    ('85Sr+', 10, 'delta_pi', '231.150', SR85_PI),
    ('85Sr+', 10, 'delta_opt', '446.308', M_CONVENTION),
    ('85Sr+', 10, 'm_value', '1.038e-1', M_CONVENTION),
    ('87Sr+', 8, 'delta_opt', '-456.022', M_CONVENTION),
    ('87Sr+', 8, 'm_value', '5.142e-3', M_CONVENTION),
    ('87Sr+', 10, 'delta_opt', '334.377', M_CONVENTION),
    ('87Sr+', 10, 'm_value', '3.603e-2', M_CONVENTION),
    ('89Sr+', 4, 'delta_opt', '-384.991', M_CONVENTION),
    ('89Sr+', 4, 'm_value', '3.336e-3', M_CONVENTION),
    ('89Sr+', 6, 'delta_opt', '312.257', M_CONVENTION),
    ('89Sr+', 6, 'm_value', '2.937e-2', M_CONVENTION),
    ('91Sr+', 4, 'delta_opt', '-383.767', M_CONVENTION),
    ('91Sr+', 4, 'm_value', '8.477e-5', M_CONVENTION),
    ('91Sr+', 6, 'delta_perp_1', '25.648', SR91_ZETA),
    ('91Sr+', 6, 'delta_perp_2', '266.087', SR91_ZETA),
    ('91Sr+', 6, 'delta_parallel', '278.974', SR91_ZETA),
    ('91Sr+', 6, 'delta_pi', '250.750', SR91_ZETA),
    ('91Sr+', 6, 'delta_opt', '268.209', SR91_ZETA),
    ('91Sr+', 6, 'm_value', '1.301e-3', SR91_ZETA),
    ('135Ba+', 2, 'delta_opt', '406.813', M_CONVENTION),
    ('135Ba+', 2, 'm_value', '1.042e-3', M_CONVENTION),
    ('135Ba+', 4, 'delta_opt', '-277.592', M_CONVENTION),
    ('135Ba+', 4, 'm_value', '4.526e-2', M_CONVENTION),
    ('137Ba+', 2, 'delta_opt', '388.160', M_CONVENTION),
    ('137Ba+', 2, 'm_value', '3.000e-3', M_CONVENTION),
    ('137Ba+', 4, 'delta_opt', '-290.587', M_CONVENTION),
    ('137Ba+', 4, 'm_value', '9.507e-2', M_CONVENTION),
    ('221Ra+', 4, 'delta_opt', '-1916.026', M_CONVENTION),
    ('221Ra+', 4, 'm_value', '3.310e-2', M_CONVENTION),
    ('223Ra+', 2, 'delta_opt', '-2039.445', M_CONVENTION),
    ('223Ra+', 2, 'm_value', '6.428e-3', M_CONVENTION),
    ('223Ra+', 4, 'delta_perp_1', '-269.765', RA223_PERP),
)


@dataclass(frozen=True)
class KnownDiscrepancy:
    species: str
    twice_f: int
    cell: str
    recomputed: float
    reason: str

    @property
    def key(self):
        return (self.species, Fraction(self.twice_f, 2))


KNOWN_DISCREPANCIES = tuple(KnownDiscrepancy(species, twice_f, cell, float(value), reason)
                            for species, twice_f, cell, value, reason in _DISCREPANCY_ROWS)


def known_discrepancies(key):
    """Documented cells of one row, by cell name."""
    return {entry.cell: entry for entry in KNOWN_DISCREPANCIES if entry.key == key}
