"""Command-line front end.  All frequencies are in 2pi*MHz, as in the tables.

    magicdetune <atoms|detunings|optimize|table|scan|stark|cavity|magic|diagnostic> [args]
                [--atoms FILE] [--csv PATH] [--theta RAD]
"""
import csv
import logging
import math
import sys

from magicdetune import settings, tables
from magicdetune.atomic_data import registry_with
from magicdetune.cavity import (CavityConfig, compensated_detuning, effective_params, multi_atom_steady_state,
                                parallel_basis_params)
from magicdetune.detunings import compute_detunings, magic_exists, magic_manifolds, quadrupole_diagnostic
from magicdetune.exceptions import CapabilityError, SpeciesNotFoundError, TableMismatchError
from magicdetune.optimizer import optimize_detuning, polarization_sensitivity, scan_magic_distance
from magicdetune.polarizability import condition_residuals
from magicdetune.reports import compute_table, format_exact
from magicdetune.stark import stark_decompose, stark_shifts
from magicdetune.wigner import HalfInt, half
from utils import format_optional

logger = logging.getLogger(__name__)


class Commands:
    """Magic detunings for light scattering from Zeeman states (frequencies in 2pi*MHz)."""
    config = settings.DefaultConfig

    def __init__(self, atoms=None, csv=None, theta=None):
        self._atoms_file = atoms if atoms is not None else (self.config.ATOMS_FILE or None)
        self._csv = csv
        self._theta = settings.DEFAULT_THETA if theta is None else float(theta)
        self._registry = None

    @property
    def _atoms(self):
        if self._registry is None:
            self._registry = registry_with(self._atoms_file)
        return self._registry

    def _out(self, text=''):
        sys.stdout.write('{}\n'.format(text))

    def _record(self, species, F):
        species = str(species)
        try:
            return self._atoms.lookup(species, F)
        except SpeciesNotFoundError:
            info = self._atoms.species_info(species)
            F = half(F)
            if F not in info.manifolds():
                raise SpeciesNotFoundError('{} has no F={} manifold (I={}, J={})'.format(species, F, info.I, info.J),
                                           metadata={'species': species, 'F': F})
            if info.I < 1:
                raise CapabilityError('{} has nuclear spin I={}; a magic detuning needs I >= 1'.format(
                    species, info.I), metadata={'species': species, 'F': F})
            raise

    def _capable(self, species, F):
        atom = self._record(species, F)
        if not atom.magic_capable:
            raise CapabilityError('{} is not magic-capable: {}'.format(atom, atom.capability_reason),
                                  metadata={'species': atom.species, 'F': atom.F})
        return atom

    def atoms(self):
        """List the registry (built-in rows plus any --atoms additions)."""
        self._out('{:<8} {:>4} {:>4} {:>4} {:>4} {:>14} {:>14} {:>10}  {}'.format(
            'species', 'F', 'I', 'J', 'Jp', 'zeta_plus', 'zeta_minus', 'B/A', 'source'))
        for atom in self._atoms:
            self._out('{:<8} {:>4} {:>4} {:>4} {:>4} {:>14} {:>14} {:>10}  {}'.format(
                atom.species, str(atom.F), str(atom.I), str(atom.J), str(atom.Jp),
                format_exact(atom.zeta_plus) or '-', format_exact(atom.zeta_minus) or '-',
                format_exact(atom.b_over_a) or '-', atom.source))

    def detunings(self, species, F):
        """Condition detunings delta_perp (both), delta_par and delta_pi with residuals."""
        atom = self._capable(species, F)
        result = compute_detunings(atom)
        self._out('{} F={}'.format(atom.species, atom.F))
        self._out('delta_perp      {}, {}'.format(*(format_optional(root, '.4f') for root in result.delta_perp)))
        self._out('delta_parallel  {}{}'.format(format_optional(result.delta_parallel, '.4f'),
                                                ' (quadratic, nearest root)' if result.parallel_flagged else ''))
        self._out('delta_pi        {}'.format(format_optional(result.delta_pi, '.4f')))
        self._out('delta_perp quadratic a={a:.6g} b={b:.6g} c={c:.6g}'.format(**result.quadratic))
        for label, delta in (('delta_perp_near', result.delta_perp_nearest), ('delta_parallel', result.delta_parallel),
                             ('delta_pi', result.delta_pi)):
            residuals = condition_residuals(atom, None, delta)
            self._out('residuals at {:<16} {}'.format(label, ' '.join(
                '{}={:.2e}'.format(name, value) for name, value in residuals.as_dict().items())))

    def optimize(self, species, F, sensitivity=False):
        """Minimize the magic distance M over the detuning."""
        atom = self._capable(species, F)
        result = optimize_detuning(atom, theta=self._theta)
        self._out('{} F={} theta={:.6f}'.format(atom.species, atom.F, self._theta))
        self._out('status          {}'.format(result.status))
        self._out('delta_opt       {}'.format(format_optional(result.delta_opt, '.4f')))
        self._out('M               {}'.format(format_optional(result.m_value, '.3e')))
        self._out('bracket         [{:.3f}, {:.3f}]'.format(*result.bracket))
        self._out('nearest line    {}'.format(format_optional(result.nearest_resonance, '.3f')))
        if sensitivity:
            spread = polarization_sensitivity(atom)
            for theta, delta in spread.deltas:
                self._out('theta={:.4f} delta_opt={}'.format(theta, format_optional(delta, '.4f')))
            self._out('theta spread    {} (smooth={})'.format(format_optional(spread.spread, '.4f'), spread.smooth))

    def table(self, which=tables.ALKALI):
        """Recompute a published table; exit 1 when any cell disagrees."""
        report = compute_table(self._atoms, which, theta=self._theta, workers=self.config.TABLE_WORKERS)
        self._out(report.render())
        if self._csv:
            with open(self._csv, 'w', newline='') as stream:
                report.to_csv(stream)
        if not report.agrees:
            failures = report.failures()
            raise TableMismatchError('{} cells of table {} disagree'.format(len(failures), which),
                                     metadata={'cells': failures})

    def scan(self, species, F, lo, hi, n=1000, out=None):
        """Write M(delta) and its four components over [lo, hi] as CSV."""
        atom = self._record(species, F)
        result = scan_magic_distance(atom, None, self._theta, lo, hi, n)
        path = out or self._csv
        if path:
            result.write_csv(path)
            self._out('wrote {} rows to {}'.format(len(result.deltas), path))
        else:
            result.to_csv(sys.stdout)

    def stark(self, species, F, delta=None, intensity=1.0):
        """ac Stark shift per Zeeman state; delta defaults to the optimized detuning."""
        atom = self._record(species, F)
        delta = self._default_delta(atom) if delta is None else float(delta)
        shifts = stark_shifts(atom, None, self._theta, delta, intensity)
        self._out('{} F={} delta={:.4f} theta={:.6f}'.format(atom.species, atom.F, delta, self._theta))
        for m, shift in zip(atom.F.projections(), shifts):
            self._out('m={:>5} dE={:.9e}'.format(str(m), shift))
        fit = stark_decompose(atom, None, self._theta, delta)
        self._out('scalar={:.6e} vector={:.6e} tensor={:.6e} m_spread={:.3e}'.format(
            fit.scalar * intensity, fit.vector_coeff * intensity, fit.tensor_coeff * intensity, fit.m_spread))

    def _default_delta(self, atom):
        result = optimize_detuning(atom, theta=self._theta)
        if result.found:
            return result.delta_opt
        return compute_detunings(atom).delta_pi

    def cavity(self, species, F, g=1.0, omega=1.0, kappa=1.0, delta_c=0.0, phases=None, n_atoms=1,
               alternating=False, compensate=False, delta=None):
        """Effective cavity couplings per m and the multi-atom output field."""
        atom = self._record(species, F)
        if phases is None:
            phases = [(-1) ** k * math.pi / 2 if alternating else math.pi / 2 for k in range(int(n_atoms))]
        elif not isinstance(phases, (list, tuple)):
            phases = [phases]
        cfg = CavityConfig(g=g, omega_rabi=omega, kappa=kappa, delta_c=delta_c, theta=self._theta, phases=phases)
        delta = self._default_delta(atom) if delta is None else float(delta)

        params = effective_params(atom, None, cfg, delta)
        basis = parallel_basis_params(params, cfg.theta)
        self._out('{} F={} delta={:.4f} g={} omega={} kappa={} delta_c={}'.format(
            atom.species, atom.F, delta, cfg.g, cfg.omega_rabi, cfg.kappa, cfg.delta_c))
        names = ('U_a', 'U_b', 'omega', 'omega_tilde', 'h', 'eta_plus_ray', 'eta_minus_ray', 'eta_raman')
        self._out('{:>5} '.format('m') + ' '.join('{:>14}'.format(name) for name in names))
        for m in params.m_values:
            self._out('{:>5} '.format(str(m)) + ' '.join('{:>14.6e}'.format(params.at(name, m)) for name in names))
        self._out('U_par={:.6e} eta_par={:.6e} m_spread={:.3e}'.format(
            basis.U_par_mean, basis.eta_par_mean, basis.m_spread))

        if compensate:
            cfg = cfg.with_delta_c(compensated_detuning(cfg, basis.U_par_mean))
            self._out('compensated delta_c={:.6e}'.format(cfg.delta_c))
        state = multi_atom_steady_state(cfg, basis.U_par_mean, basis.eta_par_mean)
        single = multi_atom_steady_state(cfg.with_phases([math.pi / 2]).with_delta_c(delta_c),
                                         basis.U_par_mean, basis.eta_par_mean)
        ratio = state.photon_number / single.photon_number if single.photon_number else float('nan')
        self._out('atoms={} photon_number={:.6e} single_atom={:.6e} ratio={:.4f}'.format(
            len(cfg.phases), state.photon_number, single.photon_number, ratio))
        for warning in params.warnings:
            self._out('warning: {}'.format(warning))

    def magic(self, J, I):
        """Which F manifolds of a J -> J+1 line admit a single parallel root."""
        J, I = half(J), half(I)
        manifolds = magic_manifolds(I, J)
        low, high = abs(I - J), I + J
        for twice in range(high.twice_value, low.twice_value - 1, -2):
            F = HalfInt.from_twice(twice)
            existence = magic_exists(J, J + 1, F, I)
            self._out('F={:>5} n={:>3} D={:>12} {}'.format(str(F), str(high - F), str(existence.residual),
                                                         'magic' if F in manifolds else '-'))

    def diagnostic(self):
        """|delta_perp - delta_par| / |delta_par| against |B/A| for every capable row."""
        points = quadrupole_diagnostic(self._atoms)
        header = ('species', 'F', 'b_over_a', 'normalized_difference', 'manifold')
        rows = [(p.species, str(p.F), '{:.6g}'.format(p.b_over_a), '{:.6e}'.format(p.normalized_difference),
                 'upper' if p.upper_manifold else 'lower') for p in points]
        for row in rows:
            self._out('{:<8} {:>4} {:>10} {:>14} {}'.format(*row))
        if self._csv:
            with open(self._csv, 'w', newline='') as stream:
                writer = csv.writer(stream, lineterminator='\n')
                writer.writerow(header)
                writer.writerows(rows)
