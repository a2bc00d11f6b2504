import logging
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings as hsettings, strategies as st
from sympy.physics import wigner as oracle

from magicdetune.detunings import compute_detunings, condition_polynomial, solve_polynomial
from magicdetune.dipole import LINES
from magicdetune.exceptions import InvalidArgumentError, PoleError, VanishingNormalizerError
from magicdetune.polarizability import (COMPONENTS, DriveConfig, MagicDistanceForm, PolarizabilityTensor,
                                        condition_residuals, generalized_polarizability, magic_distance,
                                        magic_distance_components)
from magicdetune.wigner import HalfInt

logger = logging.getLogger(__name__)

QS = {'plus': 1, 'minus': -1, 'pi': 0}


def rational(value):
    return sympy.Rational(HalfInt(value).twice_value, 2)


def oracle_element(q, m, F, Fp, atom):
    m, F, Fp = rational(m), rational(F), rational(Fp)
    if Fp < 0 or abs(m + q) > Fp:
        return 0.0
    J, Jp, I = rational(atom.J), rational(atom.Jp), rational(atom.I)
    six = oracle.wigner_6j(J, Jp, 1, Fp, F, I)
    three = oracle.wigner_3j(F, 1, Fp, m, q, -m - q)
    return float((-1) ** (m - F) * sympy.sqrt(2 * Fp + 1) * six * three)


def brute_force_circular(atom, delta):
    """alpha for circular input and output by summing every intermediate F', m'."""
    F = atom.F
    ms = F.projections()
    dim = len(ms)
    out = np.zeros((2, 3, dim, dim))
    for line in atom.lines:
        Fp = F + line
        x = 1.0 / (delta + float(atom.zeta(line)))
        for ii, inp in enumerate(('plus', 'minus')):
            for oi, outp in enumerate(('plus', 'minus', 'pi')):
                for mi, m in enumerate(ms):
                    for ni, n in enumerate(ms):
                        if m.value + QS[inp] != n.value + QS[outp]:
                            continue
                        out[ii, oi, ni, mi] -= x * oracle_element(QS[inp], m, F, Fp, atom) * \
                            oracle_element(QS[outp], n, F, Fp, atom)
    return out


class TestTensor:
    @pytest.mark.parametrize('species,F,delta', [('87Rb', 1, 391.2), ('87Rb', 2, -120.0), ('6Li', '3/2', 7.5)])
    def test_matches_brute_force(self, registry, species, F, delta):
        atom = registry.lookup(species, F)
        tensor = generalized_polarizability(atom, DriveConfig(math.pi / 4, delta))
        expected = brute_force_circular(atom, delta)
        scale = np.max(np.abs(expected))
        assert np.max(np.abs(tensor.circular - expected)) <= 1e-12 * scale

    def test_pi_diagonal_vanishes(self, registry):
        for atom in registry:
            tensor = generalized_polarizability(atom, DriveConfig(0.3, 123.4))
            assert np.all(np.diag(tensor.component('pi')) == 0.0)

    def test_reflection_symmetry(self, registry):
        atom = registry.lookup('87Rb', 2)
        tensor = generalized_polarizability(atom, DriveConfig(math.pi / 4, 77.7))
        assert tensor.circular_entry('plus', 'minus', 2, 0) != 0.0
        assert tensor.circular_entry('minus', 'plus', -2, 0) == pytest.approx(
            tensor.circular_entry('plus', 'minus', 2, 0), rel=1e-12)
        for m in atom.F.projections():
            assert tensor.circular_entry('minus', 'minus', -m, -m) == pytest.approx(
                tensor.circular_entry('plus', 'plus', m, m), rel=1e-12)

    def test_cs_near_ideal(self, cs133):
        tensor = generalized_polarizability(cs133, DriveConfig(math.pi / 4, 452.99))
        norm = tensor.normalizer
        off = ~np.eye(tensor.dim, dtype=bool)
        ratios = np.concatenate([tensor.component('parallel')[off], tensor.component('perpendicular').ravel(),
                                 tensor.component('pi').ravel()]) / norm
        assert np.max(np.abs(ratios)) <= 6e-4

    def test_pole(self, rb87):
        with pytest.raises(PoleError) as exc:
            generalized_polarizability(rb87, DriveConfig(math.pi / 4, 156.9))
        assert exc.value.resonance == 2
        assert isinstance(exc.value, InvalidArgumentError)

    @pytest.mark.parametrize('theta', [-0.1, 2.0, float('nan')])
    def test_bad_polarization(self, theta):
        with pytest.raises(InvalidArgumentError):
            DriveConfig(theta, 10.0)

    def test_vanishing_normalizer(self):
        entries = np.ones((5, 3, 3))
        entries[0, 1, 1] = 0.0
        tensor = PolarizabilityTensor(F=HalfInt(1), theta=math.pi / 4, delta=1.0, entries=entries,
                                      circular=np.zeros((2, 3, 3, 3)))
        with pytest.raises(VanishingNormalizerError):
            tensor.distance_components()


class TestConditionResiduals:
    @pytest.mark.parametrize('species,F', [('87Rb', 1), ('133Cs', 4), ('43Ca+', 3), ('6Li', '3/2')])
    def test_residuals_vanish_at_condition_detunings(self, registry, species, F):
        atom = registry.lookup(species, F)
        detunings = compute_detunings(atom)
        for root in detunings.delta_perp:
            assert condition_residuals(atom, None, root).perp_residual < 1e-10
        at_parallel = condition_residuals(atom, None, detunings.delta_parallel)
        assert at_parallel.parallel_residual < 1e-10
        assert at_parallel.raman_circ_residual < 1e-10
        assert condition_residuals(atom, None, detunings.delta_pi).raman_pi_scalar_residual < 1e-10

    def test_residuals_elsewhere(self, rb87):
        residuals = condition_residuals(rb87, 1, 1000.0)
        assert min(residuals.as_dict().values()) > 1e-6

    def test_wrong_manifold(self, rb87):
        with pytest.raises(InvalidArgumentError):
            condition_residuals(rb87, 2, 100.0)


class TestMagicDistance:
    @pytest.mark.parametrize('species,F,delta,expected', [
        ('133Cs', 3, 453.014, 1.437e-7),
        ('133Cs', 3, 452.99, 1.478e-7),
        ('87Rb', 1, 389.967, 4.733e-5),
        ('87Rb', 1, 391.2, 5.116e-5),
    ])
    def test_pinned_values(self, registry, species, F, delta, expected):
        atom = registry.lookup(species, F)
        assert magic_distance(atom, F, math.pi / 4, delta) == pytest.approx(expected, rel=0.02)

    def test_components_at_printed_rubidium_optimum(self, rb87):
        components = magic_distance_components(rb87, 1, math.pi / 4, 391.2)
        assert components['perp_rayleigh'] == pytest.approx(4.06e-6, rel=0.02)
        assert components['par_rayleigh'] == pytest.approx(1.076e-5, rel=0.02)
        assert components['raman_circ'] == pytest.approx(2 * 1.076e-5, rel=0.02)
        assert components['raman_pi'] == pytest.approx(2 * 7.41e-6, rel=0.02)

    @hsettings(max_examples=50, deadline=None)
    @given(st.floats(-2000, 2000), st.floats(0, math.pi / 2))
    def test_nonnegative(self, delta, theta):
        from magicdetune.atomic_data import BuiltinRegistry
        atom = BuiltinRegistry().lookup('87Rb', 2)
        assume(min(abs(delta + z) for z in (-266.7, 0.0, 156.9)) > 1e-3)
        try:
            value = magic_distance(atom, None, theta, delta)
        except VanishingNormalizerError:
            return
        assert value >= 0

    def test_quadratic_form_agrees(self, registry):
        atom = registry.lookup('85Rb', 3)
        form = MagicDistanceForm(atom, 0.4)
        deltas = np.array([-300.0, -50.0, 12.5, 140.0, 600.0])
        components = form.components(deltas)
        for i, delta in enumerate(deltas):
            direct = magic_distance_components(atom, None, 0.4, delta)
            for name in COMPONENTS:
                assert components[name][i] == pytest.approx(direct[name], rel=1e-9, abs=1e-15)
            assert form(delta) == pytest.approx(magic_distance(atom, None, 0.4, delta), rel=1e-9)

    def test_quadratic_form_masks_poles(self, rb87):
        form = MagicDistanceForm(rb87, math.pi / 4)
        values = form.total([156.9, 200.0])
        assert np.isnan(values[0])
        assert np.isfinite(values[1])

    def test_pole_radius_masks_every_component(self, rb87):
        form = MagicDistanceForm(rb87, math.pi / 4)
        deltas = [156.9 + 5e-7, 156.9 + 0.5, 0.25, 200.0]
        narrow = form.components(deltas)
        wide = form.components(deltas, pole_radius=1.0)
        for name in COMPONENTS:
            assert np.isnan(narrow[name][0]) and np.isfinite(narrow[name][1:]).all()
            assert np.isnan(wide[name][:3]).all() and np.isfinite(wide[name][3])
        with pytest.raises(PoleError):
            magic_distance(rb87, 1, math.pi / 4, 156.9 + 5e-7)

    def test_vanishing_normalizer_at_root(self, rb87):
        form = MagicDistanceForm(rb87, math.pi / 4)
        weights = {line: Fraction(float(w)) for line, w in zip(LINES, form.normalizer)}
        zetas = {line: rb87.zeta(line) for line in rb87.lines}
        roots = solve_polynomial('normalizer', condition_polynomial(weights, zetas))
        assert len(roots) == 1
        root = roots[0]
        assert 0.0 < root < 156.9

        components = form.components([root, root + 1.0])
        for name in COMPONENTS:
            assert np.isnan(components[name][0])
            assert np.isfinite(components[name][1])
        with pytest.raises(VanishingNormalizerError):
            magic_distance(rb87, 1, math.pi / 4, root)
