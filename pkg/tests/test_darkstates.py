import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from giant_atom import (
    GiantAtomParams,
    StructuralImpossibilityError,
    characteristic_fn,
    dark_amplitude,
    dark_condition_omega_tau,
    dark_frequency,
    find_pairs,
    rwa_check,
    scan_lattice,
)
from conftest import brute_force_pairs

TWO_PI = 2.0 * math.pi


class TestSingleDarkStates:
    def test_condition_values(self):
        assert dark_condition_omega_tau(3, 1, TWO_PI * 0.018) / TWO_PI == \
            pytest.approx(0.3177, abs=5e-5)
        assert dark_condition_omega_tau(3, 4, TWO_PI * 0.073) / TWO_PI == \
            pytest.approx(1.2701, abs=5e-5)

    @pytest.mark.parametrize("n_legs,gamma_tau", [(4, 0.3), (6, 1.7), (8, 0.05)])
    def test_half_filling_is_pi(self, n_legs, gamma_tau):
        # cot(pi/2) = 0, so the condition pins omega_tau = pi exactly
        val = dark_condition_omega_tau(n_legs, n_legs // 2, gamma_tau)
        assert val == pytest.approx(math.pi, abs=1e-13)

    def test_singular_index_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            dark_condition_omega_tau(3, 3, 0.1)
        with pytest.raises(ValueError):
            dark_condition_omega_tau(3, 0, 0.1)
        with pytest.raises(ValueError):
            dark_condition_omega_tau(3, -2, 0.1)

    def test_amplitude_values(self):
        assert dark_amplitude(3, 1, 0.113097) == pytest.approx(0.815532, abs=5e-7)
        assert dark_amplitude(3, 16, 2.418399) == pytest.approx(0.171327, abs=5e-7)

    def test_amplitude_markov_limit(self):
        assert 1.0 - dark_amplitude(3, 1, 1e-9) < 1e-8

    def test_amplitude_multiple_of_n_legs(self):
        assert dark_amplitude(3, 6, 0.5) == 0.0

    @settings(max_examples=80, deadline=None)
    @given(n_legs=st.integers(2, 9), n=st.integers(1, 30), g2=st.floats(1e-3, 2.0))
    def test_amplitude_in_unit_interval(self, n_legs, n, g2):
        a = dark_amplitude(n_legs, n, TWO_PI * g2)
        assert 0.0 <= a < 1.0
        if n % n_legs:
            assert a > 0.0


class TestRwaCheck:
    def test_weak_coupling_point_ok(self, dark_n1_params):
        # relative detuning (N gamma / 2 Omega) cot(pi/3) ~ 0.049 < 0.1
        assert rwa_check(3, 1, dark_n1_params.gamma_tau, dark_n1_params.omega_tau)

    def test_nonpositive_index(self):
        assert not rwa_check(3, 0, 0.1, 2.0)
        assert not rwa_check(3, -4, 0.1, 2.0)

    def test_huge_gamma_fails(self):
        p = GiantAtomParams(3, TWO_PI * 5.0, TWO_PI * 0.3)
        omega_n = dark_frequency(3, 1)
        assert abs(omega_n - p.omega_tau) / p.omega_tau > 0.1
        assert not rwa_check(3, 1, p.gamma_tau, p.omega_tau)

    def test_threshold_configurable(self, dark_n1_params):
        assert not rwa_check(3, 1, dark_n1_params.gamma_tau,
                             dark_n1_params.omega_tau, threshold=0.01)


class TestFindPairs:
    def test_pair_551(self, pair_551):
        assert (pair_551.n1, pair_551.n2) == (16, 14)
        assert pair_551.omega_tau / TWO_PI == pytest.approx(5.0, rel=1e-15)
        assert pair_551.gamma_tau / TWO_PI == pytest.approx(0.384900, abs=5e-7)
        assert pair_551.beat == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
        a = dark_amplitude(3, 16, pair_551.gamma_tau)
        assert pair_551.osc_amplitude == pytest.approx(a * a, rel=1e-12)

    def test_smallest_lattice_point(self):
        pair = next(p for p in find_pairs(3, 2, 2) if (p.p, p.q, p.n) == (1, 1, 1))
        assert (pair.n1, pair.n2) == (4, 2)
        assert pair.omega_tau / TWO_PI == pytest.approx(1.0, rel=1e-15)
        assert pair.gamma_tau / TWO_PI == pytest.approx(0.38490, abs=5e-6)

    def test_shift_periodicity(self):
        pairs = {(p.p, p.q, p.n): p for p in find_pairs(3, 6, 6)}
        for (p, q, n), pair in pairs.items():
            if (p + 1, q + 1, n) in pairs:
                shifted = pairs[(p + 1, q + 1, n)]
                assert shifted.gamma_tau == pair.gamma_tau  # bitwise equal
                assert shifted.omega_tau - pair.omega_tau == pytest.approx(TWO_PI, abs=1e-12)

    def test_two_coupling_points_impossible(self):
        with pytest.raises(StructuralImpossibilityError, match="cotangent"):
            find_pairs(2)

    def test_pair_identities_exact(self):
        # both dark conditions, the energy matching, and the split frequencies
        # Omega +- (N gamma / 2) cot(n pi / N) all hold to 1e-12
        for n_legs in (3, 4, 5, 6, 7, 8):
            for pair in find_pairs(n_legs, 12, 12):
                for idx in (pair.n1, pair.n2):
                    cond = dark_condition_omega_tau(n_legs, idx, pair.gamma_tau)
                    assert abs(cond - pair.omega_tau) <= 1e-12
                w1 = dark_frequency(n_legs, pair.n1)
                w2 = dark_frequency(n_legs, pair.n2)
                assert abs(0.5 * (w1 + w2) - pair.omega_tau) <= 1e-12
                arg = pair.n * math.pi / n_legs
                split = 0.5 * n_legs * pair.gamma_tau * math.cos(arg) / math.sin(arg)
                assert abs(w1 - (pair.omega_tau + split)) <= 1e-12
                assert abs(w2 - (pair.omega_tau - split)) <= 1e-12
                assert abs((w1 - w2) - pair.beat) <= 1e-12

    def test_pairs_are_characteristic_roots(self):
        for pair in find_pairs(3, 3, 3)[:6]:
            params = GiantAtomParams(3, pair.gamma_tau, pair.omega_tau)
            for idx in (pair.n1, pair.n2):
                s = -1j * dark_frequency(3, idx)
                assert abs(characteristic_fn(params, s)) < 1e-10

    @pytest.mark.parametrize("n_legs", [3, 4, 5])
    def test_brute_force_oracle_equivalence(self, n_legs):
        brute = brute_force_pairs(n_legs)
        closed = {(p.n1, p.n2) for p in find_pairs(n_legs, 20, 20)
                  if p.n1 <= 60 and p.n2 <= 60}
        assert brute == closed


class TestScanLattice:
    def test_window_periodicity(self):
        scan = scan_lattice(3, TWO_PI * 6.0, TWO_PI * 1.0)
        assert len(scan.dots) > 0
        keyed = {(d.p, d.q, d.n): d for d in scan.dots}
        for (p, q, n), dot in keyed.items():
            if dot.omega_tau <= TWO_PI * 6.0 - TWO_PI:
                shifted = keyed[(p + 1, q + 1, n)]
                assert shifted.gamma_tau == dot.gamma_tau
                assert shifted.omega_tau - dot.omega_tau == pytest.approx(TWO_PI, abs=1e-12)

    def test_two_legs_has_no_dots(self):
        scan = scan_lattice(2, TWO_PI * 6.0, TWO_PI * 2.0)
        assert scan.dots == ()
        assert len(scan.lines) > 0  # single-dark-state lines still exist

    def test_every_dot_is_a_line_intersection(self):
        scan = scan_lattice(3, TWO_PI * 4.0, TWO_PI * 1.0)
        for dot in scan.dots:
            assert dot.n1 != dot.n2
            for idx in (dot.n1, dot.n2):
                cond = dark_condition_omega_tau(3, idx, dot.gamma_tau)
                assert abs(cond - dot.omega_tau) < 1e-10

    def test_lines_satisfy_condition(self):
        scan = scan_lattice(4, TWO_PI * 2.0, TWO_PI * 0.5)
        for line in scan.lines:
            for g, w in zip(line.gamma_tau[1:], line.omega_tau[1:]):
                assert dark_condition_omega_tau(4, line.n, g) == pytest.approx(w, abs=1e-12)
