import math

import pytest

from giant_atom import GiantAtomParams, dark_condition_omega_tau, find_pairs, integrate_beta

TWO_PI = 2.0 * math.pi


def brute_force_pairs(n_legs: int, n_max: int = 60) -> set[tuple[int, int]]:
    """Independent pair oracle: solve the two-condition system for every
    integer index pair and keep the physical, energy-matched solutions."""
    out = set()
    for n1 in range(2, n_max + 1):
        for n2 in range(1, n1):
            if n1 % n_legs == 0 or n2 % n_legs == 0:
                continue
            c1 = 1.0 / math.tan(n1 * math.pi / n_legs)
            c2 = 1.0 / math.tan(n2 * math.pi / n_legs)
            if abs(c1 - c2) < 1e-9:
                continue
            omega_tau = (2.0 * n1 * math.pi / n_legs
                         - (2.0 * (n1 - n2) * math.pi / n_legs) * c1 / (c1 - c2))
            gamma_tau = (4.0 * (n1 - n2) * math.pi / n_legs**2) / (c1 - c2)
            if omega_tau <= 0.0 or gamma_tau <= 0.0:
                continue
            # conserved total excitation forces the mean dark frequency to
            # equal the transition frequency
            if abs((n1 + n2) * math.pi / n_legs - omega_tau) > 1e-9:
                continue
            out.add((n1, n2))
    return out


def single_dark_params(n_legs: int, n: int, gamma_tau_2pi: float) -> GiantAtomParams:
    """Parameter point that makes index n exactly dark at the given coupling."""
    gamma_tau = TWO_PI * gamma_tau_2pi
    return GiantAtomParams(n_legs=n_legs, gamma_tau=gamma_tau,
                           omega_tau=dark_condition_omega_tau(n_legs, n, gamma_tau))


@pytest.fixture(scope="session")
def dark_n1_params():
    # weak-coupling single dark state, index 1 (gamma_tau/2pi = 0.018)
    return single_dark_params(3, 1, 0.018)


@pytest.fixture(scope="session")
def dark_n4_params():
    # stronger-coupling single dark state, index 4 (gamma_tau/2pi = 0.073)
    return single_dark_params(3, 4, 0.073)


@pytest.fixture(scope="session")
def pair_551():
    return next(p for p in find_pairs(3, 5, 5) if (p.p, p.q, p.n) == (5, 5, 1))


@pytest.fixture(scope="session")
def pair_551_params(pair_551):
    return GiantAtomParams(n_legs=3, gamma_tau=pair_551.gamma_tau,
                           omega_tau=pair_551.omega_tau)


@pytest.fixture(scope="session")
def dark_n1_trace_200(dark_n1_params):
    return integrate_beta(dark_n1_params, 200.0, 256)


@pytest.fixture(scope="session")
def pair_trace_130(pair_551_params):
    return integrate_beta(pair_551_params, 130.0, 256)
