"""Domain types and the characteristic function of the delayed relaxation problem.

Everything in this package works in dimensionless units: the travel time
between neighbouring coupling points is tau = 1 and the propagation speed is
v = 1, so the N coupling points sit at x_m = m - 1 for m = 1..N, times are
measured in units of tau and frequencies/rates in units of 1/tau.  The
Heaviside factor of every delayed term uses the convention Theta(0) = 1, so a
term switches on exactly at its onset sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TWO_PI",
    "GiantAtomParams",
    "ComplexFreq",
    "AmplitudeTrace",
    "FieldGrid",
    "DarkState",
    "DarkPair",
    "DivergenceError",
    "StructuralImpossibilityError",
    "IncompleteSearchError",
    "params_from_physical",
    "params_to_physical",
    "characteristic_fn",
    "characteristic_deriv",
]

TWO_PI = 2.0 * math.pi


class DivergenceError(RuntimeError):
    """A time integration produced a non-finite sample."""


class StructuralImpossibilityError(ValueError):
    """The requested object cannot exist for any parameter values."""


class IncompleteSearchError(RuntimeError):
    """A root search disagrees with the argument-principle count."""

    def __init__(self, found: int, expected: int):
        super().__init__(
            f"root search found {found} roots but the boundary winding number "
            f"predicts {expected}"
        )
        self.found = found
        self.expected = expected


@dataclass(frozen=True)
class GiantAtomParams:
    """Dimensionless description of an N-point emitter.

    n_legs is the number of coupling points N, gamma_tau the per-point
    relaxation rate times the neighbour travel time, and omega_tau the
    transition frequency times the travel time.
    """

    n_legs: int
    gamma_tau: float
    omega_tau: float

    def __post_init__(self):
        if isinstance(self.n_legs, bool) or int(self.n_legs) != self.n_legs:
            raise ValueError(f"n_legs must be an integer >= 2, got {self.n_legs!r}")
        if self.n_legs < 2:
            raise ValueError(f"n_legs must be >= 2, got {self.n_legs}")
        if not (math.isfinite(self.gamma_tau) and self.gamma_tau > 0):
            raise ValueError(f"gamma_tau must be positive and finite, got {self.gamma_tau}")
        if not (math.isfinite(self.omega_tau) and self.omega_tau > 0):
            raise ValueError(f"omega_tau must be positive and finite, got {self.omega_tau}")
        object.__setattr__(self, "n_legs", int(self.n_legs))

    @property
    def coupling_points(self) -> np.ndarray:
        """Positions x_m = m - 1 of the coupling points, in units of v*tau."""
        return np.arange(self.n_legs, dtype=float)


@dataclass(frozen=True)
class ComplexFreq:
    """A complex mode frequency s = re + i*im in units of 1/tau.

    Physical modes evolve as exp(s*t); re <= 0 is minus the decay rate and a
    dark (nondecaying) mode has |re| below tolerance.
    """

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"mode frequency components must be finite, got {self.re}, {self.im}")

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, s: complex) -> "ComplexFreq":
        s = complex(s)
        return cls(re=s.real, im=s.imag)

    def is_dark(self, tol: float = 1e-10) -> bool:
        return abs(self.re) < tol


@dataclass(frozen=True)
class AmplitudeTrace:
    """Sampled excited-state amplitude on a half-step grid.

    dt is the marching step tau/M; samples[k] holds beta(k * dt/2), so the
    stored resolution is twice the marching resolution (see the dde module
    for why the half steps exist).
    """

    dt: float
    samples: np.ndarray
    t_max: float

    @property
    def sample_times(self) -> np.ndarray:
        return 0.5 * self.dt * np.arange(len(self.samples))

    @property
    def steps_per_tau(self) -> int:
        return int(round(1.0 / self.dt))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.samples) ** 2


@dataclass(frozen=True)
class FieldGrid:
    """Field intensity sampled on a uniform spatial window at one instant."""

    x_min: float
    x_max: float
    dx: float
    values: np.ndarray
    t: float

    @property
    def xs(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(len(self.values))


@dataclass(frozen=True)
class DarkState:
    """A nondecaying mode: integer index, frequency, surviving amplitude,
    trapped-field intensity, and whether the rotating-wave regime holds."""

    n: int
    omega_n: float
    amplitude: float
    intensity: float
    rwa_ok: bool


@dataclass(frozen=True)
class DarkPair:
    """Two simultaneously dark indices n1 > n2 and the parameter point that
    forces them, recorded with their integer lattice coordinates (p, q, n):
    n1 = p*N + n and n2 = q*N - n."""

    n1: int
    n2: int
    p: int
    q: int
    n: int
    omega_tau: float
    gamma_tau: float
    beat: float
    osc_amplitude: float
    rwa_ok: bool


def params_from_physical(omega_hz: float, gamma_hz: float, tau_s: float,
                         n_legs: int) -> GiantAtomParams:
    """Build dimensionless parameters from lab-frame values.

    omega_hz and gamma_hz are ordinary (cycle) frequencies in Hz and tau_s the
    neighbour travel time in seconds, so omega_tau = 2*pi*omega_hz*tau_s and
    likewise for gamma.
    """
    for name, value in (("omega_hz", omega_hz), ("gamma_hz", gamma_hz), ("tau_s", tau_s)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{name} must be positive and finite, got {value}")
    if isinstance(n_legs, bool) or int(n_legs) != n_legs or n_legs < 2:
        raise ValueError(f"n_legs must be an integer >= 2, got {n_legs!r}")
    scale = TWO_PI * tau_s
    return GiantAtomParams(n_legs=int(n_legs),
                           gamma_tau=gamma_hz * scale,
                           omega_tau=omega_hz * scale)


def params_to_physical(params: GiantAtomParams, tau_s: float) -> tuple[float, float]:
    """Inverse of params_from_physical for a chosen travel time in seconds.

    Returns (omega_hz, gamma_hz) as ordinary cycle frequencies.
    """
    if not (math.isfinite(tau_s) and tau_s > 0):
        raise ValueError(f"tau_s must be positive and finite, got {tau_s}")
    scale = TWO_PI * tau_s
    return params.omega_tau / scale, params.gamma_tau / scale


def _as_complex_input(s):
    if isinstance(s, ComplexFreq):
        return complex(s), True
    if isinstance(s, np.ndarray):
        return s.astype(complex, copy=False), False
    return complex(s), True


def characteristic_fn(params: GiantAtomParams, s) -> complex:
    """Characteristic function F(s) whose zeros are the complex mode frequencies.

    F(s) = s + i*omega_tau + N*gamma_tau/2
           + gamma_tau * sum_{l=1}^{N-1} (N - l) * exp(-s*l)

    in 1/tau units.  Accepts a complex scalar, a ComplexFreq, or an ndarray of
    complex values (evaluated elementwise).
    """
    sv, scalar = _as_complex_input(s)
    n, g = params.n_legs, params.gamma_tau
    acc = 0.0
    for l in range(1, n):
        acc = acc + (n - l) * np.exp(-sv * l)
    out = sv + 1j * params.omega_tau + 0.5 * n * g + g * acc
    return complex(out) if scalar else out


def characteristic_deriv(params: GiantAtomParams, s) -> complex:
    """Analytic derivative F'(s) = 1 - gamma_tau * sum (N - l) * l * exp(-s*l).

    This is also the denominator of each pole's residue weight in the
    causal amplitude's pole-series reconstruction.
    """
    sv, scalar = _as_complex_input(s)
    n, g = params.n_legs, params.gamma_tau
    acc = 0.0
    for l in range(1, n):
        acc = acc + (n - l) * l * np.exp(-sv * l)
    out = 1.0 - g * acc
    return complex(out) if scalar else out
