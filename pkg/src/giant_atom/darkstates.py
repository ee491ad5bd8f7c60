"""Dark (nondecaying) modes: single-mode conditions, coexisting pairs, scans.

A mode with integer index n oscillates at dark_frequency(N, n) = 2*n*pi/N and
is dark exactly when the parameters satisfy

    omega_tau = 2*n*pi/N - (N*gamma_tau/2) * cot(n*pi/N),

in which case the atom keeps the amplitude
A(n) = 2 sin^2(n pi/N) / (2 sin^2(n pi/N) + N gamma_tau).

Two indices can be dark simultaneously only for N >= 3.  Requiring in
addition that the mean of the two dark frequencies equal the transition
frequency (which makes the total atom+field excitation conserved), the
solutions form an integer lattice (p, q, n) with p >= q >= 1, 1 <= n < N/2:

    n1 = p*N + n,   n2 = q*N - n,
    omega_tau = (p + q) * pi,
    gamma_tau = 2*pi * [(p - q)/N + 2*n/N^2] * tan(n*pi/N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, DarkPair, StructuralImpossibilityError

__all__ = [
    "DEFAULT_RWA_THRESHOLD",
    "dark_frequency",
    "dark_condition_omega_tau",
    "dark_amplitude",
    "rwa_check",
    "find_pairs",
    "LatticeLine",
    "LatticeScan",
    "scan_lattice",
]

# relative dark-mode detuning |Omega_n - Omega| / Omega beyond which the
# rotating-wave treatment is considered unreliable
DEFAULT_RWA_THRESHOLD = 0.1


def _check_index(n_legs: int, n: int, *, allow_multiple: bool = False) -> None:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"mode index must be an integer >= 1, got {n!r}")
    if not allow_multiple and n % n_legs == 0:
        raise ValueError(
            f"mode index n = {n} is a multiple of n_legs = {n_legs}: "
            "the cotangent in the dark condition is singular there"
        )


def dark_frequency(n_legs: int, n: int) -> float:
    """Frequency 2*n*pi/N of the candidate dark mode with index n (1/tau units)."""
    return TWO_PI * n / n_legs


def dark_condition_omega_tau(n_legs: int, n: int, gamma_tau: float) -> float:
    """Transition frequency that makes index n dark at the given gamma_tau.

    omega_tau = 2*n*pi/N - (N*gamma_tau/2) * cot(n*pi/N).
    """
    _check_index(n_legs, n)
    if not (math.isfinite(gamma_tau) and gamma_tau > 0):
        raise ValueError(f"gamma_tau must be positive, got {gamma_tau}")
    arg = n * math.pi / n_legs
    cot = math.cos(arg) / math.sin(arg)
    return TWO_PI * n / n_legs - 0.5 * n_legs * gamma_tau * cot


def dark_amplitude(n_legs: int, n: int, gamma_tau: float) -> float:
    """Long-time atomic amplitude A(n) of a dark mode; 0 for n a multiple of N."""
    _check_index(n_legs, n, allow_multiple=True)
    if not (math.isfinite(gamma_tau) and gamma_tau > 0):
        raise ValueError(f"gamma_tau must be positive, got {gamma_tau}")
    if n % n_legs == 0:
        return 0.0
    s2 = math.sin(n * math.pi / n_legs) ** 2
    return 2.0 * s2 / (2.0 * s2 + n_legs * gamma_tau)


def rwa_check(n_legs: int, n: int, gamma_tau: float, omega_tau: float,
              threshold: float = DEFAULT_RWA_THRESHOLD) -> bool:
    """True when the dark-mode detuning |Omega_n - Omega| / Omega is small.

    The default threshold 0.1 marks the usual beyond-rotating-wave cut; pass a
    stricter value for more conservative use.  n <= 0 is never acceptable.
    """
    if n < 1:
        return False
    detuning = abs(dark_frequency(n_legs, n) - omega_tau) / omega_tau
    return detuning <= threshold


def _lattice_pair(n_legs: int, p: int, q: int, n: int) -> DarkPair:
    tan = math.tan(n * math.pi / n_legs)
    gamma_tau = TWO_PI * ((p - q) / n_legs + 2.0 * n / n_legs**2) * tan
    omega_tau = (p + q) * math.pi
    n1 = p * n_legs + n
    n2 = q * n_legs - n
    beat = TWO_PI * (n1 - n2) / n_legs
    amp = dark_amplitude(n_legs, n1, gamma_tau) * dark_amplitude(n_legs, n2, gamma_tau)
    rwa = (rwa_check(n_legs, n1, gamma_tau, omega_tau)
           and rwa_check(n_legs, n2, gamma_tau, omega_tau))
    for idx in (n1, n2):
        resid = abs(dark_condition_omega_tau(n_legs, idx, gamma_tau) - omega_tau)
        if resid > 1e-10 * (1.0 + abs(omega_tau)):
            raise RuntimeError(
                f"lattice point (p={p}, q={q}, n={n}) fails the dark condition "
                f"for index {idx} by {resid:g}"
            )
    return DarkPair(n1=n1, n2=n2, p=p, q=q, n=n, omega_tau=omega_tau,
                    gamma_tau=gamma_tau, beat=beat, osc_amplitude=amp, rwa_ok=rwa)


def find_pairs(n_legs: int, p_max: int = 12, q_max: int = 12) -> list[DarkPair]:
    """All coexisting-dark-pair lattice points with p <= p_max, q <= q_max.

    Deterministically ordered by (omega_tau, gamma_tau, n).  Raises
    StructuralImpossibilityError for n_legs = 2, where the cotangent in the
    dark condition is either zero or infinite for every index and no pair can
    exist.
    """
    if n_legs < 2:
        raise ValueError(f"n_legs must be >= 2, got {n_legs}")
    if n_legs == 2:
        raise StructuralImpossibilityError(
            "coexisting dark pairs require at least three coupling points: for "
            "n_legs = 2 the cotangent in the dark condition degenerates to 0 or "
            "infinity for every mode index"
        )
    if p_max < 1 or q_max < 1:
        raise ValueError("p_max and q_max must be >= 1")
    pairs = [
        _lattice_pair(n_legs, p, q, n)
        for p in range(1, p_max + 1)
        for q in range(1, min(p, q_max) + 1)
        for n in range(1, (n_legs + 1) // 2 if n_legs % 2 else n_legs // 2)
    ]
    pairs.sort(key=lambda pr: (pr.omega_tau, pr.gamma_tau, pr.n))
    return pairs


@dataclass(frozen=True)
class LatticeLine:
    """One single-dark-state condition line omega_tau(gamma_tau) at fixed n."""

    n: int
    gamma_tau: np.ndarray
    omega_tau: np.ndarray


@dataclass(frozen=True)
class LatticeScan:
    """Window scan: coexisting-pair dots plus single-dark-state overlay lines."""

    n_legs: int
    omega_tau_max: float
    gamma_tau_max: float
    dots: tuple[DarkPair, ...]
    lines: tuple[LatticeLine, ...]


def scan_lattice(n_legs: int, omega_tau_max: float, gamma_tau_max: float,
                 line_samples: int = 201) -> LatticeScan:
    """Everything inside the (omega_tau, gamma_tau) window.

    Dots are the coexisting-pair lattice points (empty for n_legs = 2, where
    no pair exists); lines sample the single-dark-state condition for every
    index whose line crosses the window.
    """
    if n_legs < 2:
        raise ValueError(f"n_legs must be >= 2, got {n_legs}")
    if not (omega_tau_max > 0 and gamma_tau_max > 0):
        raise ValueError("window bounds must be positive")

    dots: list[DarkPair] = []
    n_range = range(1, (n_legs + 1) // 2 if n_legs % 2 else n_legs // 2)
    max_pq_sum = int(math.floor(omega_tau_max / math.pi + 1e-12))
    for pq_sum in range(2, max_pq_sum + 1):
        for q in range(1, pq_sum // 2 + 1):
            p = pq_sum - q
            for n in n_range:
                pair = _lattice_pair(n_legs, p, q, n)
                if pair.gamma_tau <= gamma_tau_max:
                    dots.append(pair)
    dots.sort(key=lambda pr: (pr.omega_tau, pr.gamma_tau, pr.n))

    lines: list[LatticeLine] = []
    max_cot = 1.0 / math.tan(math.pi / n_legs)
    n_bound = int(math.ceil(
        n_legs * (omega_tau_max + 0.5 * n_legs * gamma_tau_max * max_cot) / TWO_PI
    )) + 1
    gammas = np.linspace(0.0, gamma_tau_max, line_samples)
    for n in range(1, n_bound + 1):
        if n % n_legs == 0:
            continue
        arg = n * math.pi / n_legs
        cot = math.cos(arg) / math.sin(arg)
        omegas = TWO_PI * n / n_legs - 0.5 * n_legs * gammas * cot
        keep = (omegas > 0.0) & (omegas <= omega_tau_max)
        if keep.any():
            lines.append(LatticeLine(n=n, gamma_tau=gammas[keep], omega_tau=omegas[keep]))

    return LatticeScan(n_legs=n_legs, omega_tau_max=omega_tau_max,
                       gamma_tau_max=gamma_tau_max, dots=tuple(dots),
                       lines=tuple(lines))
