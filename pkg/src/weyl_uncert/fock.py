"""Truncated single-mode phase and number machinery.

States are amplitude vectors over photon numbers 0..n_max.  The exponential
of phase is the one-sided-unitary operator E with E|n+1> = |n> (the
Susskind-Glogower shift); E^k acts as an index shift down, its adjoint as a
shift up, and exp(i phi n) as a diagonal phase.  All characteristic
functions are O(n_max) sums over amplitudes; dense operator matrices exist
only in the test oracles.

The two Gram matrices differ because E is not unitary: the second carries
the weight of the subspace with fewer than k photons (pi_k) on its
diagonal.  Their determinants and the derived certainty functionals
U, U', U'', V are produced by :func:`report`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .numerics import Hermitian3, det3
from .reports import UncertaintyReport

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FockState:
    """Unit-norm amplitudes c_0..c_{n_max} plus a certified truncation tail bound.

    ``tail_bound`` is an upper bound on the probability mass an analytic
    family constructor discarded; it is 0 for states given directly.
    """

    amplitudes: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self) -> None:
        c = np.asarray(self.amplitudes, dtype=complex).copy()
        if c.ndim != 1 or c.size < 1:
            raise ValueError("amplitudes must be a non-empty 1-D vector")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):g}")
        if self.tail_bound < 0.0:
            raise ValueError("tail_bound must be >= 0")
        c.flags.writeable = False
        object.__setattr__(self, "amplitudes", c)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1


@dataclass(frozen=True)
class FockCharSet:
    """Characteristic functions for one (k, phi) configuration.

    number_char = <exp(i phi n)>  (characteristic function of the photon
    number distribution), phase_char = <Edag^k> (conjugate characteristic
    function of the phase distribution), cross_char = <exp(-i phi n) Edag^k>,
    and pi_k is the population of photon numbers below k.
    """

    number_char: complex
    phase_char: complex
    cross_char: complex
    pi_k: float
    k: int
    phase_arg: float

    def __post_init__(self) -> None:
        for name in ("number_char", "phase_char", "cross_char"):
            if abs(getattr(self, name)) > 1.0 + 1e-12:
                raise ValueError(f"|{name}| exceeds 1: {abs(getattr(self, name))!r}")
        if not -1e-12 <= self.pi_k <= 1.0 + 1e-12:
            raise ValueError(f"pi_k out of [0, 1]: {self.pi_k!r}")


def _check_k(state: FockState, k: int) -> int:
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > state.n_max:
        raise ValueError(f"k = {k} exceeds the state's n_max = {state.n_max}")
    return k


def apply_lowering(state: FockState, k: int) -> np.ndarray:
    """Amplitudes of E^k psi: c'_n = c_{n+k}, top k entries zero.

    The result is generally unnormalized, so a raw vector is returned
    rather than a FockState.
    """
    k = _check_k(state, k)
    c = state.amplitudes
    out = np.zeros_like(c)
    out[:-k] = c[k:]
    return out


def apply_raising(state: FockState, k: int) -> np.ndarray:
    """Amplitudes of Edag^k psi: c'_n = c_{n-k}, bottom k entries zero.

    The adjoint shift is an exact isometry, so the returned vector grows by
    k slots instead of pushing the top amplitudes past the truncation;
    unlike the lowering direction the action never outgrows the state, so
    any k >= 1 is accepted.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    c = state.amplitudes
    out = np.zeros(c.size + k, dtype=complex)
    out[k:] = c
    return out


def apply_phase_shift(state: FockState, phi: float) -> FockState:
    """exp(i phi n) psi; norm preserving."""
    n = np.arange(state.amplitudes.size)
    return FockState(np.exp(1j * phi * n) * state.amplitudes, state.tail_bound)


def char_set(state: FockState, k: int, phi: float) -> FockCharSet:
    """Characteristic triple and pi_k by direct amplitude sums."""
    k = _check_k(state, k)
    c = state.amplitudes
    n = np.arange(c.size)
    probs = np.abs(c) ** 2
    number_char = complex(probs @ np.exp(1j * phi * n))
    pair = np.conj(c[k:]) * c[:-k]
    phase_char = complex(np.sum(pair))
    cross_char = complex(pair @ np.exp(-1j * phi * n[k:]))
    pi_k = float(np.sum(probs[:k]))
    return FockCharSet(number_char, phase_char, cross_char, pi_k, k, float(phi))


def stringent(k: int, phi: float) -> bool:
    """True when k*phi is congruent to pi (mod 2pi) within 1e-9."""
    return abs(math.remainder(k * phi - math.pi, 2.0 * math.pi)) <= 1e-9


def gram_matrices(cs: FockCharSet) -> tuple[Hermitian3, Hermitian3]:
    """The Gram matrices of {psi, exp(+-i phi n) psi, Edag^k / E^k psi}.

    The second one picks up exp(-i k phi) on the cross entry and 1 - pi_k
    on the last diagonal entry, both consequences of the one-sided
    unitarity of E.
    """
    g_plus = Hermitian3.from_upper(
        (1.0, 1.0, 1.0), (cs.number_char, cs.phase_char, cs.cross_char)
    )
    w = np.exp(-1j * cs.k * cs.phase_arg)
    g_minus = Hermitian3.from_upper(
        (1.0, 1.0, 1.0 - cs.pi_k),
        (cs.number_char.conjugate(), cs.phase_char.conjugate(), w * cs.cross_char.conjugate()),
    )
    return g_plus, g_minus


def gram_dets(state: FockState, k: int, phi: float) -> tuple[float, float]:
    """Both Gram determinants; each is >= 0 up to rounding for any state."""
    g_plus, g_minus = gram_matrices(char_set(state, k, phi))
    return det3(g_plus), det3(g_minus)


def report(state: FockState, k: int, phi: float) -> UncertaintyReport:
    """Certainty functionals U, U', U'', V with slacks at the stringent point.

    U'' includes the non-unitarity correction pi_k/2 * (1 - |number_char|^2).
    The unit bounds on all four functionals are only derived at
    k*phi = pi (mod 2pi); elsewhere the values are still reported but the
    slack fields are None.
    """
    cs = char_set(state, k, phi)
    g_plus, g_minus = gram_matrices(cs)
    det_plus, det_minus = det3(g_plus), det3(g_minus)
    ap, pp, cp = abs(cs.number_char), abs(cs.phase_char), abs(cs.cross_char)
    u = ap * ap + pp * pp
    u_prime = u + cp * cp
    u_double_prime = u_prime + 0.5 * cs.pi_k * (1.0 - ap * ap)
    v = ap * pp
    applicable = stringent(k, phi)
    return UncertaintyReport(
        u=u,
        v=v,
        u_prime=u_prime,
        u_double_prime=u_double_prime,
        det_plus=det_plus,
        det_minus=det_minus,
        bound=1.0,
        applicable=applicable,
        slack_u=(1.0 - u) if applicable else None,
        slack_u_prime=(1.0 - u_prime) if applicable else None,
        slack_u_double_prime=(1.0 - u_double_prime) if applicable else None,
        slack_v=(0.5 - v) if applicable else None,
    )


def phase_distribution(state: FockState, phi_grid: np.ndarray) -> np.ndarray:
    """Phase density P(phi) = |sum_n c_n exp(-i n phi)|^2 / (2 pi) on a grid.

    The grid should cover one period, e.g. [-pi, pi); with M points and
    M > 2 n_max the periodic trapezoid (equivalently rectangle) quadrature
    of P over the period is exact up to rounding.
    """
    grid = np.asarray(phi_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("phi_grid must be a 1-D grid with at least 2 points")
    amp = npoly.polyval(np.exp(-1j * grid), state.amplitudes)
    return np.abs(amp) ** 2 / (2.0 * math.pi)


def mean_photon(state: FockState) -> float:
    """Mean photon number sum_n n |c_n|^2."""
    n = np.arange(state.amplitudes.size)
    return float(n @ (np.abs(state.amplitudes) ** 2))


def random_state(n_max: int, rng: np.random.Generator) -> FockState:
    """Random truncated pure state: normalized standard complex Gaussian vector."""
    c = rng.standard_normal(n_max + 1) + 1j * rng.standard_normal(n_max + 1)
    return FockState(c / np.linalg.norm(c))
