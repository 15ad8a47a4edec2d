"""Finite-dimensional Weyl pair: clock and shift operators on d levels.

A dimension-d system (d = 2j+1, with j integer or half-integer) carries the
unitary clock operator exp(i 2pi j3 / d) and the conjugate shift operator
whose eigenvectors are the phase states.  Basis labels m run over
-j, -j+1, ..., j in ascending order; array index = m + j.  The pair obeys
the Weyl commutation relation

    shift^k clock^l = exp(-i 2pi k l / d) clock^l shift^k

for all integers k, l, which is what every check in this module leans on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numerics import Hermitian3, det3
from .reports import UncertaintyReport

_NORM_TOL = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class SpinSystem:
    """A d-level system, d = 2j+1 >= 2."""

    dim: int

    def __post_init__(self) -> None:
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def j(self) -> float:
        return (self.dim - 1) / 2.0

    def m_values(self) -> np.ndarray:
        """Basis labels -j..j, ascending."""
        return np.arange(self.dim) - self.j


@dataclass(frozen=True)
class QuditState:
    """Unit-norm amplitude vector over the m basis of a SpinSystem."""

    system: SpinSystem
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.amplitudes, dtype=complex).copy()
        if c.shape != (self.system.dim,):
            raise ValueError(f"amplitudes must have shape ({self.system.dim},), got {c.shape}")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |norm - 1| = {abs(norm - 1.0):g}")
        c.flags.writeable = False
        object.__setattr__(self, "amplitudes", c)


@dataclass(frozen=True)
class SpinCharSet:
    """Characteristic-function triple for one (k, l) configuration.

    number_char = <clock^l>, phase_char = <shift^k>,
    cross_char = <clock^(-l) shift^k>.
    """

    number_char: complex
    phase_char: complex
    cross_char: complex
    k: int
    ell: int

    def __post_init__(self) -> None:
        for name in ("number_char", "phase_char", "cross_char"):
            if abs(getattr(self, name)) > 1.0 + 1e-12:
                raise ValueError(f"|{name}| exceeds 1: {abs(getattr(self, name))!r}")


@lru_cache(maxsize=128)
def _phase_basis(dim: int) -> np.ndarray:
    # Columns are the phase states; a centered discrete Fourier matrix.
    j = (dim - 1) / 2.0
    m = np.arange(dim) - j
    p = np.exp(-2j * np.pi * np.outer(m, m) / dim) / math.sqrt(dim)
    p.flags.writeable = False
    return p


def _unit_phases(dim: int, power: int) -> np.ndarray:
    # exp(i 2pi m q / d) for m = -j..j, with the exponent reduced in exact
    # integer arithmetic: 2 m q = (2t - d + 1) q with t = 0..d-1.
    t = np.arange(dim)
    num = ((2 * t - (dim - 1)) * power) % (2 * dim)
    return np.exp(1j * math.pi * num / dim)


@lru_cache(maxsize=4096)
def _shift_pow_cached(dim: int, kmod: int) -> np.ndarray:
    p = _phase_basis(dim)
    lam = _unit_phases(dim, kmod)
    out = (p * lam) @ p.conj().T
    out.flags.writeable = False
    return out


def _shift_pow(dim: int, k: int) -> np.ndarray:
    # exp(i 2pi m q / d) has period 2d in q once m may be half-integer.
    return _shift_pow_cached(dim, k % (2 * dim))


def _apply_clock(dim: int, ell: int, c: np.ndarray) -> np.ndarray:
    return _unit_phases(dim, ell) * c


def _apply_shift(dim: int, k: int, c: np.ndarray) -> np.ndarray:
    p = _phase_basis(dim)
    return p @ (_unit_phases(dim, k % (2 * dim)) * (p.conj().T @ c))


def phase_state(system: SpinSystem, m_tilde: float) -> QuditState:
    """Shift-operator eigenstate with label m_tilde in -j..j (integer steps).

    Amplitudes are exp(-i 2pi m m_tilde / d) / sqrt(d).
    """
    t = m_tilde + system.j
    ti = round(t)
    if abs(t - ti) > 1e-9 or not 0 <= ti < system.dim:
        raise ValueError(f"m_tilde must lie in -j..j in integer steps, got {m_tilde}")
    return QuditState(system, _phase_basis(system.dim)[:, int(ti)].copy())


def clock_op(system: SpinSystem) -> np.ndarray:
    """Diagonal unitary exp(i 2pi j3 / d)."""
    return np.diag(_unit_phases(system.dim, 1))


def shift_op(system: SpinSystem) -> np.ndarray:
    """Unitary with the phase states as eigenvectors, eigenvalues exp(i 2pi m_tilde / d).

    In the m basis this acts as a cyclic shift m -> m+1 with a wrap phase
    exp(-i 2pi j), i.e. a sign flip on wraparound when d is even.
    """
    return _shift_pow(system.dim, 1).copy()


def pauli_ops() -> tuple[np.ndarray, np.ndarray]:
    """The d=2 pair relabeled to the Pauli convention: (shift, clock) = (sigma_x, sigma_z).

    The relabeling multiplies both raw operators by the global phase i and
    conjugates by diag(1, -i); its residual is verified here before the
    exact Pauli matrices are returned.
    """
    sys2 = SpinSystem(2)
    u = np.diag([1.0 + 0.0j, -1.0j])
    e = 1j * (u @ shift_op(sys2) @ u.conj().T)
    f = 1j * (u @ clock_op(sys2) @ u.conj().T)
    resid = max(float(np.max(np.abs(e - SIGMA_X))), float(np.max(np.abs(f - SIGMA_Z))))
    if resid > 1e-12:
        raise ArithmeticError(f"Pauli relabeling residual {resid:g} exceeds 1e-12")
    return SIGMA_X.copy(), SIGMA_Z.copy()


def weyl_defect(system: SpinSystem, k: int, ell: int) -> float:
    """Max-entry magnitude of shift^k clock^l - exp(-i 2pi k l / d) clock^l shift^k."""
    d = system.dim
    ek = _shift_pow(d, k)
    f = _unit_phases(d, ell)
    lhs = ek * f[None, :]
    phase = np.exp(-2j * math.pi * ((k * ell) % d) / d)
    rhs = phase * (f[:, None] * ek)
    return float(np.max(np.abs(lhs - rhs)))


def weyl_angle(system: SpinSystem, k: int, ell: int) -> float:
    """gamma = 2pi k l / d reduced to (-pi, pi]."""
    q = (k * ell) % system.dim
    gamma = 2.0 * math.pi * q / system.dim
    if gamma > math.pi:
        gamma -= 2.0 * math.pi
    return gamma


def certainty_bound(gamma: float) -> float:
    """Upper bound for the sum of squared characteristic moduli at angle gamma.

    Evaluates 2*sqrt(2) * (sqrt(2) - sqrt(1 - cos g)) / (1 + cos g), which
    is 0/0 at g = pi; the removable singularity is replaced by its limit 1
    when |1 + cos g| < 1e-8.  Ranges over [1, 2] on (-pi, pi].
    """
    # Half-angle forms avoid cancellation in 1 -+ cos(gamma).
    s = abs(math.sin(gamma / 2.0))
    one_plus_cos = 2.0 * math.cos(gamma / 2.0) ** 2
    if one_plus_cos < 1e-8:
        return 1.0
    one_minus_cos = 2.0 * s * s
    return 2.0 * math.sqrt(2.0) * (math.sqrt(2.0) - math.sqrt(one_minus_cos)) / one_plus_cos


def char_set(state: QuditState, k: int, ell: int) -> SpinCharSet:
    """Characteristic functions <clock^l>, <shift^k>, <clock^(-l) shift^k>.

    The clock expectation is a diagonal sum, the shift expectation a
    diagonal sum in the phase basis; no operator matrices are formed.
    """
    d = state.system.dim
    c = state.amplitudes
    probs = np.abs(c) ** 2
    number_char = complex(probs @ _unit_phases(d, ell))
    b = _phase_basis(d).conj().T @ c
    phase_char = complex((np.abs(b) ** 2) @ _unit_phases(d, k % (2 * d)))
    v = _apply_clock(d, ell, c)
    w = _apply_shift(d, k, c)
    cross_char = complex(np.vdot(v, w))
    return SpinCharSet(number_char, phase_char, cross_char, k, ell)


def cyclic_phase(state: QuditState, k: int, ell: int) -> complex:
    """<shift^-k clock^-l shift^k clock^l>, the closed-excursion phase.

    Equals exp(-i 2pi k l / d) for every state.
    """
    d = state.system.dim
    w = _apply_clock(d, ell, state.amplitudes)
    w = _apply_shift(d, k, w)
    w = _apply_clock(d, -ell, w)
    w = _apply_shift(d, -k, w)
    return complex(np.vdot(state.amplitudes, w))


def gram_matrix(cs: SpinCharSet) -> Hermitian3:
    """Gram matrix of the vectors {psi, clock^l psi, shift^k psi}."""
    return Hermitian3.from_upper(
        (1.0, 1.0, 1.0), (cs.number_char, cs.phase_char, cs.cross_char)
    )


def gram_dets(state: QuditState, k: int, ell: int) -> tuple[float, float]:
    """Determinants of the Gram matrices for (k, l) and (-k, -l)."""
    det_plus = det3(gram_matrix(char_set(state, k, ell)))
    det_minus = det3(gram_matrix(char_set(state, -k, -ell)))
    return det_plus, det_minus


def report(state: QuditState, k: int, ell: int) -> UncertaintyReport:
    """Certainty relations for one state and one (k, l) configuration.

    The plain sum and the product are bounded for every gamma; the sum
    including the cross term is only bounded at gamma = pi, so outside that
    point it is reported as not applicable rather than checked against 1.
    """
    cs = char_set(state, k, ell)
    gamma = weyl_angle(state.system, k, ell)
    bound = certainty_bound(gamma)
    ap, pp = abs(cs.number_char), abs(cs.phase_char)
    u = ap * ap + pp * pp
    v = ap * pp
    applicable = abs(gamma - math.pi) <= 1e-9
    det_plus, det_minus = gram_dets(state, k, ell)
    u_prime = u + abs(cs.cross_char) ** 2 if applicable else None
    return UncertaintyReport(
        u=u,
        v=v,
        u_prime=u_prime,
        u_double_prime=None,
        det_plus=det_plus,
        det_minus=det_minus,
        bound=bound,
        applicable=applicable,
        slack_u=bound - u,
        slack_u_prime=(1.0 - u_prime) if applicable else None,
        slack_u_double_prime=None,
        slack_v=bound / 2.0 - v,
    )


def qubit_char(bloch, k: int = 1, ell: int = 1) -> SpinCharSet:
    """Characteristic set of a qubit state rho = (I + s.sigma)/2, Pauli convention.

    Clock = sigma_z and shift = sigma_x, so for odd k and l the triple is
    (s_z, s_x, i s_y); even powers of a Pauli matrix are the identity.
    Mixed states (|s| < 1) are allowed.
    """
    s = np.asarray(bloch, dtype=float)
    if s.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {s.shape}")
    if float(np.linalg.norm(s)) > 1.0 + 1e-12:
        raise ValueError(f"Bloch vector must satisfy |s| <= 1, got |s| = {np.linalg.norm(s)!r}")
    z_odd, x_odd = ell % 2 == 1, k % 2 == 1
    number_char = complex(s[2]) if z_odd else complex(1.0)
    phase_char = complex(s[0]) if x_odd else complex(1.0)
    if z_odd and x_odd:
        cross_char = 1j * s[1]
    elif z_odd:
        cross_char = complex(s[2])
    elif x_odd:
        cross_char = complex(s[0])
    else:
        cross_char = complex(1.0)
    return SpinCharSet(number_char, phase_char, cross_char, k, ell)


def random_state(system: SpinSystem, rng: np.random.Generator) -> QuditState:
    """Haar-like random pure state: normalized standard complex Gaussian vector."""
    c = rng.standard_normal(system.dim) + 1j * rng.standard_normal(system.dim)
    return QuditState(system, c / np.linalg.norm(c))
