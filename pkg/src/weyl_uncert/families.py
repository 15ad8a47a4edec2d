"""Constructors for the single-mode example state families.

Each family builds a truncated FockState with a certified tail bound, and
where closed-form characteristic functions exist they are provided for
cross-validation against the generic amplitude sums:

* number states |n>,
* normalized shift-operator eigenstates (geometric amplitudes xi^n),
* Gaussian number statistics exp(-(a+ib)(n-nbar)^2) in the wide, smooth
  regime (a << 1, nbar >> 1), where the closed forms are continuum
  approximations and give magnitudes only,
* eigenstates of (n + i lambda Edag) with eigenvalue 0, whose amplitudes
  are (-i lambda)^n / n! normalized by a modified Bessel function,
* coherent superpositions of a number state and a near-ideal phase state
  (asymptotic closed forms, |xi| -> 1).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from . import fock
from .fock import FockCharSet, FockState
from .numerics import bessel_i

TRUNCATION_CAP_ENV = "WEYL_UNCERT_MAX_NMAX"
DEFAULT_TRUNCATION_CAP = 4096

_TAIL_TARGET = 1e-14
_MIN_NMAX = 16


class ClosedFormUnavailable(ValueError):
    """The requested closed form does not apply for these parameters."""


class FamilySpecError(ValueError):
    """A family spec string failed to parse; carries the failing position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class NumberState:
    n: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be an integer >= 0, got {self.n}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class PhaseCoherent:
    xi: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi", complex(self.xi))
        if abs(self.xi) > 1.0 - 1e-6:
            raise ValueError(f"normalizability needs |xi| <= 1 - 1e-6, got |xi| = {abs(self.xi)!r}")


@dataclass(frozen=True)
class GaussianNumber:
    nbar: float
    a: float
    b: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.a <= 0.1:
            raise ValueError(f"validity window needs 0 < a <= 0.1, got a = {self.a!r}")
        if self.nbar < 5.0 / math.sqrt(self.a):
            raise ValueError(
                f"validity window needs nbar >= 5/sqrt(a) = {5.0 / math.sqrt(self.a):.3g}, "
                f"got nbar = {self.nbar!r}"
            )


@dataclass(frozen=True)
class BesselEigenstate:
    lam: float

    def __post_init__(self) -> None:
        if not 0.0 < self.lam <= 50.0:
            raise ValueError(f"lambda must be in (0, 50], got {self.lam!r}")


@dataclass(frozen=True)
class Intermediate:
    alpha: complex
    beta: complex
    n: int
    xi: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "xi", complex(self.xi))
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        s = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(s - 1.0) > 1e-6:
            raise ValueError(f"weights must satisfy |alpha|^2 + |beta|^2 = 1, got {s!r}")
        if abs(self.xi) > 1.0 - 1e-6:
            raise ValueError(f"normalizability needs |xi| <= 1 - 1e-6, got |xi| = {abs(self.xi)!r}")


FamilySpec = Union[NumberState, PhaseCoherent, GaussianNumber, BesselEigenstate, Intermediate]


@dataclass(frozen=True)
class CharMagnitudes:
    """Closed-form characteristic-function magnitudes (phases unspecified)."""

    abs_number_char: float
    abs_phase_char: float
    abs_cross_char: float
    pi_k: float


def truncation_cap() -> int:
    """Active n_max cap: the override environment variable or the default."""
    env = os.environ.get(TRUNCATION_CAP_ENV)
    if env:
        cap = int(env)
        if cap < _MIN_NMAX:
            raise ValueError(f"{TRUNCATION_CAP_ENV} must be >= {_MIN_NMAX}, got {cap}")
        return cap
    return DEFAULT_TRUNCATION_CAP


def _resolve_cap(max_nmax: int | None) -> int:
    return truncation_cap() if max_nmax is None else int(max_nmax)


def _cap_error(need: int, cap: int) -> ValueError:
    return ValueError(
        f"truncation cap exceeded: family needs n_max = {need} but the cap is {cap} "
        f"(raise it via {TRUNCATION_CAP_ENV} or the max_nmax argument)"
    )


def _geometric_nmax(t: float, cap: int) -> tuple[int, float]:
    # Smallest n_max with truncated mass t^(n_max+1) below the tail target.
    if t == 0.0:
        return _MIN_NMAX, 0.0
    need = max(_MIN_NMAX, math.ceil(math.log(_TAIL_TARGET) / math.log(t)))
    if need > cap:
        raise _cap_error(need, cap)
    return need, t ** (need + 1)


def build(spec: FamilySpec, max_nmax: int | None = None) -> FockState:
    """Normalized truncated state for a family spec, tail certified.

    Truncation points are chosen so the discarded probability mass is below
    1e-14 (the Bessel family aims far lower so its eigen-residual survives
    in an extended space); amplitudes are renormalized exactly on the
    truncated lattice.  Exceeding the n_max cap is an error.
    """
    cap = _resolve_cap(max_nmax)
    if isinstance(spec, NumberState):
        n_max = max(spec.n, 8)
        if n_max > cap:
            raise _cap_error(n_max, cap)
        c = np.zeros(n_max + 1, dtype=complex)
        c[spec.n] = 1.0
        return FockState(c, 0.0)

    if isinstance(spec, PhaseCoherent):
        t = abs(spec.xi) ** 2
        n_max, tail = _geometric_nmax(t, cap)
        idx = np.arange(n_max + 1)
        c = np.power(spec.xi, idx) * math.sqrt(1.0 - t)
        return FockState(c / np.linalg.norm(c), tail)

    if isinstance(spec, GaussianNumber):
        a, b, nbar = spec.a, spec.b, spec.nbar
        n_max = max(_MIN_NMAX, math.ceil(nbar + 6.0 / math.sqrt(2.0 * a)))
        if n_max > cap:
            raise _cap_error(n_max, cap)
        n = np.arange(n_max + 1)
        c = np.exp(-(a + 1j * b) * (n - nbar) ** 2)
        tail = 0.5 * math.erfc(math.sqrt(2.0 * a) * (n_max - nbar)) + 0.5 * math.erfc(
            math.sqrt(2.0 * a) * (nbar + 1.0)
        )
        return FockState(c / np.linalg.norm(c), tail)

    if isinstance(spec, BesselEigenstate):
        lam = spec.lam
        # Factorial decay is fast; push the tail far below the generic
        # target so the eigen-residual check keeps its 1e-8 headroom.
        target = 1e-22
        coeffs = [complex(1.0)]
        total = 1.0
        n = 0
        while True:
            n += 1
            coeffs.append(coeffs[-1] * (-1j * lam) / n)
            total += abs(coeffs[-1]) ** 2
            if n >= _MIN_NMAX and n + 2 > lam:
                t_next = abs(coeffs[-1]) ** 2 * (lam / (n + 1)) ** 2
                ratio = (lam / (n + 2)) ** 2
                rem = t_next / (1.0 - ratio)
                if rem < target * total:
                    tail = rem / total
                    break
            if n > cap:
                raise _cap_error(n, cap)
        c = np.asarray(coeffs)
        return FockState(c / np.linalg.norm(c), tail)

    if isinstance(spec, Intermediate):
        t = abs(spec.xi) ** 2
        n_max, geo_tail = _geometric_nmax(t, cap)
        n_max = max(n_max, spec.n + 1)
        if n_max > cap:
            raise _cap_error(n_max, cap)
        idx = np.arange(n_max + 1)
        c = spec.beta * math.sqrt(1.0 - t) * np.power(spec.xi, idx)
        c[spec.n] += spec.alpha
        tail = abs(spec.beta) ** 2 * geo_tail
        return FockState(c / np.linalg.norm(c), tail)

    raise TypeError(f"unknown family spec {spec!r}")


def closed_form_char(spec: FamilySpec, k: int, phi: float) -> FockCharSet | CharMagnitudes:
    """Closed-form characteristic functions where the family admits them.

    Number and phase-coherent states have exact complex closed forms; the
    intermediate family has asymptotic ones (|xi| -> 1).  The Gaussian and
    Bessel families are described by magnitude formulas only, so a
    CharMagnitudes record is returned for them.  Outside a family's valid
    regime this raises ClosedFormUnavailable instead of returning numbers
    that do not mean anything.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    if isinstance(spec, NumberState):
        return FockCharSet(
            number_char=complex(np.exp(1j * phi * spec.n)),
            phase_char=0.0j,
            cross_char=0.0j,
            pi_k=1.0 if spec.n < k else 0.0,
            k=k,
            phase_arg=float(phi),
        )

    if isinstance(spec, PhaseCoherent):
        t = abs(spec.xi) ** 2
        number = (1.0 - t) / (1.0 - t * np.exp(1j * phi))
        phase = np.conj(spec.xi) ** k
        cross = np.exp(-1j * k * phi) * phase * np.conj(number)
        return FockCharSet(
            number_char=complex(number),
            phase_char=complex(phase),
            cross_char=complex(cross),
            pi_k=1.0 - t**k,
            k=k,
            phase_arg=float(phi),
        )

    if isinstance(spec, GaussianNumber):
        if k > math.sqrt(spec.nbar):
            raise ClosedFormUnavailable(
                f"continuum forms need k <= sqrt(nbar): k = {k}, nbar = {spec.nbar!r}"
            )
        a, b = spec.a, spec.b
        e_number = -phi * phi / (8.0 * a)
        e_phase = -(a * a + b * b) * k * k / (2.0 * a)
        e_cross = e_number + e_phase + b * k * phi / (2.0 * a)
        return CharMagnitudes(
            abs_number_char=math.exp(e_number),
            abs_phase_char=math.exp(e_phase),
            abs_cross_char=math.exp(min(e_cross, 0.0)),
            pi_k=0.0,
        )

    if isinstance(spec, BesselEigenstate):
        lam = spec.lam
        i0 = bessel_i(0, 2.0 * lam).real
        w = 2.0 * lam * np.exp(1j * phi / 2.0)
        pi_k = 0.0
        term = 1.0
        for m in range(k):
            if m > 0:
                term *= (lam / m) ** 2
            pi_k += term
        return CharMagnitudes(
            abs_number_char=abs(bessel_i(0, w)) / i0,
            abs_phase_char=bessel_i(k, 2.0 * lam).real / i0,
            abs_cross_char=abs(bessel_i(k, w)) / i0,
            pi_k=pi_k / i0,
        )

    if isinstance(spec, Intermediate):
        if abs(spec.xi) < 0.99:
            raise ClosedFormUnavailable(
                f"asymptotic forms need |xi| >= 0.99, got |xi| = {abs(spec.xi)!r}"
            )
        wa = abs(spec.alpha) ** 2
        wb = abs(spec.beta) ** 2
        return FockCharSet(
            number_char=complex(wa * np.exp(1j * phi * spec.n)),
            phase_char=complex(wb * np.conj(spec.xi) ** k),
            cross_char=0.0j,
            pi_k=0.0,
            k=k,
            phase_arg=float(phi),
        )

    raise TypeError(f"unknown family spec {spec!r}")


# Aliasing guard for the Gaussian number-characteristic closed form: the
# continuum formula ignores the periodic images at phi +- 2pi, whose leading
# relative weight is exp(-pi (pi - |phi|) / a).
_ALIAS_LIMIT = 1e-4
_REPRESENTABLE = 1e-250


def _gaussian_deviation(spec: GaussianNumber, num: FockCharSet, cf: CharMagnitudes) -> float:
    phir = abs(math.remainder(num.phase_arg, 2.0 * math.pi))
    alias = math.exp(-math.pi * (math.pi - phir) / spec.a) if phir < math.pi else 1.0

    def rel(x: float, y: float) -> float:
        return abs(x - y) / y

    devs = [rel(abs(num.phase_char) ** 2, cf.abs_phase_char**2), abs(num.pi_k - cf.pi_k)]
    if alias < _ALIAS_LIMIT and cf.abs_number_char**2 >= _REPRESENTABLE:
        devs.append(rel(abs(num.number_char) ** 2, cf.abs_number_char**2))
        if cf.abs_cross_char**2 >= _REPRESENTABLE:
            devs.append(rel(abs(num.cross_char) ** 2, cf.abs_cross_char**2))
    return max(devs)


def oracle_check(spec: FamilySpec, k: int, phi: float, max_nmax: int | None = None) -> float:
    """Deviation between amplitude-sum and closed-form characteristic functions.

    Exact and asymptotic families compare complex values entrywise; the
    magnitude-only families compare moduli (relative in squared magnitude
    for the Gaussian, whose non-representable or alias-dominated components
    are excluded).  Raises ClosedFormUnavailable when no closed form
    applies.
    """
    cf = closed_form_char(spec, k, phi)
    num = fock.char_set(build(spec, max_nmax), k, phi)
    if isinstance(cf, FockCharSet):
        return max(
            abs(num.number_char - cf.number_char),
            abs(num.phase_char - cf.phase_char),
            abs(num.cross_char - cf.cross_char),
            abs(num.pi_k - cf.pi_k),
        )
    if isinstance(spec, GaussianNumber):
        return _gaussian_deviation(spec, num, cf)
    return max(
        abs(abs(num.number_char) - cf.abs_number_char),
        abs(abs(num.phase_char) - cf.abs_phase_char),
        abs(abs(num.cross_char) - cf.abs_cross_char),
        abs(num.pi_k - cf.pi_k),
    )


def gaussian_product_certainty(a: float, b: float, k: float) -> float:
    """Closed-form certainty product |number_char| * |phase_char| for the
    Gaussian family at the stringent phase phi = pi/k, with k treated as a
    continuous parameter (used to locate the product's stationary point)."""
    return math.exp(-math.pi**2 / (8.0 * a * k * k)) * math.exp(-(a * a + b * b) * k * k / (2.0 * a))


def with_param(spec: FamilySpec, name: str, value: float) -> FamilySpec:
    """Copy of a family spec with one sweepable parameter replaced.

    Parameter names follow the textual spec grammar; for the intermediate
    family 'alpha2' sets the number-state weight |alpha|^2 with real
    non-negative alpha, beta.
    """
    if isinstance(spec, NumberState) and name == "n":
        return NumberState(int(round(value)))
    if isinstance(spec, PhaseCoherent) and name == "xi":
        return PhaseCoherent(value)
    if isinstance(spec, GaussianNumber) and name in ("nbar", "a", "b"):
        return replace(spec, **{name: float(value)})
    if isinstance(spec, BesselEigenstate) and name in ("lambda", "lam"):
        return BesselEigenstate(float(value))
    if isinstance(spec, Intermediate):
        if name == "alpha2":
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"alpha2 must lie in [0, 1], got {value!r}")
            return replace(spec, alpha=math.sqrt(value), beta=math.sqrt(1.0 - value))
        if name == "xi":
            return replace(spec, xi=value)
        if name == "n":
            return replace(spec, n=int(round(value)))
    raise ValueError(f"family {type(spec).__name__} has no sweepable parameter {name!r}")


_FAMILY_KEYS: dict[str, tuple[set[str], set[str]]] = {
    # tag -> (required keys, optional keys)
    "number": ({"n"}, set()),
    "phase-coherent": ({"xi"}, set()),
    "gaussian": ({"nbar", "a"}, {"b"}),
    "bessel": ({"lambda"}, set()),
    "intermediate": ({"alpha2", "n", "xi"}, set()),
}


def parse_spec(text: str) -> FamilySpec:
    """Parse the canonical textual form, e.g. 'phase-coherent:xi=0.49'.

    Grammar: a family tag, then optional comma-separated key=value pairs,
    no spaces.  Errors carry the offending position in the string.
    """
    head, sep, rest = text.partition(":")
    if head not in _FAMILY_KEYS:
        raise FamilySpecError(f"unknown family {head!r}", 0)
    required, optional = _FAMILY_KEYS[head]
    allowed = required | optional
    values: dict[str, float] = {}
    pos = len(head) + 1
    parts = rest.split(",") if sep else []
    for part in parts:
        key, eq, val = part.partition("=")
        if not eq or not key:
            raise FamilySpecError(f"expected key=value, got {part!r}", pos)
        if key not in allowed:
            raise FamilySpecError(f"unknown key {key!r} for family {head!r}", pos)
        if key in values:
            raise FamilySpecError(f"duplicate key {key!r}", pos)
        try:
            values[key] = float(val)
        except ValueError:
            raise FamilySpecError(f"invalid number {val!r}", pos + len(key) + 1) from None
        pos += len(part) + 1
    missing = sorted(required - set(values))
    if missing:
        raise FamilySpecError(f"missing required key(s) {', '.join(missing)}", len(text))

    try:
        if head == "number":
            return NumberState(int(round(values["n"])))
        if head == "phase-coherent":
            return PhaseCoherent(values["xi"])
        if head == "gaussian":
            return GaussianNumber(values["nbar"], values["a"], values.get("b", 0.0))
        if head == "bessel":
            return BesselEigenstate(values["lambda"])
        a2 = values["alpha2"]
        if not 0.0 <= a2 <= 1.0:
            raise ValueError(f"alpha2 must lie in [0, 1], got {a2!r}")
        return Intermediate(
            alpha=math.sqrt(a2),
            beta=math.sqrt(1.0 - a2),
            n=int(round(values["n"])),
            xi=values["xi"],
        )
    except ValueError as err:
        raise FamilySpecError(str(err), len(head) + 1) from None


def _fmt_value(x: complex | float) -> str:
    x = complex(x)
    if x.imag == 0.0:
        r = x.real
        return str(int(r)) if r == int(r) else repr(r)
    return repr(x)


def format_spec(spec: FamilySpec) -> str:
    """Canonical textual form of a family spec."""
    if isinstance(spec, NumberState):
        return f"number:n={spec.n}"
    if isinstance(spec, PhaseCoherent):
        return f"phase-coherent:xi={_fmt_value(spec.xi)}"
    if isinstance(spec, GaussianNumber):
        return f"gaussian:nbar={_fmt_value(spec.nbar)},a={_fmt_value(spec.a)},b={_fmt_value(spec.b)}"
    if isinstance(spec, BesselEigenstate):
        return f"bessel:lambda={_fmt_value(spec.lam)}"
    if isinstance(spec, Intermediate):
        return (
            f"intermediate:alpha2={_fmt_value(abs(spec.alpha) ** 2)},"
            f"n={spec.n},xi={_fmt_value(spec.xi)}"
        )
    raise TypeError(f"unknown family spec {spec!r}")
