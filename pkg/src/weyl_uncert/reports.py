"""Report record shared by the spin-like and single-mode modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class UncertaintyReport:
    """Certainty functionals, Gram determinants, bound and slack.

    ``u`` is the sum of squared characteristic-function moduli, ``v`` their
    product, ``u_prime`` adds the squared cross term and ``u_double_prime``
    additionally the non-unitarity correction (single mode only; None for
    spin-like systems).

    ``bound`` is the applicable upper bound for ``u`` (and twice the bound
    for ``v``): the gamma-dependent bound for spin-like systems, 1 for the
    single mode.  ``applicable`` records whether the configuration sits at
    the stringent point (gamma = pi, resp. k*phi = pi) where the extended
    sum relations are derived; outside it the fields that have no derived
    bound are left as None.
    """

    u: float
    v: float
    u_prime: float | None
    u_double_prime: float | None
    det_plus: float
    det_minus: float
    bound: float
    applicable: bool
    slack_u: float | None
    slack_u_prime: float | None
    slack_u_double_prime: float | None
    slack_v: float | None
