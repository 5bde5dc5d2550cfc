"""Entanglement of two-mode states at fixed global and marginal purities.

For fixed ``(mu1, mu2, mu)`` the negativity is a decreasing function of the
seralian, so the states on the two edges of the seralian interval are the
extremal ones:

* GMEMS (maximally entangled): lower edge, non-symmetric two-mode squeezed
  thermal states;
* GLEMS (least entangled): upper edge ``delta = 1 + 1/mu^2``, states with
  symplectic spectrum ``(1, 1/mu)``.

The purity space itself splits into separable / coexistence / entangled
regions, see :func:`classify`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DegenerateRegion, UnphysicalState
from .twomode import (
    StandardForm,
    TwoModeInvariants,
    delta_bounds,
    invariants_from_standard_form,
    mu_bounds,
    negativity_from_ppt,
    ppt_nu_minus,
    standard_form_from_invariants,
)


class Region(str, Enum):
    UNPHYSICAL = "unphysical"
    SEPARABLE = "separable"
    COEXISTENCE = "coexistence"
    ENTANGLED = "entangled"


class PurityThresholds(NamedTuple):
    product: float
    separable: float
    coexistence: float
    gmemms: float


@dataclass(frozen=True)
class EntanglementClass:
    tag: Region
    boundaries: PurityThresholds

    def to_dict(self) -> dict:
        return {"class": self.tag.value, "thresholds": self.boundaries._asdict()}


class SqueezedThermalParams(NamedTuple):
    nu_minus: float
    nu_plus: float
    r: float
    swapped: bool = False


def purity_thresholds(mu1, mu2):
    """Global-purity thresholds at fixed marginals (array friendly).

    Returns ``(product, separable, coexistence, gmemms)``:
    ``mu1 mu2``, ``mu1 mu2 / (mu1 + mu2 - mu1 mu2)``,
    ``mu1 mu2 / sqrt(mu1^2 + mu2^2 - mu1^2 mu2^2)`` and
    ``mu1 mu2 / (mu1 mu2 + |mu1 - mu2|)``.
    """
    prod, top = mu_bounds(mu1, mu2)
    sep = prod / (mu1 + mu2 - prod)
    coex = prod / np.sqrt(mu1**2 + mu2**2 - prod**2)
    return PurityThresholds(prod, sep, coex, top)


def region_of(mu1, mu2, mu) -> np.ndarray:
    """Vectorised :func:`classify`; returns an array of region names."""
    th = purity_thresholds(np.asarray(mu1, float), np.asarray(mu2, float))
    mu = np.asarray(mu, float)
    return np.select(
        [mu < th.product, mu > th.gmemms, mu <= th.separable, mu <= th.coexistence],
        [Region.UNPHYSICAL.value, Region.UNPHYSICAL.value, Region.SEPARABLE.value, Region.COEXISTENCE.value],
        default=Region.ENTANGLED.value,
    )


def classify(mu1: float, mu2: float, mu: float) -> EntanglementClass:
    """Place ``(mu1, mu2, mu)`` in the purity-space phase diagram.

    Edges are closed on the side of the lower region: a triple exactly on
    the separable threshold is separable, exactly on the coexistence
    threshold is coexistence.
    """
    if not (0.0 < mu1 <= 1.0 and 0.0 < mu2 <= 1.0) or mu <= 0.0:
        th = PurityThresholds(*(float("nan"),) * 4)
        return EntanglementClass(Region.UNPHYSICAL, th)
    th = PurityThresholds(*(float(t) for t in purity_thresholds(mu1, mu2)))
    return EntanglementClass(Region(str(region_of(mu1, mu2, mu))), th)


def _require_physical_purities(mu1, mu2, mu) -> EntanglementClass:
    cls = classify(mu1, mu2, mu)
    if cls.tag is Region.UNPHYSICAL:
        raise UnphysicalState(f"purities ({mu1}, {mu2}, {mu}) are outside the physical domain")
    return cls


# Extremal states.


def squeezed_thermal_standard_form(nu_minus: float, nu_plus: float, r: float) -> StandardForm:
    """Two-mode squeezing with parameter ``r`` applied to thermal modes
    with symplectic eigenvalues ``nu_minus`` (mode 1) and ``nu_plus`` (mode 2)."""
    ch2, sh2 = np.cosh(r) ** 2, np.sinh(r) ** 2
    c = 0.5 * (nu_minus + nu_plus) * np.sinh(2.0 * r)
    return StandardForm(
        float(nu_minus * ch2 + nu_plus * sh2),
        float(nu_minus * sh2 + nu_plus * ch2),
        float(c),
        float(-c),
    )


def gmems_parameters(mu1: float, mu2: float, mu: float) -> SqueezedThermalParams:
    """Squeezing and spectrum of the maximally entangled state.

    The squeezed thermal family puts the purer mode first, so ``mu1 < mu2``
    is handled by swapping the modes (``swapped=True``).
    """
    _require_physical_purities(mu1, mu2, mu)
    swapped = mu1 < mu2
    if swapped:
        mu1, mu2 = mu2, mu1
    prod = mu1 * mu2
    tanh2r = 2.0 * np.sqrt(max(prod - prod**2 / mu, 0.0)) / (mu1 + mu2)
    r = 0.5 * np.arctanh(min(tanh2r, 1.0))
    skew = (mu1 - mu2) ** 2 / prod**2
    nu_plus_sq = 1.0 / mu + 0.5 * skew + (abs(mu1 - mu2) / (2.0 * prod)) * np.sqrt(skew + 4.0 / mu)
    nu_minus_sq = 1.0 / (mu**2 * nu_plus_sq)
    return SqueezedThermalParams(float(np.sqrt(nu_minus_sq)), float(np.sqrt(nu_plus_sq)), float(r), swapped)


def gmems(mu1: float, mu2: float, mu: float) -> tuple[StandardForm, SqueezedThermalParams]:
    params = gmems_parameters(mu1, mu2, mu)
    sf = squeezed_thermal_standard_form(params.nu_minus, params.nu_plus, params.r)
    if params.swapped:
        sf = sf.swapped()
    return sf, params


def glems(mu1: float, mu2: float, mu: float) -> StandardForm:
    """Least entangled state: seralian ``1 + 1/mu^2``, spectrum ``(1, 1/mu)``.

    Such a state only exists at or above the separable threshold; inside the
    separable region every state has zero negativity and no state of
    partial minimum uncertainty matches the purities.
    """
    cls = _require_physical_purities(mu1, mu2, mu)
    if cls.tag is Region.SEPARABLE and mu < cls.boundaries.separable:
        raise UnphysicalState(
            f"no state with spectrum (1, 1/mu) has purities ({mu1}, {mu2}, {mu}); "
            "they lie inside the separable region"
        )
    return standard_form_from_invariants(TwoModeInvariants(mu1, mu2, mu, 1.0 + 1.0 / mu**2))


def memms_frontier(mu1: float, mu2: float) -> TwoModeInvariants:
    """Maximal global purity at fixed marginals, where the seralian interval
    collapses to a point."""
    if not (0.0 < mu1 <= 1.0 and 0.0 < mu2 <= 1.0):
        raise UnphysicalState(f"marginal purities must lie in (0, 1], got ({mu1}, {mu2})")
    mu = float(mu_bounds(mu1, mu2)[1])
    lo, _ = delta_bounds(mu1, mu2, mu)
    return TwoModeInvariants(float(mu1), float(mu2), mu, float(lo))


# Closed-form bounds (array friendly, no clamping, no region checks).


def max_negativity_raw(mu1, mu2, mu):
    """Negativity of the GMEMS at ``(mu1, mu2, mu)`` before clamping at zero.

    Algebraically equal to
    ``-1/2 ln[-1/mu + (s/(2 m^2))(s - sqrt(s^2 - 4 m^2/mu))]`` with
    ``s = mu1 + mu2`` and ``m = mu1 mu2``; rationalised here to
    ``ln[mu (s + sqrt(s^2 - 4 m^2/mu)) / (2 m)]`` to avoid cancellation.
    """
    s = mu1 + mu2
    m = mu1 * mu2
    root = np.sqrt(np.maximum(s**2 - 4.0 * m**2 / mu, 0.0))
    return np.log(mu * (s + root) / (2.0 * m))


def min_negativity_raw(mu1, mu2, mu):
    """Negativity of the GLEMS before clamping: ``-1/2 ln(x - sqrt(x^2 - 1/mu^2))``
    with ``x = 1/mu1^2 + 1/mu2^2 - 1/(2 mu^2) - 1/2``, rationalised."""
    x = 1.0 / mu1**2 + 1.0 / mu2**2 - 0.5 / mu**2 - 0.5
    root = np.sqrt(np.maximum((x - 1.0 / mu) * (x + 1.0 / mu), 0.0))
    return 0.5 * np.log(mu**2 * (x + root))


def negativity_bounds(mu1: float, mu2: float, mu: float) -> tuple[float, float]:
    """``(E_min, E_max)`` of the logarithmic negativity at fixed purities."""
    cls = _require_physical_purities(mu1, mu2, mu)
    if cls.tag is Region.SEPARABLE:
        return 0.0, 0.0
    e_max = max(0.0, float(max_negativity_raw(mu1, mu2, mu)))
    e_min = max(0.0, float(min_negativity_raw(mu1, mu2, mu)))
    if cls.tag is Region.COEXISTENCE:
        e_min = 0.0
    return min(e_min, e_max), e_max


def average_negativity(mu1: float, mu2: float, mu: float) -> tuple[float, float]:
    """Midpoint estimate of the negativity and its relative error
    ``(E_max - E_min) / (E_max + E_min)``."""
    e_min, e_max = negativity_bounds(mu1, mu2, mu)
    total = e_max + e_min
    if total == 0.0:
        raise DegenerateRegion(f"E_max + E_min = 0 at ({mu1}, {mu2}, {mu}); relative error undefined")
    return 0.5 * total, (e_max - e_min) / total


def extremal_invariants(mu1: float, mu2: float, mu: float) -> tuple[TwoModeInvariants, TwoModeInvariants | None]:
    """Invariants of the GMEMS and (when it exists) the GLEMS."""
    sf, _ = gmems(mu1, mu2, mu)
    lo = invariants_from_standard_form(sf)
    try:
        hi = invariants_from_standard_form(glems(mu1, mu2, mu))
    except UnphysicalState:
        hi = None
    return lo, hi


def negativity_along_delta(mu1, mu2, mu, delta):
    """Negativity at fixed purities as a function of the seralian (array friendly)."""
    return negativity_from_ppt(ppt_nu_minus(mu1, mu2, mu, delta))
