"""Two-mode Gaussian states in terms of their four symplectic invariants.

A two-mode state is fixed, up to local symplectic operations, by the
marginal purities ``mu1, mu2``, the global purity ``mu`` and the seralian
``delta = Det alpha + Det beta + 2 Det gamma``. This module converts
between that description and the standard form ``(a, b, c+, c-)`` and
evaluates the partially transposed spectrum and the logarithmic negativity
in closed form.

The array-level helpers (``delta_range``, ``nu_minus``, ``ppt_nu_minus`` ...)
broadcast over numpy arrays; the record-level functions take a
:class:`TwoModeInvariants`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import UnphysicalState
from .symplectic import as_array, block, require_physical

TOL = 1e-9


def _slack(x) -> np.ndarray:
    return TOL * np.maximum(1.0, np.abs(x))


class TwoModeInvariants(NamedTuple):
    mu1: float
    mu2: float
    mu: float
    delta: float


class StandardForm(NamedTuple):
    a: float
    b: float
    c_plus: float
    c_minus: float

    def matrix(self) -> np.ndarray:
        a, b, cp, cm = self
        return np.array(
            [
                [a, 0.0, cp, 0.0],
                [0.0, a, 0.0, cm],
                [cp, 0.0, b, 0.0],
                [0.0, cm, 0.0, b],
            ]
        )

    def swapped(self) -> "StandardForm":
        return StandardForm(self.b, self.a, self.c_plus, self.c_minus)


# Physical domain of the invariants.


def mu_bounds(mu1, mu2):
    """Global purity interval at fixed marginals: product states below,
    maximally entangled states for fixed marginal mixedness above."""
    prod = mu1 * mu2
    return prod, prod / (prod + np.abs(mu1 - mu2))


def delta_bounds(mu1, mu2, mu):
    """Seralian interval ``[2/mu + (mu1-mu2)^2/(mu1 mu2)^2, 1 + 1/mu^2]``.

    The upper edge is attained only outside the separable region; see
    :func:`delta_range` for the attainable interval.
    """
    lo = 2.0 / mu + (mu1 - mu2) ** 2 / (mu1 * mu2) ** 2
    hi = 1.0 + 1.0 / mu**2
    return lo, hi


def realizable_delta_max(mu1, mu2, mu):
    """Largest seralian for which the standard-form correlation ``c+ - c-``
    stays real: ``(1/mu1 + 1/mu2)^2 - 2/mu``."""
    return (1.0 / mu1 + 1.0 / mu2) ** 2 - 2.0 / mu


def delta_range(mu1, mu2, mu):
    """Attainable seralian interval at fixed purities."""
    lo, hi = delta_bounds(mu1, mu2, mu)
    return lo, np.minimum(hi, realizable_delta_max(mu1, mu2, mu))


# Spectra from invariants (array-friendly).


def _pair_from_sum_product(total, inv_mu):
    """Given ``x+ + x- = total`` (squares) and ``x- x+ = inv_mu``, return
    ``(sqrt(x-), sqrt(x+))``. The smaller root is taken from the product to
    avoid cancellation."""
    disc = (total - 2.0 * inv_mu) * (total + 2.0 * inv_mu)
    disc = np.where((disc < 0.0) & (disc > -_slack(total**2)), 0.0, disc)
    root = np.sqrt(disc)
    upper = 0.5 * (total + root)
    lower = inv_mu**2 / upper
    return np.sqrt(lower), np.sqrt(upper)


def ppt_seralian(mu1, mu2, delta):
    return -delta + 2.0 / mu1**2 + 2.0 / mu2**2


def nu_pair(mu, delta):
    return _pair_from_sum_product(delta, 1.0 / mu)


def ppt_nu_pair(mu1, mu2, mu, delta):
    return _pair_from_sum_product(ppt_seralian(mu1, mu2, delta), 1.0 / mu)


def ppt_nu_minus(mu1, mu2, mu, delta):
    return ppt_nu_pair(mu1, mu2, mu, delta)[0]


def negativity_from_ppt(nu_t_minus):
    # + 0.0 turns the -0.0 of a pure product state into 0.0
    return np.maximum(0.0, -np.log(nu_t_minus)) + 0.0


def _check_real_pair(total, mu, what: str):
    disc = (total - 2.0 / mu) * (total + 2.0 / mu)
    if disc < -_slack(total**2):
        raise UnphysicalState(f"{what} symplectic eigenvalues are not real (discriminant {disc:.3e})")
    if total <= 0.0:
        raise UnphysicalState(f"{what} seralian must be positive, got {total}")


def symplectic_eigs(inv: TwoModeInvariants) -> tuple[float, float]:
    mu1, mu2, mu, delta = inv
    _check_real_pair(delta, mu, "global")
    lo, hi = nu_pair(mu, delta)
    return float(lo), float(hi)


def ppt_symplectic_eigs(inv: TwoModeInvariants) -> tuple[float, float]:
    """``(nu~-, nu~+)`` of the partial transpose, from the invariants alone."""
    mu1, mu2, mu, delta = inv
    _check_real_pair(ppt_seralian(mu1, mu2, delta), mu, "partially transposed")
    lo, hi = ppt_nu_pair(mu1, mu2, mu, delta)
    return float(lo), float(hi)


def two_mode_negativity(inv: TwoModeInvariants) -> float:
    return float(negativity_from_ppt(ppt_symplectic_eigs(inv)[0]))


# Validation.


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    lower: float
    value: float
    upper: float

    @property
    def margin(self) -> float:
        """Distance to the nearest bound; negative when violated."""
        return min(self.value - self.lower, self.upper - self.value)

    @property
    def passed(self) -> bool:
        slack = TOL * max(1.0, abs(self.lower), abs(self.upper))
        return bool(self.margin >= -slack)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lower": self.lower,
            "value": self.value,
            "upper": self.upper,
            "margin": self.margin,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ConstraintCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> ConstraintCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def validate_invariants(mu1: float, mu2: float, mu: float, delta: float) -> ValidationReport:
    """Check the four invariants against the physical domain; never raises.

    Checks: ``mu1``/``mu2`` in (0, 1]; ``mu`` between the product and
    maximal-purity bounds; ``delta`` within its printed interval; and
    ``delta`` below the standard-form realizability edge.
    """
    mu1, mu2, mu, delta = (float(v) for v in (mu1, mu2, mu, delta))
    checks = [
        ConstraintCheck("marginal_purity_1", 0.0, mu1, 1.0),
        ConstraintCheck("marginal_purity_2", 0.0, mu2, 1.0),
    ]
    if min(mu1, mu2) <= 0.0 or mu <= 0.0:
        # remaining bounds are undefined without positive purities
        checks.append(ConstraintCheck("global_purity", 0.0, mu, 1.0))
        return ValidationReport(tuple(checks))
    lo, hi = mu_bounds(mu1, mu2)
    checks.append(ConstraintCheck("global_purity", float(lo), mu, float(hi)))
    dlo, dhi = delta_bounds(mu1, mu2, mu)
    checks.append(ConstraintCheck("seralian", float(dlo), delta, float(dhi)))
    checks.append(
        ConstraintCheck("seralian_realizable", float(dlo), delta, float(realizable_delta_max(mu1, mu2, mu)))
    )
    return ValidationReport(tuple(checks))


def snap_to_domain(inv: TwoModeInvariants) -> TwoModeInvariants:
    """Clip invariants that sit outside the physical domain by rounding
    noise only (caller must have validated them) back onto its edges."""
    mu1, mu2, mu, delta = (float(v) for v in inv)
    mu1, mu2 = min(mu1, 1.0), min(mu2, 1.0)
    lo, hi = mu_bounds(mu1, mu2)
    mu = float(np.clip(mu, lo, hi))
    dlo, dhi = delta_range(mu1, mu2, mu)
    delta = float(np.clip(delta, dlo, max(dlo, dhi)))
    return TwoModeInvariants(mu1, mu2, mu, delta)


def require_valid(inv: TwoModeInvariants) -> TwoModeInvariants:
    """Validate within tolerance and return the invariants snapped onto the
    physical domain."""
    report = validate_invariants(*inv)
    if not report.ok:
        raise UnphysicalState(f"invariants {tuple(inv)} violate {', '.join(report.failures)}")
    return snap_to_domain(inv)


# Conversions.


def invariants_from_cm(cm) -> TwoModeInvariants:
    """Marginal purities, global purity and seralian of a two-mode CM
    (not necessarily in standard form)."""
    sigma = as_array(cm)
    if sigma.shape != (4, 4):
        raise ValueError("invariants_from_cm expects a two-mode (4x4) covariance matrix")
    det_a = np.linalg.det(block(sigma, 0, 0))
    det_b = np.linalg.det(block(sigma, 1, 1))
    det_c = np.linalg.det(block(sigma, 0, 1))
    det_s = np.linalg.det(sigma)
    if min(det_a, det_b, det_s) <= 0.0:
        raise UnphysicalState("covariance matrix is not positive definite")
    inv = TwoModeInvariants(
        float(det_a**-0.5), float(det_b**-0.5), float(det_s**-0.5), float(det_a + det_b + 2.0 * det_c)
    )
    return require_valid(inv)


def _radical(x, what: str) -> float:
    # x is a relative radicand; boundary states land on 0 up to rounding
    if x < -TOL:
        raise UnphysicalState(f"negative radicand in {what}: {x:.3e}")
    return float(np.sqrt(max(x, 0.0)))


def standard_form_from_invariants(inv: TwoModeInvariants) -> StandardForm:
    """Standard form with ``c+ >= |c-|``, ``c+ >= 0``."""
    mu1, mu2, mu, delta = require_valid(TwoModeInvariants(*map(float, inv)))
    a, b = 1.0 / mu1, 1.0 / mu2
    two_over_mu = 2.0 / mu
    # (delta - x)^2 - 4/mu^2 factored so the distance to each edge is explicit
    to_lower = delta - (a - b) ** 2 - two_over_mu
    to_upper = (a + b) ** 2 - two_over_mu - delta
    scale = max(two_over_mu, delta)
    eps_m = _radical(to_lower / scale, "epsilon-") * np.sqrt(scale * (delta - (a - b) ** 2 + two_over_mu))
    eps_p = _radical(to_upper / scale, "epsilon+") * np.sqrt(scale * ((a + b) ** 2 + two_over_mu - delta))
    k = np.sqrt(mu1 * mu2) / 4.0
    return StandardForm(a, b, float(k * (eps_m + eps_p)), float(k * (eps_m - eps_p)))


def standard_form_cm(inv: TwoModeInvariants) -> np.ndarray:
    return standard_form_from_invariants(inv).matrix()


def invariants_from_standard_form(sf: StandardForm) -> TwoModeInvariants:
    a, b, cp, cm = sf
    return TwoModeInvariants(
        1.0 / a,
        1.0 / b,
        ((a * b - cp**2) * (a * b - cm**2)) ** -0.5,
        a**2 + b**2 + 2.0 * cp * cm,
    )


def physical_standard_form(inv: TwoModeInvariants) -> np.ndarray:
    """Standard-form CM, additionally checked against ``sigma + i Omega >= 0``."""
    return require_physical(standard_form_cm(inv))
