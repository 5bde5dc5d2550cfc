"""Purity and generalized entropies of Gaussian states.

Everything is computed from the symplectic spectrum through the per-mode
trace factor ``g_p(nu) = 2**p / ((nu + 1)**p - (nu - 1)**p)``, so that
``Tr rho**p = prod_k g_p(nu_k)``. Natural logarithms throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .symplectic import as_array, symplectic_spectrum

# symplectic eigenvalues this far below 1 are treated as exactly 1
NU_FLOOR_TOL = 1e-9

FAMILIES = ("tsallis", "renyi", "von_neumann", "linear", "purity")
# families measured in nats, rescaled by a change of log base
LOG_FAMILIES = ("renyi", "von_neumann")


def _clean_nu(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - NU_FLOOR_TOL) or np.any(np.isnan(x)):
        raise DomainError(f"symplectic eigenvalue below 1: {np.min(x)!r}")
    return np.maximum(x, 1.0)


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 1.0:
        raise DomainError(f"entropic index must satisfy p > 1, got {p}")
    return p


def log_g_p(x, p: float):
    """``ln g_p(x)``, evaluated without overflow for large ``x``."""
    x = _clean_nu(x)
    p = _check_p(p)
    ratio = (x - 1.0) / (x + 1.0)
    out = p * np.log(2.0 / (x + 1.0)) - np.log1p(-(ratio**p))
    return out if out.ndim else float(out)


def g_p(x, p: float):
    out = np.exp(log_g_p(x, p))
    return out if np.ndim(out) else float(out)


def von_neumann_term(x):
    """Entropy of a thermal mode with symplectic eigenvalue ``x``:
    ``((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2)``."""
    x = _clean_nu(x)
    up = 0.5 * (x + 1.0)
    down = 0.5 * (x - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.where(down > 0.0, down * np.log(np.where(down > 0.0, down, 1.0)), 0.0)
    out = up * np.log(up) - tail
    return out if out.ndim else float(out)


# Spectrum-level functions; the two-mode and entropic-bounds modules work
# directly on (nu_minus, nu_plus) without building matrices.


def log_trace_power_from_spectrum(nu, p: float) -> float:
    return float(np.sum(log_g_p(np.atleast_1d(nu), p)))


def tsallis_from_spectrum(nu, p: float) -> float:
    p = _check_p(p)
    return float(-np.expm1(log_trace_power_from_spectrum(nu, p)) / (p - 1.0))


def renyi_from_spectrum(nu, p: float) -> float:
    p = _check_p(p)
    return float(-log_trace_power_from_spectrum(nu, p) / (p - 1.0))


def von_neumann_from_spectrum(nu) -> float:
    return float(np.sum(von_neumann_term(np.atleast_1d(nu))))


def purity_from_spectrum(nu) -> float:
    return float(1.0 / np.prod(_clean_nu(np.atleast_1d(nu))))


# Matrix-level API.


def purity(cm) -> float:
    """``Tr rho^2 = (Det sigma)^(-1/2)``."""
    return float(np.linalg.det(as_array(cm)) ** -0.5)


def linear_entropy(cm) -> float:
    return 1.0 - purity(cm)


def trace_rho_power(cm, p: float) -> float:
    return float(np.exp(log_trace_power_from_spectrum(symplectic_spectrum(cm), p)))


def tsallis_entropy(cm, p: float) -> float:
    return tsallis_from_spectrum(symplectic_spectrum(cm), p)


def renyi_entropy(cm, p: float) -> float:
    return renyi_from_spectrum(symplectic_spectrum(cm), p)


def von_neumann_entropy(cm) -> float:
    return von_neumann_from_spectrum(symplectic_spectrum(cm))


@dataclass(frozen=True)
class EntropySpec:
    family: str
    p: float = 2.0

    def __post_init__(self):
        family = self.family.replace("-", "_")
        if family not in FAMILIES:
            raise ValueError(f"unknown entropy family {self.family!r}")
        object.__setattr__(self, "family", family)
        if family in ("tsallis", "renyi"):
            _check_p(self.p)

    def from_spectrum(self, nu) -> float:
        if self.family == "tsallis":
            return tsallis_from_spectrum(nu, self.p)
        if self.family == "renyi":
            return renyi_from_spectrum(nu, self.p)
        if self.family == "von_neumann":
            return von_neumann_from_spectrum(nu)
        mu = purity_from_spectrum(nu)
        return mu if self.family == "purity" else 1.0 - mu

    def __call__(self, cm) -> float:
        if self.family == "purity":
            return purity(cm)
        if self.family == "linear":
            return linear_entropy(cm)
        return self.from_spectrum(symplectic_spectrum(cm))
