"""1 x N entanglement of symmetric (N+1)-mode Gaussian states.

A single mode ``alpha`` is coupled through identical blocks ``gamma`` to a
fully symmetric N-mode block with diagonal blocks ``beta`` and identical
intra-block correlations ``eps``. All 2x2 blocks are taken diagonal:
``alpha = diag(a1, a2)``, ``beta = b * I``, ``eps = diag(e1, e2)``,
``gamma = diag(g1, g2)``.

A local symplectic on the N-mode block decouples N-1 modes (each with
symplectic eigenvalue ``nu_minus``) and leaves an equivalent two-mode state
carrying all the 1 x N entanglement. Only the invariants of that state are
needed, see :func:`localize`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import UnphysicalState
from .extremal import Region, average_negativity, classify, negativity_bounds
from .symplectic import check_physical, log_negativity
from .twomode import TwoModeInvariants, require_valid, two_mode_negativity

TOL = 1e-9

Method = Literal["direct", "localized", "estimated"]


@dataclass(frozen=True)
class SymmetricMultimodeParams:
    a1: float
    a2: float
    b: float
    e1: float
    e2: float
    g1: float
    g2: float
    n: int = 1

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def from_sequence(cls, values, n: int) -> "SymmetricMultimodeParams":
        values = [float(v) for v in values]
        if len(values) != 7:
            raise ValueError("expected seven values a1,a2,b,e1,e2,g1,g2")
        return cls(*values, n=n)

    def with_n(self, n: int) -> "SymmetricMultimodeParams":
        return SymmetricMultimodeParams(self.a1, self.a2, self.b, self.e1, self.e2, self.g1, self.g2, n)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.a1, self.a2, self.b, self.e1, self.e2, self.g1, self.g2)


@dataclass(frozen=True)
class LocalizedState:
    equivalent: TwoModeInvariants
    nu_minus_block: float
    nu_plus_block: float
    degeneracy: int


def symmetric_cm(params: SymmetricMultimodeParams) -> np.ndarray:
    """Assemble the (2N+2) x (2N+2) covariance matrix without any check."""
    n = params.n
    alpha = np.diag([params.a1, params.a2])
    beta = params.b * np.eye(2)
    eps = np.diag([params.e1, params.e2])
    gamma = np.diag([params.g1, params.g2])
    sigma = np.zeros((2 * n + 2, 2 * n + 2))
    sigma[:2, :2] = alpha
    for i in range(n):
        si = slice(2 + 2 * i, 4 + 2 * i)
        sigma[:2, si] = gamma
        sigma[si, :2] = gamma
        for j in range(n):
            sj = slice(2 + 2 * j, 4 + 2 * j)
            sigma[si, sj] = beta if i == j else eps
    return sigma


def build_symmetric_cm(params: SymmetricMultimodeParams) -> np.ndarray:
    sigma = symmetric_cm(params)
    if not check_physical(sigma):
        raise UnphysicalState(f"symmetric parameters {params} do not give a physical state")
    return sigma


def _sqrt_nonneg(x: float, what: str) -> float:
    if x < -TOL:
        raise UnphysicalState(f"negative radicand for {what}: {x:.3e}")
    return float(np.sqrt(max(x, 0.0)))


def symmetric_block_spectrum(b: float, e1: float, e2: float, n: int) -> tuple[float, float]:
    """``(nu_minus, nu_plus_N)`` of the fully symmetric N-mode block.

    ``nu_minus = sqrt((b - e1)(b - e2))`` is (N-1)-fold degenerate;
    ``nu_plus_N = sqrt((b + (N-1) e1)(b + (N-1) e2))``. For ``n == 1`` the
    first value has multiplicity zero.
    """
    nu_minus = _sqrt_nonneg((b - e1) * (b - e2), "nu_minus")
    nu_plus = _sqrt_nonneg((b + (n - 1) * e1) * (b + (n - 1) * e2), "nu_plus")
    return nu_minus, nu_plus


def localize(params: SymmetricMultimodeParams) -> LocalizedState:
    """Invariants of the equivalent two-mode state.

    ``mu1_eq = mu_alpha``, ``mu2_eq = nu_minus^(N-1) mu_block``,
    ``mu_eq = nu_minus^(N-1) mu_sigma`` and
    ``delta_eq = det(alpha) + 2N det(gamma) + (nu_minus^(N-1) mu_block)^-2``.
    """
    sigma = build_symmetric_cm(params)
    n = params.n
    nu_minus, nu_plus = symmetric_block_spectrum(params.b, params.e1, params.e2, n)
    weight = nu_minus ** (n - 1)
    mu_block = 1.0 / (weight * nu_plus)
    mu_alpha = 1.0 / np.sqrt(params.a1 * params.a2)
    mu_sigma = float(np.linalg.det(sigma)) ** -0.5
    det_alpha = params.a1 * params.a2
    det_gamma = params.g1 * params.g2
    inv = TwoModeInvariants(
        float(mu_alpha),
        float(weight * mu_block),
        float(weight * mu_sigma),
        float(det_alpha + 2 * n * det_gamma + (weight * mu_block) ** -2),
    )
    return LocalizedState(require_valid(inv), nu_minus, nu_plus, n - 1)


def one_to_n_negativity(params: SymmetricMultimodeParams, method: Method = "direct"):
    """Negativity between mode ``alpha`` and the N-mode block.

    ``direct`` partially transposes the full covariance matrix;
    ``localized`` uses the equivalent two-mode invariants; ``estimated``
    returns ``(E_bar, delta_E_bar)`` from the purities of the equivalent
    state alone. Separable purities give ``(0.0, 0.0)`` for the estimate.
    """
    if method == "direct":
        return log_negativity(build_symmetric_cm(params), [0])
    inv = localize(params).equivalent
    if method == "localized":
        return two_mode_negativity(inv)
    if method == "estimated":
        if classify(inv.mu1, inv.mu2, inv.mu).tag is Region.SEPARABLE:
            return 0.0, 0.0
        return average_negativity(inv.mu1, inv.mu2, inv.mu)
    raise ValueError(f"unknown method {method!r}")


def estimated_bounds(params: SymmetricMultimodeParams) -> tuple[float, float]:
    inv = localize(params).equivalent
    return negativity_bounds(inv.mu1, inv.mu2, inv.mu)


def one_to_k_negativity(params: SymmetricMultimodeParams, k: int) -> float:
    """Negativity between ``alpha`` and K of the N symmetric modes, computed
    directly on the reduced covariance matrix."""
    if not 1 <= k <= params.n:
        raise ValueError(f"k must lie in [1, {params.n}], got {k}")
    keep = np.r_[0:2, 2 : 2 + 2 * k]
    reduced = build_symmetric_cm(params)[np.ix_(keep, keep)]
    return log_negativity(reduced, [0])
