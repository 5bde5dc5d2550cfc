"""Covariance matrices, symplectic spectra and multimode logarithmic negativity.

Conventions: quadratures ordered ``x1, p1, ..., xN, pN``; vacuum covariance
is the identity. Partial transposition flips the sign of the momentum of
each transposed mode.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import IndexOutOfRange, PairingFailure, UnphysicalState

SYMMETRY_TOL = 1e-10
PAIRING_RTOL = 1e-8
PHYSICAL_TOL = 1e-9

OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class CovarianceMatrix:
    """A validated 2N x 2N real symmetric covariance matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2N x 2N, got shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_TOL * max(1.0, np.abs(m).max())):
            raise ValueError("covariance matrix is not symmetric")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def to_dict(self) -> dict:
        return {"n_modes": self.n_modes, "matrix": self.matrix.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "CovarianceMatrix":
        cm = cls(np.asarray(data["matrix"], dtype=float))
        if int(data["n_modes"]) != cm.n_modes:
            raise ValueError(
                f"n_modes={data['n_modes']} does not match a {cm.matrix.shape[0]}x"
                f"{cm.matrix.shape[0]} matrix"
            )
        return cm

    @classmethod
    def load(cls, path) -> "CovarianceMatrix":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)


class GlobalInvariants(NamedTuple):
    det_sigma: float
    seralian: float


def as_array(cm) -> np.ndarray:
    if isinstance(cm, CovarianceMatrix):
        return cm.matrix
    m = np.asarray(cm, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ValueError(f"covariance matrix must be 2N x 2N, got shape {m.shape}")
    return m


def build_omega(n_modes: int) -> np.ndarray:
    """Symplectic form: ``n_modes`` copies of [[0, 1], [-1, 0]] on the diagonal."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return np.kron(np.eye(n_modes), OMEGA_1)


def symplectic_spectrum(cm, rtol: float = PAIRING_RTOL) -> np.ndarray:
    """Symplectic eigenvalues of ``cm``, sorted ascending.

    The eigenvalues of ``Omega @ sigma`` are ``+-i nu_k``; their moduli are
    sorted and grouped in adjacent pairs. A pair whose members differ by more
    than ``rtol`` (relative) raises :class:`PairingFailure`.
    """
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(build_omega(n) @ sigma)))
    pairs = moduli.reshape(n, 2)
    spread = pairs[:, 1] - pairs[:, 0]
    bad = spread > rtol * np.maximum(pairs[:, 1], 1.0)
    if np.any(bad):
        raise PairingFailure(
            f"symplectic moduli do not pair within rtol={rtol}: {moduli.tolist()}"
        )
    return pairs.mean(axis=1)


def is_positive_definite(cm) -> bool:
    try:
        np.linalg.cholesky(as_array(cm))
    except np.linalg.LinAlgError:
        return False
    return True


def check_physical(cm, tol: float = PHYSICAL_TOL) -> bool:
    """True iff ``cm`` is positive definite with all symplectic eigenvalues >= 1 - tol."""
    if not is_positive_definite(cm):
        return False
    try:
        nu = symplectic_spectrum(cm)
    except PairingFailure:
        return False
    return bool(nu[0] >= 1.0 - tol)


def require_physical(cm, tol: float = PHYSICAL_TOL) -> np.ndarray:
    sigma = as_array(cm)
    if not check_physical(sigma, tol):
        raise UnphysicalState("covariance matrix violates sigma + i Omega >= 0")
    return sigma


def _mode_list(modes, n_modes: int) -> list[int]:
    if isinstance(modes, (int, np.integer)):
        modes = [modes]
    out = sorted(set(int(k) for k in modes))
    for k in out:
        if not 0 <= k < n_modes:
            raise IndexOutOfRange(f"mode index {k} out of range for {n_modes} modes")
    return out


def partial_transpose(cm, transposed_modes: Iterable[int] | int) -> np.ndarray:
    """Mirror the momentum quadrature of every listed (0-based) mode."""
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    signs = np.ones(2 * n)
    for k in _mode_list(transposed_modes, n):
        signs[2 * k + 1] = -1.0
    return sigma * np.outer(signs, signs)


def global_invariants(cm) -> GlobalInvariants:
    sigma = as_array(cm)
    nu = symplectic_spectrum(sigma)
    return GlobalInvariants(float(np.linalg.det(sigma)), float(np.sum(nu**2)))


def block(sigma: np.ndarray, i: int, j: int) -> np.ndarray:
    """2x2 block coupling modes ``i`` and ``j``."""
    return sigma[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]


def seralian_from_blocks(cm) -> float:
    """Sum of the determinants of every mode's 2x2 diagonal block, plus
    twice the determinants of the off-diagonal blocks."""
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    total = 0.0
    for i in range(n):
        total += np.linalg.det(block(sigma, i, i))
        for j in range(i + 1, n):
            total += 2.0 * np.linalg.det(block(sigma, i, j))
    return float(total)


def log_negativity(cm, partition: Iterable[int] | int) -> float:
    """Natural-log negativity across the cut defined by ``partition``."""
    nu_t = symplectic_spectrum(partial_transpose(cm, partition))
    small = nu_t[nu_t < 1.0]
    if small.size == 0:
        return 0.0
    return float(-np.sum(np.log(small)))


# Elementary symplectic maps, used to build test states with known spectra.


def phase_rotation(n_modes: int, mode: int, theta: float) -> np.ndarray:
    S = np.eye(2 * n_modes)
    c, s = np.cos(theta), np.sin(theta)
    S[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = [[c, s], [-s, c]]
    return S


def single_mode_squeezer(n_modes: int, mode: int, r: float) -> np.ndarray:
    S = np.eye(2 * n_modes)
    S[2 * mode, 2 * mode] = np.exp(-r)
    S[2 * mode + 1, 2 * mode + 1] = np.exp(r)
    return S


def two_mode_squeezer(n_modes: int, i: int, j: int, r: float) -> np.ndarray:
    """Maps the vacuum of modes (i, j) to a two-mode squeezed vacuum with
    ``a = cosh 2r``, ``c+ = sinh 2r``, ``c- = -sinh 2r``."""
    S = np.eye(2 * n_modes)
    c, s = np.cosh(r), np.sinh(r)
    Z = np.diag([1.0, -1.0])
    S[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = c * np.eye(2)
    S[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = c * np.eye(2)
    S[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = s * Z
    S[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = s * Z
    return S


def beam_splitter(n_modes: int, i: int, j: int, theta: float) -> np.ndarray:
    S = np.eye(2 * n_modes)
    c, s = np.cos(theta), np.sin(theta)
    I2 = np.eye(2)
    S[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = c * I2
    S[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = c * I2
    S[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = s * I2
    S[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = -s * I2
    return S


def is_symplectic(S: np.ndarray, atol: float = 1e-9) -> bool:
    omega = build_omega(S.shape[0] // 2)
    return bool(np.allclose(S @ omega @ S.T, omega, atol=atol))


def two_mode_squeezed_vacuum(r: float) -> np.ndarray:
    S = two_mode_squeezer(2, 0, 1, r)
    return S @ S.T


def williamson_cm(nu: Iterable[float], S: np.ndarray | None = None) -> np.ndarray:
    """``S diag(nu1, nu1, ..., nuN, nuN) S^T``."""
    d = np.repeat(np.asarray(list(nu), dtype=float), 2)
    if S is None:
        return np.diag(d)
    return (S * d) @ S.T
