"""Seeded random states and brute-force oracles for the property suites.

Invariant tuples are drawn uniformly in the invariant coordinates
(``mu1, mu2`` on ``[mu_floor, 1]``, then ``mu`` and ``delta`` uniformly on
their attainable intervals). This is a convenient measure for testing
bounds, not a physically motivated ensemble over states.

A :class:`Sampler` owns its generator; it is not meant to be shared between
threads. Use :meth:`Sampler.spawn` to derive independent streams.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SamplingExhausted
from .extremal import Region, region_of
from .multimode import SymmetricMultimodeParams, symmetric_cm
from .symplectic import (
    beam_splitter,
    check_physical,
    phase_rotation,
    single_mode_squeezer,
    two_mode_squeezer,
    williamson_cm,
)
from .twomode import TwoModeInvariants, delta_range, mu_bounds, negativity_from_ppt, ppt_nu_minus

MAX_REJECTIONS = 1_000_000


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    mu_floor: float = 0.05
    region_filter: Region | str | None = None

    def __post_init__(self):
        if not 0.0 < self.mu_floor < 1.0:
            raise ValueError(f"mu_floor must lie in (0, 1), got {self.mu_floor}")
        if self.region_filter is not None:
            object.__setattr__(self, "region_filter", Region(self.region_filter))


class Sampler:
    def __init__(self, config: SamplerConfig | None = None, **kwargs):
        self.config = config if config is not None else SamplerConfig(**kwargs)
        self.rng = np.random.default_rng(self.config.seed)

    def spawn(self, k: int) -> list["Sampler"]:
        """Independent child samplers with derived seeds."""
        seeds = np.random.SeedSequence(self.config.seed).spawn(k)
        out = []
        for s in seeds:
            child = Sampler(self.config)
            child.rng = np.random.default_rng(s)
            out.append(child)
        return out

    # two-mode invariants

    def _candidates(self, size: int) -> tuple[np.ndarray, ...]:
        u = self.rng.random((size, 4))
        floor = self.config.mu_floor
        mu1 = floor + (1.0 - floor) * u[:, 0]
        mu2 = floor + (1.0 - floor) * u[:, 1]
        lo, hi = mu_bounds(mu1, mu2)
        mu = lo + (hi - lo) * u[:, 2]
        dlo, dhi = delta_range(mu1, mu2, mu)
        delta = dlo + (np.maximum(dhi, dlo) - dlo) * u[:, 3]
        return mu1, mu2, mu, delta

    def invariants_array(self, count: int, region: Region | str | None = None) -> np.ndarray:
        """``(count, 4)`` array of physical invariant tuples.

        With a region filter, candidates are drawn in batches and rejected
        until ``count`` survive; more than ``MAX_REJECTIONS`` rejections
        raise :class:`SamplingExhausted`.
        """
        region = self.config.region_filter if region is None else Region(region)
        if region is Region.UNPHYSICAL:
            raise SamplingExhausted("the sampler only emits physical states")
        kept: list[np.ndarray] = []
        n_kept = rejected = 0
        batch = max(64, count)
        while n_kept < count:
            cand = np.column_stack(self._candidates(batch))
            if region is not None:
                mask = region_of(cand[:, 0], cand[:, 1], cand[:, 2]) == region.value
                rejected += int(np.count_nonzero(~mask))
                cand = cand[mask]
                if rejected > MAX_REJECTIONS and n_kept + len(cand) < count:
                    raise SamplingExhausted(
                        f"more than {MAX_REJECTIONS} rejections while sampling region {region.value}"
                    )
            kept.append(cand)
            n_kept += len(cand)
        return np.concatenate(kept)[:count]

    def two_mode_invariants(self, region: Region | str | None = None) -> TwoModeInvariants:
        return TwoModeInvariants(*map(float, self.invariants_array(1, region)[0]))

    # covariance matrices with a known spectrum

    def random_symplectic(self, n_modes: int, layers: int = 10, max_squeeze: float = 0.6) -> np.ndarray:
        """Product of ``layers`` random two-mode squeezers, beam splitters,
        single-mode squeezers and phase rotations."""
        rng = self.rng
        S = np.eye(2 * n_modes)
        for _ in range(layers):
            if n_modes > 1:
                i, j = rng.choice(n_modes, size=2, replace=False)
                S = two_mode_squeezer(n_modes, i, j, rng.uniform(0.0, max_squeeze)) @ S
                S = beam_splitter(n_modes, i, j, rng.uniform(0.0, 2 * np.pi)) @ S
            k = int(rng.integers(n_modes))
            S = single_mode_squeezer(n_modes, k, rng.uniform(-max_squeeze, max_squeeze)) @ S
            S = phase_rotation(n_modes, k, rng.uniform(0.0, 2 * np.pi)) @ S
        return S

    def random_spectrum(self, n_modes: int, nu_max: float = 4.0, pure_fraction: float = 0.2) -> np.ndarray:
        nu = self.rng.uniform(1.0, nu_max, n_modes)
        nu[self.rng.random(n_modes) < pure_fraction] = 1.0
        return np.sort(nu)

    def random_cm(self, n_modes: int, **kwargs) -> tuple[np.ndarray, np.ndarray]:
        """``(cm, spectrum)`` with ``cm = S diag(nu) S^T``."""
        nu = self.random_spectrum(n_modes)
        S = self.random_symplectic(n_modes, **kwargs)
        return williamson_cm(nu, S), nu

    def random_local_symplectic(self, n_modes: int, mode: int, max_squeeze: float = 1.0) -> np.ndarray:
        rng = self.rng
        return (
            phase_rotation(n_modes, mode, rng.uniform(0, 2 * np.pi))
            @ single_mode_squeezer(n_modes, mode, rng.uniform(-max_squeeze, max_squeeze))
            @ phase_rotation(n_modes, mode, rng.uniform(0, 2 * np.pi))
        )

    # symmetric multimode states

    def symmetric_multimode(self, n: int) -> SymmetricMultimodeParams:
        """Rejection-sampled physical parameters of the symmetric family."""
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = self.rng
        for _ in range(MAX_REJECTIONS):
            b = rng.uniform(1.0, 3.0)
            # the block spectrum must stay >= 1: keep e1, e2 small against b - 1
            e1, e2 = rng.uniform(-1.0, 1.0, 2) * (b - 1.0) / max(n - 1, 1)
            a1 = rng.uniform(1.0, 4.0)
            a2 = a1 * rng.uniform(0.8, 1.25)
            g1, g2 = rng.uniform(0.0, 2.5) / np.sqrt(n), -rng.uniform(0.0, 2.5) / np.sqrt(n)
            if rng.random() < 0.5:
                g1, g2 = -g2, -g1
            params = SymmetricMultimodeParams(a1, max(a2, 1.0), b, e1, e2, g1, g2, n)
            if check_physical(symmetric_cm(params)):
                return params
        raise SamplingExhausted(f"no physical symmetric state found for n={n}")


def sample_two_mode_invariants(config: SamplerConfig, count: int = 1) -> np.ndarray:
    return Sampler(config).invariants_array(count)


def sample_symmetric_multimode(config: SamplerConfig, n: int, count: int = 1) -> list[SymmetricMultimodeParams]:
    sampler = Sampler(config)
    return [sampler.symmetric_multimode(n) for _ in range(count)]


def brute_force_negativity_bounds(mu1: float, mu2: float, mu: float, grid: int = 10_000) -> tuple[float, float]:
    """Extremes of the negativity over a uniform seralian grid at fixed
    purities, endpoints included. Independent of the closed forms."""
    lo, hi = delta_range(mu1, mu2, mu)
    deltas = np.linspace(lo, max(hi, lo), grid)
    e = negativity_from_ppt(ppt_nu_minus(mu1, mu2, mu, deltas))
    return float(e.min()), float(e.max())


def labelled_samples(config: SamplerConfig, count: int, region: Region | str | None = None) -> list[dict]:
    """Sampled invariant tuples with their region and negativity."""
    inv = Sampler(config).invariants_array(count, region)
    mu1, mu2, mu, delta = inv.T
    regions = region_of(mu1, mu2, mu)
    en = negativity_from_ppt(ppt_nu_minus(mu1, mu2, mu, delta))
    return [
        {"mu1": float(a), "mu2": float(b), "mu": float(c), "delta": float(d), "class": str(r), "en": float(e)}
        for a, b, c, d, r, e in zip(mu1, mu2, mu, delta, regions, en)
    ]
