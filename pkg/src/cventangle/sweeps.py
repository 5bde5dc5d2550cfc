"""Grid sweeps over purities and entropies for plotting bound surfaces.

Rows are computed independently; with ``jobs > 1`` they are spread over a
process pool and returned in grid order regardless of completion order.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import product

import numpy as np

from .entropic import EntropicConstraint, entropic_negativity_bounds
from .errors import GaussianStateError
from .extremal import Region, classify, negativity_bounds


@dataclass(frozen=True)
class PurityRow:
    mu1: float
    mu2: float
    mu: float
    region: str
    emin: float | None = None
    emax: float | None = None
    ebar: float | None = None
    delta: float | None = None

    @property
    def mu_over_mu1mu2(self) -> float:
        return self.mu / (self.mu1 * self.mu2)

    @property
    def mu_over_mu1(self) -> float:
        return self.mu / self.mu1


@dataclass(frozen=True)
class EntropicRow:
    p: float
    s_marginal: float
    s_global: float
    emin: float | None = None
    emax: float | None = None
    argmin_family: str | None = None
    argmax_family: str | None = None
    e_gmems: float | None = None
    e_glems: float | None = None


def axis(lo: float, hi: float, steps: int) -> np.ndarray:
    """Inclusive grid; a degenerate range yields a single value."""
    if lo == hi:
        return np.array([float(lo)])
    if steps < 2:
        raise ValueError("steps must be >= 2 for a non-degenerate range")
    return np.linspace(lo, hi, steps)


def purity_row(mu1: float, mu2: float, mu: float) -> PurityRow:
    """Bounds at one grid point. Separable points have an undefined
    relative error; unphysical points carry no values."""
    tag = classify(mu1, mu2, mu).tag
    if tag is Region.UNPHYSICAL:
        return PurityRow(mu1, mu2, mu, tag.value)
    e_min, e_max = negativity_bounds(mu1, mu2, mu)
    total = e_min + e_max
    delta = (e_max - e_min) / total if total > 0.0 else None
    return PurityRow(mu1, mu2, mu, tag.value, e_min, e_max, 0.5 * total, delta)


def _purity_block(mu1: float, mu2_values, mu_values) -> list[PurityRow]:
    return [purity_row(mu1, mu2, mu) for mu2, mu in product(mu2_values, mu_values)]


def _symmetric_block(mu_i: float, mu_values) -> list[PurityRow]:
    return [purity_row(mu_i, mu_i, mu) for mu in mu_values]


def _run(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def purity_sweep(mu1_values, mu2_values, mu_values, symmetric: bool = False, jobs: int = 1) -> list[PurityRow]:
    """Rows over the ``mu1 x mu2 x mu`` grid in index order (``mu`` fastest).

    With ``symmetric=True`` the second marginal is tied to the first and
    ``mu2_values`` is ignored.
    """
    mu1_values = [float(v) for v in mu1_values]
    mu_values = [float(v) for v in mu_values]
    if symmetric:
        blocks = _run(partial(_symmetric_block, mu_values=mu_values), mu1_values, jobs)
    else:
        mu2_values = [float(v) for v in mu2_values]
        blocks = _run(partial(_purity_block, mu2_values=mu2_values, mu_values=mu_values), mu1_values, jobs)
    return [row for block in blocks for row in block]


def entropic_row(p: float, s_marginal: float, s_global: float, n_delta: int = 2000, cells: int = 512) -> EntropicRow:
    """Entropic bounds at one symmetric grid point; unattainable points
    carry no values."""
    try:
        b = entropic_negativity_bounds(EntropicConstraint.symmetric(p, s_global, s_marginal), n_delta, cells)
    except GaussianStateError:
        return EntropicRow(p, s_marginal, s_global)
    return EntropicRow(
        p, s_marginal, s_global, b.e_min, b.e_max, b.argmin_family, b.argmax_family, b.e_gmems, b.e_glems
    )


def _entropic_block(s_marginal: float, p: float, s_global_values, n_delta: int, cells: int) -> list[EntropicRow]:
    return [entropic_row(p, s_marginal, s, n_delta, cells) for s in s_global_values]


def entropic_sweep(
    p: float, s_marginal_values, s_global_values, n_delta: int = 2000, cells: int = 512, jobs: int = 1
) -> list[EntropicRow]:
    """Symmetric entropic bounds over ``s_marginal x s_global`` in index order."""
    s_global_values = [float(v) for v in s_global_values]
    fn = partial(_entropic_block, p=p, s_global_values=s_global_values, n_delta=n_delta, cells=cells)
    blocks = _run(fn, [float(v) for v in s_marginal_values], jobs)
    return [row for block in blocks for row in block]

