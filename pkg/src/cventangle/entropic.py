"""Negativity bounds at fixed global and marginal Tsallis entropies.

At fixed marginals and fixed global ``S_p`` the admissible two-mode states
form a curve in the ``(mu, delta)`` plane. The negativity is extremised
numerically along that curve: the seralian is swept on a grid and, at each
grid value, every global purity meeting the entropy constraint is found by
a bracketing scan followed by bisection. The two edges of the purity
domain (GMEMS at the lowest seralian, GLEMS at the highest) are solved for
separately so the extremal families are captured exactly.

``p == 1`` selects the von Neumann entropy; any ``p > 1`` is a Tsallis
index. For ``p = 2`` the constraint fixes ``mu = 1 - S_2`` and the results
coincide with :func:`cventangle.extremal.negativity_bounds`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .entropy import log_g_p, von_neumann_term
from .errors import DomainError, NoInversion, NoSolution, OutOfRange
from .twomode import delta_bounds, mu_bounds, negativity_from_ppt, nu_pair, ppt_nu_minus, realizable_delta_max

VON_NEUMANN = 1.0
DEFAULT_CELLS = 512
DEFAULT_DELTA_POINTS = 2000
BISECT_ITERS = 80
# residual accepted as a root at an interval end or a single-point interval
POINT_TOL = 1e-12

GMEMS = "gmems"
GLEMS = "glems"
INTERIOR = "interior"


def is_von_neumann(p: float) -> bool:
    return float(p) == VON_NEUMANN


def _check_index(p: float) -> float:
    p = float(p)
    if not (p > 1.0 or is_von_neumann(p)):
        raise DomainError(f"entropic index must be 1 (von Neumann) or > 1, got {p}")
    return p


def max_entropy(p: float) -> float:
    p = _check_index(p)
    return math.inf if is_von_neumann(p) else 1.0 / (p - 1.0)


def mode_entropy(nu, p: float):
    """Entropy of a single thermal mode with symplectic eigenvalue ``nu``."""
    if is_von_neumann(p):
        return von_neumann_term(nu)
    return -np.expm1(log_g_p(nu, p)) / (p - 1.0)


def marginal_entropy(mu_i, p: float):
    return mode_entropy(1.0 / np.asarray(mu_i, dtype=float), _check_index(p))


def global_entropy(mu, delta, p: float):
    """Global entropy of the two-mode state with purity ``mu`` and seralian ``delta``."""
    p = _check_index(p)
    lo, hi = nu_pair(np.asarray(mu, float), np.asarray(delta, float))
    if is_von_neumann(p):
        return von_neumann_term(lo) + von_neumann_term(hi)
    return -np.expm1(log_g_p(lo, p) + log_g_p(hi, p)) / (p - 1.0)


def marginal_purity_from_entropy(s: float, p: float) -> float:
    """Invert the single-mode entropy for the marginal purity."""
    p = _check_index(p)
    s = float(s)
    if not 0.0 <= s < max_entropy(p):
        raise OutOfRange(f"single-mode entropy {s} is not attainable for p={p}")
    if s == 0.0:
        return 1.0
    hi = 2.0
    while mode_entropy(hi, p) < s:
        hi *= 2.0
        if hi > 1e300:
            raise OutOfRange(f"single-mode entropy {s} is not attainable for p={p}")
    nu = brentq(lambda x: float(mode_entropy(x, p)) - s, 1.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 1.0 / nu


@dataclass(frozen=True)
class EntropicConstraint:
    p: float
    s_global: float
    s1: float
    s2: float

    def __post_init__(self):
        _check_index(self.p)
        top = max_entropy(self.p)
        for name in ("s_global", "s1", "s2"):
            v = getattr(self, name)
            if not 0.0 <= v < top:
                raise OutOfRange(f"{name}={v} outside the attainable range [0, {top}) for p={self.p}")

    @classmethod
    def symmetric(cls, p: float, s_global: float, s_marginal: float) -> "EntropicConstraint":
        return cls(p, s_global, s_marginal, s_marginal)

    @classmethod
    def from_purities(cls, p: float, mu1: float, mu2: float, mu: float, delta: float) -> "EntropicConstraint":
        """Entropies of the state with the given invariants."""
        return cls(
            p,
            float(global_entropy(mu, delta, p)),
            float(marginal_entropy(mu1, p)),
            float(marginal_entropy(mu2, p)),
        )

    @property
    def marginal_purities(self) -> tuple[float, float]:
        return (
            marginal_purity_from_entropy(self.s1, self.p),
            marginal_purity_from_entropy(self.s2, self.p),
        )

    def residual(self, mu, delta):
        """Zero on the constraint curve. Tsallis constraints are compared
        through ``ln Tr rho^p``; von Neumann ones directly."""
        lo, hi = nu_pair(mu, delta)
        if is_von_neumann(self.p):
            return von_neumann_term(lo) + von_neumann_term(hi) - self.s_global
        target = math.log1p(-(self.p - 1.0) * self.s_global)
        return log_g_p(lo, self.p) + log_g_p(hi, self.p) - target


@dataclass(frozen=True)
class EntropicBounds:
    e_min: float
    e_max: float
    argmin_family: str
    argmax_family: str
    e_gmems: float | None
    e_glems: float | None
    delta_span: tuple[float, float]
    n_points: int

    @property
    def gap(self) -> float:
        return self.e_max - self.e_min

    @property
    def edge_gap(self) -> float | None:
        if self.e_gmems is None or self.e_glems is None:
            return None
        return abs(self.e_gmems - self.e_glems)

    def to_dict(self) -> dict:
        return {
            "emin": self.e_min,
            "emax": self.e_max,
            "argmin_family": self.argmin_family,
            "argmax_family": self.argmax_family,
            "e_gmems": self.e_gmems,
            "e_glems": self.e_glems,
            "delta_span": list(self.delta_span),
            "n_points": self.n_points,
        }


@dataclass(frozen=True)
class NodalPoint:
    s_marginal: float
    s_nodal: float
    mu_marginal: float = math.nan
    negativity: float = math.nan
    slope: float = math.nan

    @property
    def found(self) -> bool:
        return not math.isnan(self.s_nodal)


# Vectorised root finding.


def _bisect(f, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    flo = f(lo)
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        same = np.sign(fmid) == np.sign(flo)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fmid, flo)
        hi = np.where(same, hi, mid)
        if np.all(hi - lo <= 2.0 * np.finfo(float).eps * np.abs(hi)):
            break
    return 0.5 * (lo + hi)


def _scan_roots(f, lo: np.ndarray, hi: np.ndarray, cells: int) -> tuple[np.ndarray, np.ndarray]:
    """All sign changes of ``f(x, row)`` on ``[lo[row], hi[row]]``.

    Returns ``(rows, roots)``; rows with an empty interval are skipped and
    rows collapsed to a point keep that point only if ``f`` vanishes there.
    """
    point = np.flatnonzero(hi == lo)
    point_rows = np.empty(0, int)
    if point.size:
        with np.errstate(invalid="ignore", divide="ignore"):
            fp = f(lo[point], point)
        point_rows = point[np.abs(fp) <= POINT_TOL]
    ok = np.flatnonzero(hi > lo)
    if ok.size == 0:
        return point_rows, lo[point_rows]
    t = np.linspace(0.0, 1.0, cells + 1)
    x = lo[ok, None] + (hi[ok] - lo[ok])[:, None] * t[None, :]
    rows = np.broadcast_to(ok[:, None], x.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        fx = f(x, rows)
    sx = np.sign(fx)
    # roots sitting on an interval end are lost to rounding otherwise
    for col in (0, -1):
        sx[np.abs(fx[:, col]) <= POINT_TOL, col] = 0.0
    zr, zc = np.nonzero(sx == 0.0)
    br, bc = np.nonzero(sx[:, :-1] * sx[:, 1:] < 0.0)
    out_rows = [point_rows, ok[zr], ok[br]]
    out_roots = [lo[point_rows], x[zr, zc]]
    if br.size:
        brow = ok[br]
        roots = _bisect(lambda m: f(m, brow), x[br, bc], x[br, bc + 1])
        out_roots.append(roots)
    else:
        out_roots.append(np.empty(0))
    return np.concatenate(out_rows), np.concatenate(out_roots)


class _Domain:
    """Purity-space domain at fixed marginals."""

    def __init__(self, mu1: float, mu2: float):
        self.mu1, self.mu2 = mu1, mu2
        self.mu_lo, self.mu_hi = (float(v) for v in mu_bounds(mu1, mu2))
        self.skew = (mu1 - mu2) ** 2 / (mu1 * mu2) ** 2
        self.corner = (1.0 / mu1 + 1.0 / mu2) ** 2

    def lower_edge(self, mu):
        return delta_bounds(self.mu1, self.mu2, mu)[0]

    def upper_edge(self, mu):
        return np.minimum(1.0 + 1.0 / mu**2, realizable_delta_max(self.mu1, self.mu2, mu))

    def delta_extent(self) -> tuple[float, float]:
        lo = float(self.lower_edge(self.mu_hi))
        mus = np.linspace(self.mu_lo, self.mu_hi, 2049)
        mu_sep = 1.0 / (1.0 / self.mu1 + 1.0 / self.mu2 - 1.0)
        if self.mu_lo <= mu_sep <= self.mu_hi:
            mus = np.append(mus, mu_sep)
        return lo, float(np.max(self.upper_edge(mus)))

    def mu_interval(self, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Purities compatible with each seralian in ``delta``."""
        delta = np.asarray(delta, float)
        with np.errstate(divide="ignore", invalid="ignore"):
            lo = np.full_like(delta, self.mu_lo)
            lo = np.maximum(lo, np.where(delta > self.skew, 2.0 / (delta - self.skew), np.inf))
            lo = np.maximum(lo, np.where(self.corner > delta, 2.0 / (self.corner - delta), np.inf))
            hi = np.minimum(self.mu_hi, np.where(delta > 1.0, 1.0 / np.sqrt(delta - 1.0), np.inf))
        return lo, hi


def _curve(constraint: EntropicConstraint, domain: _Domain, deltas: np.ndarray, cells: int):
    lo, hi = domain.mu_interval(deltas)
    rows, mus = _scan_roots(lambda m, r: constraint.residual(m, deltas[r]), lo, hi, cells)
    return deltas[rows], mus


def _edge(constraint: EntropicConstraint, domain: _Domain, which: str, cells: int):
    edge = domain.lower_edge if which == GMEMS else domain.upper_edge
    one = np.array([domain.mu_lo]), np.array([domain.mu_hi])
    _, mus = _scan_roots(lambda m, r: constraint.residual(m, edge(m)), *one, cells)
    mus = np.sort(mus)
    return edge(mus), mus


def solve_mu_at_fixed_entropy(delta: float, constraint: EntropicConstraint, cells: int = DEFAULT_CELLS) -> list[float]:
    """Every global purity compatible with ``delta`` and the constraint."""
    mu1, mu2 = constraint.marginal_purities
    domain = _Domain(mu1, mu2)
    _, mus = _curve(constraint, domain, np.array([float(delta)]), cells)
    if mus.size == 0:
        raise NoSolution(f"no global purity matches delta={delta} under {constraint}")
    return sorted(float(m) for m in mus)


def _negativity(mu1, mu2, mu, delta):
    return negativity_from_ppt(ppt_nu_minus(mu1, mu2, mu, delta))


def _pick(values: np.ndarray, labels: list[str], best: float) -> str:
    slack = 1e-12 * max(1.0, abs(best))
    for v, lab in zip(values, labels):
        if abs(v - best) <= slack:
            return lab
    return INTERIOR


def entropic_negativity_bounds(
    constraint: EntropicConstraint,
    n_delta: int = DEFAULT_DELTA_POINTS,
    cells: int = DEFAULT_CELLS,
) -> EntropicBounds:
    """Extremal negativity along the constraint curve and the family
    (``gmems``, ``glems`` or ``interior``) attaining each extreme."""
    mu1, mu2 = constraint.marginal_purities
    domain = _Domain(mu1, mu2)
    gm_d, gm_mu = _edge(constraint, domain, GMEMS, cells)
    gl_d, gl_mu = _edge(constraint, domain, GLEMS, cells)

    # coarse pass over the whole domain, then a fine pass over the curve's span
    d_lo, d_hi = domain.delta_extent()
    coarse = np.linspace(d_lo, d_hi, n_delta)
    cd, _ = _curve(constraint, domain, coarse, cells)
    span = np.concatenate([cd, gm_d, gl_d])
    if span.size == 0:
        raise NoSolution(f"no state satisfies {constraint}")
    step = (d_hi - d_lo) / (n_delta - 1)
    fine = np.linspace(max(d_lo, span.min() - step), min(d_hi, span.max() + step), n_delta)
    fd, fmu = _curve(constraint, domain, fine, cells)

    deltas = np.concatenate([gm_d, gl_d, fd])
    mus = np.concatenate([gm_mu, gl_mu, fmu])
    labels = [GMEMS] * gm_d.size + [GLEMS] * gl_d.size + [INTERIOR] * fd.size
    e = _negativity(mu1, mu2, mus, deltas)
    e_min, e_max = float(e.min()), float(e.max())
    return EntropicBounds(
        e_min=e_min,
        e_max=e_max,
        argmin_family=_pick(e, labels, e_min),
        argmax_family=_pick(e, labels, e_max),
        e_gmems=float(e[0]) if gm_d.size else None,
        e_glems=float(e[gm_d.size]) if gl_d.size else None,
        delta_span=(float(deltas.min()), float(deltas.max())),
        n_points=int(e.size),
    )


# Slope of nu~- along the constraint curve and the nodal surface.


def _edge_points(constraint: EntropicConstraint, cells: int):
    mu1, mu2 = constraint.marginal_purities
    domain = _Domain(mu1, mu2)
    gm_d, gm_mu = _edge(constraint, domain, GMEMS, cells)
    gl_d, gl_mu = _edge(constraint, domain, GLEMS, cells)
    if gm_d.size == 0 or gl_d.size == 0:
        raise NoSolution(f"constraint curve does not reach both edges: {constraint}")
    return mu1, mu2, domain, (gm_d[0], gm_mu[0]), (gl_d[-1], gl_mu[-1])


def mean_delta_slope(constraint: EntropicConstraint, cells: int = DEFAULT_CELLS) -> float:
    """Average of ``d nu~- / d delta`` along the constraint curve.

    Equal to the slope of the chord between the GMEMS and GLEMS ends, so it
    vanishes exactly where the two families are equally entangled.
    """
    mu1, mu2, _, (d0, m0), (d1, m1) = _edge_points(constraint, cells)
    if d1 == d0:
        return 0.0
    n0 = ppt_nu_minus(mu1, mu2, m0, d0)
    n1 = ppt_nu_minus(mu1, mu2, m1, d1)
    return float((n1 - n0) / (d1 - d0))


def local_delta_slope(
    constraint: EntropicConstraint,
    fraction: float = 0.5,
    rel_step: float = 1e-5,
    cells: int = DEFAULT_CELLS,
) -> float:
    """Central-difference ``d nu~- / d delta`` at a point of the curve.

    ``fraction`` places the point between the GMEMS end (0) and the GLEMS
    end (1); the step is ``rel_step`` times that seralian range.
    """
    mu1, mu2, domain, (d0, m0), (d1, m1) = _edge_points(constraint, cells)
    width = d1 - d0
    if width <= 0.0:
        raise NoSolution("constraint curve has no seralian extent")
    h = rel_step * width
    d = d0 + fraction * width
    centre = _curve(constraint, domain, np.array([d]), cells)[1]
    if centre.size == 0:
        raise NoSolution(f"constraint curve has no point at delta={d}")
    guess = m0 + fraction * (m1 - m0)
    mu_c = centre[np.argmin(np.abs(centre - guess))]

    def nu_at(dd):
        mus = _curve(constraint, domain, np.array([dd]), cells)[1]
        if mus.size == 0:
            raise NoSolution(f"constraint curve has no point at delta={dd}")
        mu = mus[np.argmin(np.abs(mus - mu_c))]
        return ppt_nu_minus(mu1, mu2, mu, dd)

    return float((nu_at(d + h) - nu_at(d - h)) / (2.0 * h))


def global_entropy_range(mu1: float, mu2: float, p: float, grid: int = 400) -> tuple[float, float]:
    """Range of the global entropy over the physical domain at fixed marginals."""
    domain = _Domain(mu1, mu2)
    mus = np.linspace(domain.mu_lo, domain.mu_hi, grid)
    t = np.linspace(0.0, 1.0, grid)
    lo, hi = domain.lower_edge(mus), domain.upper_edge(mus)
    deltas = lo[:, None] + np.maximum(hi - lo, 0.0)[:, None] * t[None, :]
    s = global_entropy(np.broadcast_to(mus[:, None], deltas.shape), deltas, p)
    return float(s.min()), float(s.max())


def find_nodal_point(s_marginal: float, p: float, n_scan: int = 64, cells: int = DEFAULT_CELLS) -> NodalPoint:
    """Global entropy at which GMEMS and GLEMS exchange roles, for
    symmetric marginals ``s_marginal``.

    Scans the attainable global entropies for a sign change of
    :func:`mean_delta_slope`, then bisects. Raises :class:`NoInversion`
    if the sign never changes.
    """
    p = _check_index(p)
    mu_i = marginal_purity_from_entropy(s_marginal, p)
    s_lo, s_hi = global_entropy_range(mu_i, mu_i, p)
    grid = np.linspace(s_lo, s_hi, n_scan + 2)[1:-1]

    def slope(s):
        try:
            return mean_delta_slope(EntropicConstraint.symmetric(p, s, s_marginal), cells)
        except NoSolution:
            return math.nan

    slopes = np.array([slope(s) for s in grid])
    finite = np.flatnonzero(np.isfinite(slopes))
    bracket = None
    for i, j in zip(finite[:-1], finite[1:]):
        if np.sign(slopes[i]) != np.sign(slopes[j]):
            bracket = (grid[i], grid[j], slopes[i])
            break
    if bracket is None:
        raise NoInversion(f"no GMEMS/GLEMS inversion for p={p}, s_marginal={s_marginal}")
    a, b, sa = bracket
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (a + b)
        sm = slope(mid)
        if sm == 0.0 or b - a <= 4.0 * np.finfo(float).eps * max(1.0, abs(mid)):
            break
        if np.sign(sm) == np.sign(sa):
            a, sa = mid, sm
        else:
            b = mid
    s_nodal = 0.5 * (a + b)
    c = EntropicConstraint.symmetric(p, s_nodal, s_marginal)
    mu1, mu2, _, (d0, m0), _ = _edge_points(c, cells)
    e = float(_negativity(mu1, mu2, m0, d0))
    return NodalPoint(float(s_marginal), float(s_nodal), float(mu_i), e, slope(s_nodal))


def nodal_surface(s_marginal_grid, p: float, n_scan: int = 64, cells: int = DEFAULT_CELLS) -> list[NodalPoint]:
    """Nodal points along a grid of symmetric marginal entropies. Marginals
    without an inversion yield a point with ``s_nodal = nan``."""
    out = []
    for s_m in s_marginal_grid:
        try:
            out.append(find_nodal_point(float(s_m), p, n_scan, cells))
        except (NoInversion, NoSolution):
            out.append(NodalPoint(float(s_m), math.nan, marginal_purity_from_entropy(float(s_m), p)))
    return out


def default_marginal_grid(p: float, steps: int, purity_range: tuple[float, float] = (0.95, 0.1)) -> np.ndarray:
    """Symmetric marginal entropies for marginal purities spread evenly over
    ``purity_range``."""
    return marginal_entropy(np.linspace(*purity_range, steps), _check_index(p))
