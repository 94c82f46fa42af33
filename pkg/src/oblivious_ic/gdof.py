"""
Generalized degrees of freedom of the oblivious-receiver scheme.

With ``INR = SNR**alpha`` and ``N = floor(sqrt(1 + SNR**beta))`` the finite-SNR
region of :func:`oblivious_ic.channel.achievable_region` has a piecewise-linear
high-SNR limit per ``beta``.  The union over ``beta`` is computed numerically on
a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel import ChannelParams, achievable_region
from .ptp import GdofEstimate, gdof_estimate


@dataclass(frozen=True)
class GdofConstraints:
    alpha: float
    beta: float
    d1_max: float
    d2_max: float
    sum_max: float

    @property
    def max_sum(self) -> float:
        return min(self.d1_max + self.d2_max, self.sum_max)

    def contains(self, d1: float, d2: float) -> bool:
        return (0.0 <= d1 <= self.d1_max and 0.0 <= d2 <= self.d2_max
                and d1 + d2 <= self.sum_max)

    def strictly_contains(self, d1: float, d2: float) -> bool:
        return d1 < self.d1_max and d2 < self.d2_max and d1 + d2 < self.sum_max

    def pareto_vertices(self) -> list[tuple[float, float]]:
        """Upper-right corners of the polytope (one or two points)."""
        a, b, c = self.d1_max, self.d2_max, self.sum_max
        x = min(a, c)
        y = min(b, c)
        p = (x, min(b, c - x))
        q = (min(a, c - y), y)
        return [p] if p == q else [q, p]


def gdof_constraints(alpha: float, beta: float) -> GdofConstraints:
    """High-SNR limits of the three rate constraints for one ``beta``.

    d1  <= beta                  if 1 - beta > 0, else 0
    d2  <= (beta if [alpha-1]^+ - beta > 0 else 0) + 1 - min(beta, alpha)
    sum <= (beta if [1-alpha]^+ - beta > 0 else 0) + alpha

    Ties fall on the 0 branch.  ``d2`` is clipped at 0 like the rate it
    comes from.
    """
    alpha = float(alpha)
    beta = float(beta)
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not math.isfinite(v) or v < 0.0:
            raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
    d1 = beta if 1.0 - beta > 0.0 else 0.0
    d2 = (beta if max(alpha - 1.0, 0.0) - beta > 0.0 else 0.0) + 1.0 - min(beta, alpha)
    s = (beta if max(1.0 - alpha, 0.0) - beta > 0.0 else 0.0) + alpha
    return GdofConstraints(alpha, beta, d1, max(d2, 0.0), s)


@dataclass(frozen=True)
class GdofPolygon:
    """Union over a beta grid of the per-beta gDoF polytopes.

    ``vertices`` is the Pareto frontier of the union, sorted by increasing
    ``d1`` (hence non-increasing ``d2``).  Consecutive vertices belonging to
    the same polytope are joined by one of its faces; otherwise the union's
    boundary is a staircase between them.
    """

    alpha: float
    beta_grid: tuple[float, ...]
    vertices: tuple[tuple[float, float], ...]
    constraints: tuple[GdofConstraints, ...]

    @property
    def max_sum(self) -> float:
        return max(d1 + d2 for d1, d2 in self.vertices)

    @property
    def max_d1(self) -> float:
        return max(v[0] for v in self.vertices)

    @property
    def max_d2(self) -> float:
        return max(v[1] for v in self.vertices)

    def contains(self, d1: float, d2: float) -> bool:
        """Whether ``(d1, d2)`` is achieved by some beta on the grid."""
        return any(c.contains(d1, d2) for c in self.constraints)

    def best_beta(self) -> float:
        """A grid beta attaining the largest sum-gDoF."""
        return max(self.constraints, key=lambda c: c.max_sum).beta


def gdof_closure(alpha: float, beta_grid: Sequence[float]) -> GdofPolygon:
    grid = np.asarray(beta_grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise ValueError("beta grid must be non-empty")
    if np.any(grid < 0.0) or np.any(np.diff(grid) < 0.0):
        raise ValueError("beta grid must be non-negative and sorted")
    cons = tuple(gdof_constraints(alpha, b) for b in grid)

    cand = sorted({v for c in cons for v in c.pareto_vertices()})
    a = np.array([c.d1_max for c in cons])
    b = np.array([c.d2_max for c in cons])
    s = np.array([c.sum_max for c in cons])
    tol = 1e-12
    kept = []
    for d1, d2 in cand:
        # drop points some polytope can extend up or right (not Pareto-optimal)
        inside = (d1 <= a + tol) & (d2 <= b + tol) & (d1 + d2 < s - tol)
        if not np.any(inside & ((d1 < a - tol) | (d2 < b - tol))):
            kept.append((d1, d2))
    cand = kept
    frontier: list[tuple[float, float]] = []
    best_d2 = -math.inf
    for d1, d2 in reversed(cand):
        if d2 > best_d2:
            frontier.append((d1, d2))
            best_d2 = d2
    frontier.reverse()
    return GdofPolygon(alpha=float(alpha), beta_grid=tuple(float(b) for b in grid),
                       vertices=tuple(frontier), constraints=cons)


def beta_grid(step: float = 1e-3, stop: float = 1.0) -> np.ndarray:
    """``0, step, 2 step, ..., stop`` with the count fixed by rounding."""
    if not 0.0 < step:
        raise ValueError("step must be > 0")
    k = int(round(stop / step))
    return np.round(np.arange(k + 1) * step, 12)


def icor_eps_range(alpha: float) -> tuple[float, float]:
    """Open-closed interval ``(0, hi]`` of admissible ``eps`` at ``alpha``."""
    if alpha < 1.0:
        return 0.0, 1.0 - alpha
    if alpha < 2.0:
        return 0.0, alpha - 1.0
    return 0.0, 1.0


def sum_gdof_icor(alpha: float, eps: float) -> float:
    """Achievable sum-gDoF: ``1 - eps``, ``alpha - eps`` or ``2 - eps`` by regime.

    Attained at ``beta = min(1, |alpha - 1|) - eps``, which must be
    non-negative; at ``alpha == 1`` no ``eps > 0`` is admissible.
    """
    alpha = float(alpha)
    eps = float(eps)
    if not math.isfinite(alpha) or alpha < 0.0:
        raise ValueError(f"alpha must be finite and >= 0, got {alpha!r}")
    _, hi = icor_eps_range(alpha)
    if not 0.0 < eps <= hi + 1e-12:
        raise ValueError(f"eps={eps!r} outside (0, {hi!r}] at alpha={alpha!r}")
    if alpha < 1.0:
        return 1.0 - eps
    if alpha < 2.0:
        return alpha - eps
    return 2.0 - eps


def sum_gdof_classic(alpha: float) -> float:
    """Sum-gDoF of the classical channel (the W-curve)."""
    alpha = float(alpha)
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")
    return 2.0 * min(1.0, max(alpha / 2.0, 1.0 - alpha / 2.0), max(alpha, 1.0 - alpha))


def sum_gdof_tin(alpha: float) -> float:
    """Sum-gDoF when both users send Gaussians and treat interference as noise."""
    if alpha < 0.0:
        raise ValueError("alpha must be >= 0")
    return 2.0 * max(1.0 - float(alpha), 0.0)


def classic_region_vertices(alpha: float) -> list[tuple[float, float]]:
    """Pareto corners of ``{d1 <= 1, d2 <= 1, d1 + d2 <= W(alpha)}``.

    Exact for the classical channel when ``alpha >= 1``; an outer polytope
    for weak interference.
    """
    w = sum_gdof_classic(alpha)
    if w >= 2.0:
        return [(1.0, 1.0)]
    return [(max(w - 1.0, 0.0), min(w, 1.0)), (min(w, 1.0), max(w - 1.0, 0.0))]


def empirical_gdof(rate_fn: Callable[..., float], snr_grid: Sequence[float],
                   alpha: float | None = None) -> GdofEstimate:
    """Estimate a gDoF from finite-SNR rates.

    ``rate_fn`` is called as ``rate_fn(snr)``, or as ``rate_fn(snr, snr**alpha)``
    when ``alpha`` is given.  The grid must increase strictly and span at
    least three decades.
    """
    snr = np.asarray(snr_grid, dtype=float)
    if snr.ndim != 1 or snr.size < 2 or np.any(snr <= 0.0):
        raise ValueError("snr grid must hold at least two positive values")
    if np.any(np.diff(snr) <= 0.0):
        raise ValueError("snr grid must be strictly increasing")
    if snr[-1] / snr[0] < 1e3 * (1 - 1e-12):
        raise ValueError("snr grid must span at least three decades")
    if alpha is None:
        rates = [rate_fn(float(s)) for s in snr]
    else:
        rates = [rate_fn(float(s), float(s) ** alpha) for s in snr]
    return gdof_estimate(rates, snr)


def region_rate_fns(alpha: float, beta: float) -> dict[str, Callable[[float], float]]:
    """Finite-SNR ``r1``, ``r2`` and sum constraints as functions of ``snr``.

    Uses ``INR = snr**alpha`` and ``N = floor(sqrt(1 + snr**beta))``.
    """
    def region(snr):
        n = math.isqrt(math.floor(1.0 + snr ** beta))
        return achievable_region(ChannelParams.from_alpha(snr, alpha), n)

    return {
        "d1": lambda s: region(s).r1_max,
        "d2": lambda s: region(s).r2_max,
        "sum": lambda s: region(s).sum_max,
    }
