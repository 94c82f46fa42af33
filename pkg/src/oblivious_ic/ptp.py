"""
Point-to-point AWGN results: SNR-adaptive PAM sizing, its rate and gap,
and the channel with an unknown discrete state.

Everything here takes linear-scale SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .bounds import HALF_LOG2_E_OVER_2, id_bound, ig

#: ``0.5 * log2(8 e)``, the constant part of the adaptive-PAM gap bound.
HALF_LOG2_8E = 0.5 * math.log2(8.0 * math.e)


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must lie in [0, 1), got {eps!r}")
    return eps


def choose_n(snr: float, eps: float) -> int:
    """Constellation size ``floor(sqrt(1 + snr**(1 - eps)))``, computed exactly."""
    eps = _check_eps(eps)
    snr = float(snr)
    if not math.isfinite(snr) or snr < 0.0:
        raise ValueError(f"snr must be finite and >= 0, got {snr!r}")
    t = 1.0 + snr ** (1.0 - eps)
    # floor(sqrt(t)) == isqrt(floor(t)) for real t >= 0
    return math.isqrt(math.floor(t))


def choose_eps(snr: float) -> float:
    """``[log2(ln(snr) / 6) / log2(snr)]^+``; zero whenever ``snr <= e**6``."""
    snr = float(snr)
    if not math.isfinite(snr) or snr <= 0.0:
        raise ValueError(f"snr must be finite and > 0, got {snr!r}")
    ln_snr = math.log(snr)
    if ln_snr <= 6.0:
        return 0.0
    eps = math.log(ln_snr / 6.0) / ln_snr
    # ln(x/6) < x for every x > 6, so eps < 1 here
    assert eps < 1.0
    return eps


def ptp_rate_lower(snr: float, eps: float) -> float:
    """Achievable rate of unit-energy PAM with ``choose_n(snr, eps)`` points.

    Uses the exact spacing-derived argument ``3 snr / (N**2 - 1)`` rather
    than its ``3 snr**eps`` high-SNR surrogate; the former is never smaller.
    """
    n = choose_n(snr, eps)
    if n == 1:
        return 0.0
    return id_bound(n, 3.0 * snr / (n * n - 1))


def ptp_gap_bound(snr: float) -> float:
    """Upper bound on ``ig(snr) - ptp_rate_lower(snr, choose_eps(snr))``.

    ``[0.5 log2(ln(snr) / 6)]^+ + 0.5 log2(8 e)`` for ``snr > 1`` and a
    flat 1 bit otherwise.
    """
    snr = float(snr)
    if not math.isfinite(snr) or snr <= 0.0:
        raise ValueError(f"snr must be finite and > 0, got {snr!r}")
    if snr <= 1.0:
        return 1.0
    return max(0.5 * math.log2(math.log(snr) / 6.0), 0.0) + HALF_LOG2_8E


@dataclass(frozen=True)
class PtpDesign:
    snr: float
    eps: float
    n: int
    rate_lower: float
    capacity: float
    gap_bound: float

    @property
    def gap(self) -> float:
        return self.capacity - self.rate_lower


def ptp_design(snr: float, eps: float | None = None) -> PtpDesign:
    """Bundle the adaptive-PAM choices at ``snr``; ``eps=None`` uses :func:`choose_eps`."""
    if eps is None:
        eps = choose_eps(snr) if snr > 0 else 0.0
    n = choose_n(snr, eps)
    gap_bound = ptp_gap_bound(snr) if snr > 0 else 1.0
    return PtpDesign(snr=float(snr), eps=float(eps), n=n,
                     rate_lower=ptp_rate_lower(snr, eps), capacity=ig(snr),
                     gap_bound=gap_bound)


def state_channel_rate(snr: float, h2: float, n: int) -> float:
    """Rate of a Gaussian input when a PAM(n) state of gain ``h2`` is unknown to both ends.

    ``[ig(snr) + id(n, 3 h2 / ((1 + snr)(n**2 - 1))) - min(log2 n, ig(h2))]^+``;
    with ``n == 1`` the state is deterministic and the rate is ``ig(snr)``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    cap = ig(snr)
    if n == 1:
        return cap
    loss = min(math.log2(n), ig(h2))
    gain = id_bound(n, 3.0 * h2 / ((1.0 + snr) * (n * n - 1)))
    return max(cap + gain - loss, 0.0)


class GdofEstimate(NamedTuple):
    """Finite-SNR view of a gDoF limit.

    ``ratio`` is ``rate / ig(snr)`` at the top of the grid.  ``gdof`` is the
    least-squares slope of rate against ``ig(snr)`` over the top decade, i.e.
    the Richardson extrapolation of the ratio under ``ratio = d + c / ig``.
    """

    ratio: float
    gdof: float


def gdof_estimate(rates: Sequence[float], snr_grid: Sequence[float]) -> GdofEstimate:
    snr = np.asarray(snr_grid, dtype=float)
    r = np.asarray(rates, dtype=float)
    if snr.ndim != 1 or snr.size < 2:
        raise ValueError("need at least two grid points")
    if np.any(snr <= 0.0) or np.any(np.diff(snr) <= 0.0):
        raise ValueError("snr grid must be positive and strictly increasing")
    cap = 0.5 * np.log2(1.0 + snr)
    top = snr >= snr[-1] / 10.0
    if top.sum() < 2:
        top = np.zeros(snr.size, dtype=bool)
        top[-2:] = True
    slope = np.polyfit(cap[top], r[top], 1)[0]
    return GdofEstimate(ratio=float(r[-1] / cap[-1]), gdof=float(slope))


def state_channel_gdof_check(h2: float, n: int, snr_grid: Sequence[float]) -> GdofEstimate:
    """Empirical gDoF of :func:`state_channel_rate` with ``h2`` and ``n`` held fixed."""
    rates = [state_channel_rate(s, h2, n) for s in snr_grid]
    return gdof_estimate(rates, snr_grid)


def adaptive_rate_fn(eps: float) -> Callable[[float], float]:
    """``snr -> ptp_rate_lower(snr, eps)`` for a fixed ``eps``."""
    _check_eps(eps)
    return lambda snr: ptp_rate_lower(snr, eps)


__all__ = [
    "HALF_LOG2_8E", "HALF_LOG2_E_OVER_2", "PtpDesign", "GdofEstimate",
    "choose_n", "choose_eps", "ptp_rate_lower", "ptp_gap_bound", "ptp_design",
    "state_channel_rate", "state_channel_gdof_check", "gdof_estimate",
    "adaptive_rate_fn",
]
