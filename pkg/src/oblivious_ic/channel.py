"""
Symmetric Gaussian interference channel where receiver 2 does not know
transmitter 1's codebook.

Transmitter 1 sends unit-energy PAM(N), transmitter 2 a unit-power Gaussian.
Receiver 1 decodes both messages; receiver 2 treats the PAM interference as
noise.  The resulting achievable region is compared against the classical
interference channel in strong and very strong interference.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .bounds import HALF_LOG2_E_OVER_2, id_bound, ig
from .ptp import choose_eps, choose_n, ptp_gap_bound

#: Very-strong-interference gap for user 2: ``0.5 log2(e/2) + 1``.
R2_GAP_VERY_STRONG = HALF_LOG2_E_OVER_2 + 1.0
#: ``log2(4 e)``, the constant part of the strong-interference gap bound.
LOG2_4E = math.log2(4.0 * math.e)


class Regime(str, enum.Enum):
    WEAK = "weak"
    STRONG = "strong"
    VERY_STRONG = "very_strong"


class UnsupportedRegimeError(ValueError):
    """Raised for weak interference, where no classical reference is used."""


@dataclass(frozen=True)
class ChannelParams:
    snr: float
    inr: float

    def __post_init__(self):
        for name in ("snr", "inr"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_alpha(cls, snr: float, alpha: float) -> "ChannelParams":
        """Parameterise ``inr = snr**alpha``."""
        return cls(snr, float(snr) ** float(alpha))

    @property
    def alpha(self) -> float:
        """``log(inr) / log(snr)``; undefined for ``snr`` in ``{0, 1}``."""
        if self.snr <= 0.0 or self.snr == 1.0:
            raise ValueError("alpha is undefined for snr in {0, 1}")
        if self.inr == 0.0:
            return -math.inf
        return math.log(self.inr) / math.log(self.snr)


@dataclass(frozen=True)
class RateRegion:
    """Intersection of ``R1 <= r1_max``, ``R2 <= r2_max``, ``R1 + R2 <= sum_max``."""

    r1_max: float
    r2_max: float
    sum_max: float

    @property
    def max_sum_rate(self) -> float:
        return min(self.r1_max + self.r2_max, self.sum_max)

    def contains(self, r1: float, r2: float, tol: float = 0.0) -> bool:
        return (-tol <= r1 <= self.r1_max + tol and -tol <= r2 <= self.r2_max + tol
                and r1 + r2 <= self.sum_max + tol)

    def vertices(self) -> list[tuple[float, float]]:
        """Corner points of the pentagon, counter-clockwise from the origin."""
        a, b, c = self.r1_max, self.r2_max, self.sum_max
        x1 = min(a, c)
        y1 = min(b, c)
        pts = [(0.0, 0.0), (x1, 0.0), (x1, min(b, c - x1)),
               (min(a, c - y1), y1), (0.0, y1)]
        out: list[tuple[float, float]] = []
        for p in pts:
            if not out or p != out[-1]:
                out.append(p)
        return out


class ClassicReference(NamedTuple):
    r1: float
    r2: float
    sum: float


def classify_regime(p: ChannelParams) -> Regime:
    """Weak below ``snr``, very strong at or above ``snr (1 + snr)``, strong between."""
    if p.inr < p.snr:
        return Regime.WEAK
    if p.inr >= p.snr * (1.0 + p.snr):
        return Regime.VERY_STRONG
    return Regime.STRONG


def achievable_region(p: ChannelParams, n: int) -> RateRegion:
    """Achievable rates with PAM(n) at transmitter 1 and a Gaussian at transmitter 2.

    r1_max  = id(n, 3 snr / (n^2 - 1))
    r2_max  = id(n, 3 inr / ((1 + snr)(n^2 - 1))) + ig(snr) - min(log2 n, ig(inr))
    sum_max = id(n, 3 snr / ((1 + inr)(n^2 - 1))) + ig(inr)

    each clipped at zero.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    snr, inr = p.snr, p.inr
    if n == 1:
        return RateRegion(0.0, ig(snr), ig(inr))
    m = n * n - 1
    r1 = id_bound(n, 3.0 * snr / m)
    r2 = id_bound(n, 3.0 * inr / ((1.0 + snr) * m)) + ig(snr) - min(math.log2(n), ig(inr))
    s = id_bound(n, 3.0 * snr / ((1.0 + inr) * m)) + ig(inr)
    return RateRegion(r1, max(r2, 0.0), max(s, 0.0))


def classic_reference(p: ChannelParams) -> ClassicReference:
    """Capacity (very strong) or sum-capacity (strong) of the classical channel."""
    regime = classify_regime(p)
    cap = ig(p.snr)
    if regime is Regime.VERY_STRONG:
        return ClassicReference(cap, cap, 2.0 * cap)
    if regime is Regime.STRONG:
        return ClassicReference(cap, cap, ig(p.snr + p.inr))
    raise UnsupportedRegimeError("no classical reference in weak interference")


@dataclass(frozen=True)
class GapReport:
    """Sum-rate gap between the oblivious scheme and the classical channel.

    ``analytic_gap_bound`` is only a proven bound when ``in_proof_domain``
    (``n_used >= 3``).  In very strong interference it is the sum of the
    per-user bounds ``r1_gap_bound + r2_gap_bound``.  In strong interference
    ``tight_gap_bound`` is the intermediate bound written with
    ``inr / (1 + snr)`` in place of ``snr``.
    """

    regime: Regime
    achievable_sum: float
    classic_sum: float
    realized_gap: float
    analytic_gap_bound: float
    n_used: int
    eps_used: float
    region: RateRegion
    r1_gap_bound: float | None = None
    r2_gap_bound: float | None = None
    tight_gap_bound: float | None = None

    @property
    def in_proof_domain(self) -> bool:
        return self.n_used >= 3

    @property
    def within_bound(self) -> bool:
        return self.realized_gap <= self.analytic_gap_bound + 1e-9


def _eps_and_n(x: float) -> tuple[float, int]:
    eps = choose_eps(x) if x > 0.0 else 0.0
    return eps, choose_n(x, eps)


def design_n(p: ChannelParams) -> tuple[float, int]:
    """``(eps, N)`` used by :func:`gap_report`.

    Strong interference sizes the PAM from ``inr / (1 + snr)``; every other
    regime sizes it from ``snr``.
    """
    if classify_regime(p) is Regime.STRONG:
        return _eps_and_n(p.inr / (1.0 + p.snr))
    return _eps_and_n(p.snr)


def gap_report(p: ChannelParams) -> GapReport:
    """Pick N per regime, evaluate the region, and compare with the classical channel.

    Very strong: N from ``snr``; bound = adaptive-PAM gap at ``snr`` plus
    ``R2_GAP_VERY_STRONG``.  Strong: N from ``inr / (1 + snr)``; bound =
    ``[0.5 log2(ln(snr) / 6)]^+ + log2(4 e)``.  The achievable sum is the
    pentagon's ``min(r1_max + r2_max, sum_max)``.
    """
    regime = classify_regime(p)
    if regime is Regime.WEAK:
        raise UnsupportedRegimeError("gap analysis covers strong and very strong interference only")
    classic = classic_reference(p)
    eps, n = design_n(p)
    if regime is Regime.VERY_STRONG:
        r1_bound = ptp_gap_bound(p.snr) if p.snr > 0.0 else 1.0
        kw = dict(r1_gap_bound=r1_bound, r2_gap_bound=R2_GAP_VERY_STRONG)
        bound = r1_bound + R2_GAP_VERY_STRONG
    else:
        rho = p.inr / (1.0 + p.snr)
        bound = _loglog_term(p.snr) + LOG2_4E
        kw = dict(tight_gap_bound=_loglog_term(rho) + LOG2_4E)
    region = achievable_region(p, n)
    achievable = region.max_sum_rate
    return GapReport(regime=regime, achievable_sum=achievable, classic_sum=classic.sum,
                     realized_gap=classic.sum - achievable, analytic_gap_bound=bound,
                     n_used=n, eps_used=eps, region=region, **kw)


def _loglog_term(x: float) -> float:
    """``[0.5 log2(ln(x) / 6)]^+``, zero for ``x <= e**6``."""
    if x <= 1.0:
        return 0.0
    return max(0.5 * math.log2(math.log(x) / 6.0), 0.0)

