"""
Closed-form mutual-information bounds for discrete inputs on a real AWGN channel.

All rates are in bits.  ``id_bound`` is the one place where a natural
exponential meets base-2 logarithms; see its docstring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

LOG2E = 1.0 / math.log(2.0)
#: ``0.5 * log2(e / 2)``, the constant penalty inside ``id_bound``.
HALF_LOG2_E_OVER_2 = 0.5 * math.log2(math.e / 2.0)

# exp(-x) underflows to zero in double precision beyond this point
_EXP_UNDERFLOW = 745.0


def _check_nonneg(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"{name} must be finite and >= 0, got {x!r}")
    return x


def ig(x: float) -> float:
    """Gaussian capacity function ``0.5 * log2(1 + x)``."""
    x = _check_nonneg("x", x)
    return 0.5 * math.log1p(x) * LOG2E


def id_bound(n: int, x: float) -> float:
    """Lower-bound function ``[log2 n - 0.5 log2(e/2) - log2(1 + (n-1) e^-x)]^+``.

    The exponential is base e on purpose while every logarithm is base 2.
    The result always lies in ``[0, log2 n]``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    x = _check_nonneg("x", x)
    tail = 0.0 if x > _EXP_UNDERFLOW else (n - 1) * math.exp(-x)
    val = math.log2(n) - HALF_LOG2_E_OVER_2 - math.log1p(tail) * LOG2E
    return max(val, 0.0)


@dataclass(frozen=True, eq=False)
class Constellation:
    """A finite real input alphabet with its probability masses.

    ``d_min`` is the smallest pairwise distance (``inf`` for a single point)
    and ``energy`` is the average energy ``sum(p_i * s_i**2)``.
    """

    points: np.ndarray
    masses: np.ndarray
    d_min: float = field(init=False)
    energy: float = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1)
        ms = np.array(self.masses, dtype=float).reshape(-1)
        if pts.size == 0:
            raise ValueError("constellation needs at least one point")
        if pts.shape != ms.shape:
            raise ValueError("points and masses must have the same length")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(ms))):
            raise ValueError("points and masses must be finite")
        if np.any(ms <= 0.0):
            raise ValueError("every mass must be > 0")
        if abs(math.fsum(ms) - 1.0) > 1e-12:
            raise ValueError(f"masses sum to {math.fsum(ms)!r}, expected 1")
        srt = np.sort(pts)
        gaps = np.diff(srt)
        if np.any(gaps <= 0.0):
            raise ValueError("points must be pairwise distinct")
        pts.setflags(write=False)
        ms.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", ms)
        object.__setattr__(self, "d_min", float(gaps.min()) if gaps.size else math.inf)
        object.__setattr__(self, "energy", math.fsum(ms * pts * pts))

    @classmethod
    def from_points(cls, points: Sequence[float], masses: Sequence[float] | None = None,
                    unit_energy: bool = False) -> "Constellation":
        """Build from raw points; uniform masses by default.

        With ``unit_energy=True`` the points are rescaled so that the
        average energy is one.
        """
        pts = np.asarray(points, dtype=float)
        if masses is None:
            ms = np.full(pts.shape, 1.0 / pts.size)
        else:
            ms = np.asarray(masses, dtype=float)
            ms = ms / ms.sum()
        if unit_energy:
            e = float(np.sum(ms * pts * pts))
            if e <= 0.0:
                raise ValueError("cannot normalise a zero-energy constellation")
            pts = pts / math.sqrt(e)
        return cls(pts, ms)

    @property
    def size(self) -> int:
        return int(self.points.size)

    def __len__(self):
        return self.size


def pam(n: int) -> Constellation:
    """Unit-energy, zero-mean, uniform PAM with ``n`` points.

    Spacing is ``sqrt(12 / (n**2 - 1))``.  ``pam(1)`` is the single point 0
    with zero energy and ``d_min = inf``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    if n == 1:
        return Constellation(np.zeros(1), np.ones(1))
    d = math.sqrt(12.0 / (n * n - 1))
    pts = d * (np.arange(n) - 0.5 * (n - 1))
    return Constellation(pts, np.full(n, 1.0 / n))


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower < 0.0 or self.upper < 0.0:
            raise ValueError("bounds must be non-negative")
        if self.lower > self.upper + 1e-12:
            raise ValueError(f"lower {self.lower!r} exceeds upper {self.upper!r}")

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


def id_lower(c: Constellation, snr: float) -> float:
    """The mass-agnostic lower bound ``id_bound(N, snr * d_min**2 / 4)``.

    Only valid when the masses are uniform: for skewed masses it can exceed
    ``H(X)``, and therefore the mutual information itself.
    """
    snr = _check_nonneg("snr", snr)
    if c.size == 1:
        return 0.0
    return id_bound(c.size, snr * c.d_min ** 2 / 4.0)


def collision_lower(c: Constellation, snr: float) -> float:
    """Lower bound on ``I(X; sqrt(snr) X + Z)`` valid for any masses.

    ``[-log2(q + (1 - q) e^-x) - 0.5 log2(e/2)]^+`` with ``q = sum(p_i**2)``
    and ``x = snr * d_min**2 / 4``; equals :func:`id_lower` when the masses
    are uniform (``q = 1/N``).
    """
    snr = _check_nonneg("snr", snr)
    if c.size == 1:
        return 0.0
    q = math.fsum(c.masses * c.masses)
    x = snr * c.d_min ** 2 / 4.0
    tail = 0.0 if x > _EXP_UNDERFLOW else math.exp(-x)
    val = -math.log2(q + (1.0 - q) * tail) - HALF_LOG2_E_OVER_2
    return max(val, 0.0)


def has_uniform_masses(c: Constellation) -> bool:
    return bool(np.all(c.masses == c.masses[0]))


def mi_bounds(c: Constellation, snr: float) -> BoundPair:
    """Lower and upper bounds on ``I(X; sqrt(snr) X + Z)`` for ``X ~ c``.

    lower = ``id_bound(N, snr * d_min**2 / 4)`` for uniform masses, and
    :func:`collision_lower` otherwise; upper = ``min(log2 N, ig(snr * energy))``.
    """
    snr = _check_nonneg("snr", snr)
    n = c.size
    if n == 1:
        return BoundPair(0.0, 0.0)
    lower = id_lower(c, snr) if has_uniform_masses(c) else collision_lower(c, snr)
    upper = min(math.log2(n), ig(snr * c.energy))
    return BoundPair(lower, upper)
