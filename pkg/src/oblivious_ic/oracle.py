"""
Exact mutual information of a discrete input over unit-variance AWGN.

The output density of ``Y = scale * X + Z`` is a Gaussian mixture, and
``I(X; Y) = h(Y) - h(Z)``.  ``h(Y)`` is integrated by adaptive panel
bisection with a fixed 20-point Gauss-Legendre rule on each panel.

This module deliberately does not import :mod:`oblivious_ic.bounds`: it is
the reference the closed forms are checked against.  It only needs an object
with ``points`` and ``masses`` attributes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG2E = 1.0 / math.log(2.0)
#: Differential entropy of a standard normal, ``0.5 * log2(2 pi e)``.
GAUSS_ENTROPY_BITS = 0.5 * math.log2(2.0 * math.pi * math.e)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
# initial panel width (in noise standard deviations) inside the mode windows
_PANEL_WIDTH = 2.0
_P_FLOOR = 1e-300


class OracleConvergenceError(ArithmeticError):
    """Adaptive quadrature hit its subdivision budget before converging."""

    def __init__(self, message, error_estimate, subdivisions):
        super().__init__(message)
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy controls for :func:`mixture_entropy`.

    abs_tol
        Target absolute error on ``h(Y)`` in bits.
    max_subdivisions
        Maximum number of panel bisections before giving up.
    tail_sigma
        The integration range extends this many noise standard deviations
        beyond the outermost mixture component.
    """

    abs_tol: float = 1e-8
    max_subdivisions: int = 200_000
    tail_sigma: float = 10.0

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be > 0")
        if self.tail_sigma < 8.0:
            raise ValueError("tail_sigma must be >= 8")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be >= 0")


DEFAULT_QUADRATURE = QuadratureSpec()


def _entropy_density(y, means, log_masses):
    """``-p(y) log2 p(y)`` for the mixture, evaluated on an array ``y``."""
    z = y[..., None] - means
    logp = log_masses - 0.5 * z * z
    m = logp.max(axis=-1)
    logpy = m + np.log(np.exp(logp - m[..., None]).sum(axis=-1)) - _LOG_SQRT_2PI
    py = np.exp(logpy)
    out = -py * logpy * LOG2E
    out[py < _P_FLOOR] = 0.0
    return out


def _gl(a, b, means, log_masses):
    """Gauss-Legendre estimate on each panel ``[a_k, b_k]``."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    y = mid[:, None] + half[:, None] * _GL_NODES
    return half * (_entropy_density(y, means, log_masses) @ _GL_WEIGHTS)


def _initial_panels(means, tail):
    """Panels covering ``[min - tail, max + tail]``.

    Windows of half-width ``tail`` around each component are meshed finely;
    any gap between windows, where the density is below ``phi(tail)``, is a
    single panel.
    """
    lo = np.sort(means) - tail
    hi = np.sort(means) + tail
    edges = []
    start, stop = lo[0], hi[0]
    for a, b in zip(lo[1:], hi[1:]):
        if a <= stop:
            stop = max(stop, b)
            continue
        edges.append((start, stop))
        start, stop = a, b
    edges.append((start, stop))

    bounds = []
    prev = None
    for a, b in edges:
        if prev is not None:
            bounds.append(np.array([prev, a]))
        k = max(1, int(math.ceil((b - a) / _PANEL_WIDTH)))
        pts = np.linspace(a, b, k + 1)
        bounds.append(np.column_stack([pts[:-1], pts[1:]]).reshape(-1))
        prev = b
    flat = np.concatenate(bounds).reshape(-1, 2)
    return flat[:, 0].copy(), flat[:, 1].copy()


def mixture_entropy(c, scale: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Differential entropy in bits of ``scale * X + Z`` with ``X ~ c``, ``Z ~ N(0, 1)``.

    Each panel is compared against the sum over its two halves; panels whose
    discrepancy is too large are bisected until the summed discrepancy drops
    below ``q.abs_tol``.  The returned value uses the refined halves.

    Raises
    ------
    OracleConvergenceError
        If ``q.max_subdivisions`` bisections were not enough.
    """
    scale = float(scale)
    if not math.isfinite(scale) or scale < 0.0:
        raise ValueError(f"scale must be finite and >= 0, got {scale!r}")
    means = scale * np.asarray(c.points, dtype=float)
    log_masses = np.log(np.asarray(c.masses, dtype=float))

    a, b = _initial_panels(means, q.tail_sigma)
    support = b[-1] - a[0]
    whole = _gl(a, b, means, log_masses)
    done_vals: list[np.ndarray] = []
    done_errs: list[np.ndarray] = []
    subdivisions = 0
    while True:
        m = 0.5 * (a + b)
        left = _gl(a, m, means, log_masses)
        right = _gl(m, b, means, log_masses)
        halves = left + right
        err = np.abs(whole - halves)
        settled_err = math.fsum(np.concatenate(done_errs)) if done_errs else 0.0
        total_err = settled_err + math.fsum(err)
        if total_err <= q.abs_tol:
            done_vals.append(halves)
            done_errs.append(err)
            break
        # split panels carrying more than their share of the remaining budget
        budget = max(q.abs_tol - settled_err, 0.0)
        share = budget * (b - a) / support
        split = err > np.minimum(share, 0.5 * err.max())
        done_vals.append(halves[~split])
        done_errs.append(err[~split])
        subdivisions += int(split.sum())
        if subdivisions > q.max_subdivisions:
            raise OracleConvergenceError(
                f"no convergence after {subdivisions} subdivisions "
                f"(error estimate {total_err:.3g} bits > {q.abs_tol:.3g})",
                total_err, subdivisions)
        a_s, m_s, b_s = a[split], m[split], b[split]
        a = np.concatenate([a_s, m_s])
        b = np.concatenate([m_s, b_s])
        whole = np.concatenate([left[split], right[split]])
        order = np.argsort(a, kind="stable")
        a, b, whole = a[order], b[order], whole[order]
    return math.fsum(np.concatenate(done_vals))


def mi_exact(c, snr: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``I(X; sqrt(snr) X + Z)`` in bits, via ``h(Y) - h(Z)`` and clipped at 0."""
    snr = float(snr)
    if not math.isfinite(snr) or snr < 0.0:
        raise ValueError(f"snr must be finite and >= 0, got {snr!r}")
    if len(c.points) == 1 or snr == 0.0:
        return 0.0
    h = mixture_entropy(c, math.sqrt(snr), q)
    return max(h - GAUSS_ENTROPY_BITS, 0.0)
