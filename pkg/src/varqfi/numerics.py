"""Shared numerical kernels: adaptive quadrature, scalar maximization, slope fits.

All integrands must be vectorized (accept an ndarray of abscissae and return
one value per abscissa); everything downstream passes numpy-ufunc-style
callables, which keeps the panel loop cheap.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "AccuracyError",
    "OptimizationError",
    "ScalarMax",
    "integrate",
    "integrate_semi_infinite",
    "maximize_scalar",
    "loglog_slope",
]


class AccuracyError(RuntimeError):
    """Quadrature could not reach the requested tolerance.

    Carries the best estimate computed so far in ``best`` and its error
    estimate in ``err_estimate`` so callers can decide whether to accept it.
    """

    def __init__(self, message, best=math.nan, err_estimate=math.inf):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate


class OptimizationError(RuntimeError):
    """Optimizer hit its iteration cap; carries the best iterate found."""

    def __init__(self, message, best_x=None, best_value=math.nan):
        super().__init__(message)
        self.best_x = best_x
        self.best_value = best_value


# 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].
# The Gauss nodes are the odd-indexed Kronrod nodes.
_XK_HALF = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WK_HALF = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_WK_CENTER = 0.209482141084728
_WG_HALF = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
)
_WG_CENTER = 0.417959183673469

_NODES = np.array([-x for x in _XK_HALF] + [0.0] + [x for x in reversed(_XK_HALF)])
_WK = np.array(list(_WK_HALF) + [_WK_CENTER] + list(reversed(_WK_HALF)))
_WG = np.zeros(15)
_WG[1:14:2] = list(_WG_HALF) + [_WG_CENTER] + list(reversed(_WG_HALF))


def _gk15_panel(f, a, b):
    """One Gauss-Kronrod panel: returns (kronrod value, |kronrod - gauss|)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid + half * _NODES
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        raise ValueError("integrand must return one value per abscissa")
    if not np.all(np.isfinite(y)):
        raise ValueError(f"integrand returned a non-finite value on [{a}, {b}]")
    kron = half * float(_WK @ y)
    gauss = half * float(_WG @ y)
    return kron, abs(kron - gauss)


def integrate(f, a, b, rel_tol=1e-8, abs_tol=0.0, max_panels=10_000):
    """Globally adaptive Gauss-Kronrod quadrature of f over [a, b].

    Parameters
    ----------
    f : callable
        Vectorized integrand, finite on [a, b].
    a, b : float
        Finite endpoints. a > b integrates with the usual sign flip.
    rel_tol, abs_tol : float
        Subdivision stops once the summed panel error estimate drops below
        max(abs_tol, rel_tol*|value|).
    max_panels : int
        Subdivision cap; exceeding it raises AccuracyError carrying the
        best estimate so far.

    Returns
    -------
    (value, error_estimate)
        The error estimate is the conservative sum of per-panel
        Kronrod-Gauss differences.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate requires finite endpoints")
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0

    val, err = _gk15_panel(f, a, b)
    # heap entries: (-panel_error, tiebreak, a, b, value, error)
    heap = [(-err, 0, a, b, val, err)]
    count = 1
    total_val, total_err = val, err
    while total_err > max(abs_tol, rel_tol * abs(total_val)):
        if count >= max_panels:
            raise AccuracyError(
                f"quadrature did not converge within {max_panels} panels "
                f"(error estimate {total_err:.3e})",
                best=sign * total_val,
                err_estimate=total_err,
            )
        _, _, pa, pb, pval, perr = heapq.heappop(heap)
        if perr <= 0.0 or (pb - pa) <= 1e-15 * max(1.0, abs(pa), abs(pb)):
            raise AccuracyError(
                "panel width reached the roundoff floor before the tolerance",
                best=sign * total_val,
                err_estimate=total_err,
            )
        pm = 0.5 * (pa + pb)
        v1, e1 = _gk15_panel(f, pa, pm)
        v2, e2 = _gk15_panel(f, pm, pb)
        total_val += v1 + v2 - pval
        total_err += e1 + e2 - perr
        heapq.heappush(heap, (-e1, count, pa, pm, v1, e1))
        count += 1
        heapq.heappush(heap, (-e2, count, pm, pb, v2, e2))
        count += 1
        if count % 512 == 0:
            # refresh the running sums to shed accumulated cancellation
            total_val = math.fsum(item[4] for item in heap)
            total_err = math.fsum(item[5] for item in heap)

    total_val = math.fsum(item[4] for item in heap)
    total_err = max(math.fsum(item[5] for item in heap), 0.0)
    return sign * total_val, total_err


def integrate_semi_infinite(f, a, rel_tol=1e-8, abs_tol=0.0, max_panels=20_000):
    """Integrate f over [a, infinity) via the substitution w = a + t/(1-t).

    The integrand must decay at least as w**(-p) with p > 1 for the
    transformed integral to be proper.  Returns the value; accuracy
    failures raise AccuracyError from the underlying finite-interval rule.
    """

    def transformed(t):
        t = np.asarray(t, dtype=float)
        comp = np.maximum(1.0 - t, 1e-17)
        return np.asarray(f(a + t / comp), dtype=float) / comp**2

    value, _ = integrate(
        transformed, 0.0, 1.0, rel_tol=rel_tol, abs_tol=abs_tol, max_panels=max_panels
    )
    return value


class ScalarMax(NamedTuple):
    argmax: float
    value: float
    flat: bool


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_PRESCAN_POINTS = 33


def maximize_scalar(f, lo, hi, tol=1e-6):
    """Locate a scalar maximum of f on [lo, hi].

    A 33-point grid pre-scan picks the bracket (so mild multimodality is
    survivable), then golden-section refines it to an argmax interval of
    width tol.  A flat objective (grid spread at roundoff level) returns
    the interval midpoint with ``flat=True``.  The returned value is never
    below the best pre-scan sample.
    """
    lo = float(lo)
    hi = float(hi)
    if not hi > lo:
        raise ValueError("maximize_scalar requires hi > lo")
    if not tol > 0.0:
        raise ValueError("tol must be positive")

    xs = np.linspace(lo, hi, _PRESCAN_POINTS)
    fs = np.array([float(f(x)) for x in xs])
    if not np.all(np.isfinite(fs)):
        raise ValueError("objective returned a non-finite value during pre-scan")
    spread = float(fs.max() - fs.min())
    if spread <= 1e-13 * max(1.0, abs(float(fs.max()))):
        mid = 0.5 * (lo + hi)
        return ScalarMax(mid, float(f(mid)), True)

    k = int(np.argmax(fs))
    best_x, best_f = float(xs[k]), float(fs[k])
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, _PRESCAN_POINTS - 1)])

    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1 = float(f(x1))
    f2 = float(f(x2))
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = float(f(x2))
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = float(f(x1))
    for xc, fc in ((x1, f1), (x2, f2)):
        if fc > best_f:
            best_x, best_f = float(xc), float(fc)
    return ScalarMax(best_x, best_f, False)


def loglog_slope(xs, ys, window=None):
    """Least-squares slope of log(y) against log(x).

    window, if given, is an inclusive (x_lo, x_hi) interval selecting the
    points to fit.  Requires at least 3 selected points, all positive.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if window is not None:
        w_lo, w_hi = window
        mask = (xs >= w_lo) & (xs <= w_hi)
        xs, ys = xs[mask], ys[mask]
    if xs.size < 3:
        raise ValueError("need at least 3 points in the fit window")
    if np.any(xs <= 0.0) or np.any(ys <= 0.0):
        raise ValueError("log-log fit requires positive data")
    slope = np.polyfit(np.log(xs), np.log(ys), 1)[0]
    return float(slope)
