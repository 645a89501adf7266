"""Brute-force Fisher information on truncated Fock spaces.

Exact quantum Fisher information of a phase-covariant channel output by
eigendecomposition of the state, classical Fisher information of a scalar
readout by error propagation, and a derivative-free minimizer for the raw
variational costs.  These are the ground-truth routes the closed forms in
bounds are validated against, so nothing here shares code with them.
"""

from __future__ import annotations

import numpy as np
import scipy.optimize

from .channels import lossy_thermal_channel_pure, phase_diffusion
from .fock_core import squeezed_dim, squeezed_vacuum, thermal_dim
from .numerics import OptimizationError

__all__ = [
    "qfi_phase_covariant",
    "classical_fisher_error_propagation",
    "minimize_raw_cq",
    "squeezed_probe_qfi",
]


def qfi_phase_covariant(rho, support_cutoff=1e-11):
    """Exact QFI for a phase shift generated by the number operator.

    The output of a phase-covariant channel obeys
    d rho / d phi = -i [n, rho], entrywise -i (l - k) rho_lk, so no
    finite-difference derivative is needed.  With rho = sum_i p_i |e_i><e_i|
    the value is 2 sum |<e_i| drho |e_j>|^2 / (p_i + p_j) over eigenpairs
    whose combined weight exceeds support_cutoff times the top eigenvalue.
    """
    w, vecs = np.linalg.eigh(rho.elems)
    if float(w.min()) < -1e-8:
        raise ValueError("invalid state: not positive semidefinite within tolerance")
    levels = np.arange(rho.dim)
    drho = -1j * np.subtract.outer(levels, levels) * rho.elems
    m = vecs.conj().T @ drho @ vecs
    pair_sums = np.add.outer(w, w)
    mask = pair_sums > support_cutoff * float(w.max())
    return float(2.0 * np.sum(np.abs(m[mask]) ** 2 / pair_sums[mask]))


def classical_fisher_error_propagation(mean_M, var_M, dmean_dphi):
    """Fisher information (d<M>/dphi)^2 / Var M of a scalar readout.

    mean_M is accepted so callers can hand over the full moment triple of a
    working point; only the variance and the mean's derivative enter.
    """
    if not var_M > 0.0:
        raise ValueError("degenerate measurement: var_M must be positive")
    return dmean_dphi**2 / var_M


def _fd_gradient(f, x, scale=1e-4):
    g = np.empty(x.size)
    for i in range(x.size):
        h = scale * max(1.0, abs(x[i]))
        e = np.zeros(x.size)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def _fd_hessian(f, x, scale=1e-3):
    k = x.size
    h = scale * np.maximum(1.0, np.abs(x))
    hess = np.empty((k, k))
    f0 = f(x)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        hess[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            hess[i, j] = hess[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * h[i] * h[j])
    return hess


def minimize_raw_cq(raw_cq, start, max_iter=10_000):
    """Minimize a smooth coercive variational cost, called as raw_cq(*x).

    Derivative-free simplex descent with one restart, then a short
    finite-difference Newton polish that drives the gradient norm below
    1e-7.  The raw variational costs are quadratic in their parameters, so
    the polish lands on the global minimum; for general smooth inputs the
    result is a certified local minimum.

    Returns (minimum value, argmin).  Raises OptimizationError carrying the
    best iterate if no point passes the gradient certificate in budget.
    """
    x0 = np.asarray(start, dtype=float)
    if x0.ndim != 1 or x0.size == 0:
        raise ValueError("start must be a nonempty 1-d parameter vector")

    def f(x):
        return float(raw_cq(*x))

    best_x, best_val = x0, f(x0)
    for _ in range(2):
        res = scipy.optimize.minimize(
            f,
            best_x,
            method="Nelder-Mead",
            options={"maxiter": int(max_iter) // 2, "xatol": 1e-11, "fatol": 1e-13},
        )
        if float(res.fun) <= best_val:
            best_x, best_val = np.asarray(res.x, dtype=float), float(res.fun)
    grad = _fd_gradient(f, best_x)
    for _ in range(12):
        if float(np.linalg.norm(grad)) <= 1e-7:
            return best_val, best_x
        step, *_ = np.linalg.lstsq(_fd_hessian(f, best_x), -grad, rcond=1e-12)
        if not np.all(np.isfinite(step)):
            break
        moved = False
        scale = 1.0
        for _ in range(20):
            cand = best_x + scale * step
            val = f(cand)
            if val <= best_val + 1e-12 * max(1.0, abs(best_val)):
                cand_grad = _fd_gradient(f, cand)
                if val < best_val or float(np.linalg.norm(cand_grad)) < float(
                    np.linalg.norm(grad)
                ):
                    best_x, best_val, grad = cand, val, cand_grad
                    moved = True
                break
            scale *= 0.5
        if not moved:
            break
    if float(np.linalg.norm(grad)) <= 1e-7:
        return best_val, best_x
    raise OptimizationError(
        "no stationary point certified within the iteration budget",
        best_x=best_x,
        best_value=best_val,
    )


def squeezed_probe_qfi(r, eta, n_T=0.0, lam=0.0, dim=None, bath_dim=None):
    """Oracle QFI of a squeezed vacuum after loss and phase diffusion.

    Sizes the probe register so the beam splitter can move every photon
    between probe and bath without clipping a populated sector, applies
    loss then diffusion, and evaluates the QFI at the working point (the
    closing phase shift commutes with both noise maps and does not change
    the QFI).  dim and bath_dim override the automatic sizing.
    """
    if dim is None:
        dim = squeezed_dim(r) + thermal_dim(n_T) - 1
    if bath_dim is None:
        bath_dim = dim
    psi = squeezed_vacuum(r, dim)
    if eta == 1.0:
        rho = psi.density()
    else:
        rho = lossy_thermal_channel_pure(psi, eta, n_T, bath_dim)
    if lam > 0.0:
        rho = phase_diffusion(rho, lam)
    return qfi_phase_covariant(rho)
