"""Phase-covariant noise maps on truncated density matrices.

Three maps: phase shift, loss into a thermal bath (realized by the two-mode
beam-splitter dilation, never by Kraus operators), and Gaussian phase
diffusion (entrywise damping of Fock coherences).  A quadrature evaluation
of the diffusion integral is provided as an independent cross-check route
for the entrywise map; tests compare the two, they must never be merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock_core import (
    DensityMatrix,
    TruncationError,
    beam_splitter,
    beam_splitter_apply,
    partial_trace,
    tensor_product,
    thermal_dim,
    thermal_state,
)
from .numerics import _NODES, _WG, _WK

__all__ = [
    "NoiseParams",
    "phase_shift",
    "lossy_thermal_channel",
    "lossy_thermal_channel_pure",
    "phase_diffusion",
    "phase_diffusion_by_quadrature",
]


@dataclass(frozen=True)
class NoiseParams:
    """Loss transmission eta, thermal occupation n_T, diffusion strength lam."""

    eta: float
    n_T: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")
        if not self.n_T >= 0.0:
            raise ValueError("n_T must be nonnegative")
        if not self.lam >= 0.0:
            raise ValueError("lam must be nonnegative")


def phase_shift(rho, phi):
    """rho_lk -> exp(-i phi (l-k)) rho_lk, the unitary exp(-i phi n)."""
    # exponentiate the index differences so the diagonal factor is exactly 1
    n = np.arange(rho.dim)
    factors = np.exp(-1j * phi * (n[:, None] - n[None, :]))
    return DensityMatrix(rho.dim, rho.elems * factors)


def lossy_thermal_channel(rho, eta, n_T, bath_dim):
    """Mix rho with a thermal bath on a transmission-eta beam splitter.

    The bath register starts in thermal_state(n_T, bath_dim), the two-mode
    state is conjugated by beam_splitter(arccos(sqrt(eta))), and the bath is
    traced out.  bath_dim must at least satisfy the thermal truncation rule;
    callers that push many probe photons into the bath should size it with
    the extra receive capacity on top of that floor.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    if n_T < 0.0:
        raise ValueError("n_T must be nonnegative")
    floor = thermal_dim(n_T)
    if bath_dim < floor:
        q = n_T / (n_T + 1.0)
        raise TruncationError(
            f"bath_dim={bath_dim} leaves thermal tail mass {q**bath_dim:.3e} "
            f"above {1e-8:g}",
            suggested_dim=floor,
        )
    if eta == 1.0:
        return DensityMatrix(rho.dim, rho.elems.copy())
    theta = math.acos(math.sqrt(eta))
    joint = tensor_product(rho.elems, thermal_state(n_T, bath_dim).elems)
    u = beam_splitter(theta, rho.dim, bath_dim)
    return partial_trace(u @ joint @ u.conj().T, 0, (rho.dim, bath_dim))


def lossy_thermal_channel_pure(psi, eta, n_T, bath_dim):
    """Same map as lossy_thermal_channel, specialized to a pure probe.

    The thermal bath is diagonal in the number basis, so the joint input is
    a mixture of pure vectors |psi>|k>; each is pushed through the beam
    splitter sector by sector and contributes one rank-one term to the
    output.  Cost scales with the joint vector length instead of its
    square.  Agrees with the dense route to roundoff; kept as a separate
    code path so the two can be checked against each other.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    if n_T < 0.0:
        raise ValueError("n_T must be nonnegative")
    floor = thermal_dim(n_T)
    if bath_dim < floor:
        q = n_T / (n_T + 1.0)
        raise TruncationError(
            f"bath_dim={bath_dim} leaves thermal tail mass {q**bath_dim:.3e} "
            f"above {1e-8:g}",
            suggested_dim=floor,
        )
    if eta == 1.0:
        return psi.density()
    theta = math.acos(math.sqrt(eta))
    q = n_T / (n_T + 1.0)
    weights = q ** np.arange(bath_dim, dtype=float)
    weights = weights / weights.sum()
    dim = psi.dim
    out = np.zeros((dim, dim), dtype=complex)
    for k, w in enumerate(weights):
        if w == 0.0:
            continue
        joint = np.zeros(dim * bath_dim, dtype=complex)
        joint[np.arange(dim) * bath_dim + k] = psi.amps
        mixed = beam_splitter_apply(theta, joint, dim, bath_dim).reshape(dim, bath_dim)
        out += w * (mixed @ mixed.conj().T)
    return DensityMatrix(dim, out)


def phase_diffusion(rho, lam):
    """Gaussian dephasing: rho_lk -> exp(-lam^2 (l-k)^2) rho_lk."""
    if lam < 0.0:
        raise ValueError("lam must be nonnegative")
    k = np.arange(rho.dim)
    damp = np.exp(-(lam**2) * np.subtract.outer(k, k) ** 2)
    return DensityMatrix(rho.dim, rho.elems * damp)


def _gk15_matrix(f, a, b):
    """Matrix-valued Gauss-Kronrod panel; error is the max-entry defect."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = [f(mid + half * t) for t in _NODES]
    kron = half * sum(w * v for w, v in zip(_WK, vals))
    gauss = half * sum(w * v for w, v in zip(_WG, vals))
    return kron, float(np.max(np.abs(kron - gauss)))


def _adaptive_matrix_quad(f, a, b, abs_tol, depth=0):
    kron, err = _gk15_matrix(f, a, b)
    if err <= abs_tol or depth >= 40:
        return kron
    mid = 0.5 * (a + b)
    half_tol = abs_tol / 2.0
    return _adaptive_matrix_quad(f, a, mid, half_tol, depth + 1) + _adaptive_matrix_quad(
        f, mid, b, half_tol, depth + 1
    )


def phase_diffusion_by_quadrature(rho, lam, abs_tol=1e-10):
    """Phase diffusion evaluated as a Gaussian average over phase kicks.

    Integrates exp(-phi^2/(4 lam^2))/sqrt(4 pi lam^2) U(phi)^dag rho U(phi)
    with adaptive quadrature to abs_tol per entry.  The kick distribution
    has standard deviation lam*sqrt(2), so the window spans 8 of those
    sigmas, leaving truncated Gaussian mass below 1e-14 (a [-8 lam, 8 lam]
    window would lose 1.5e-8 of the trace).  Serves as the independent
    oracle for the entrywise phase_diffusion map.
    """
    if lam < 0.0:
        raise ValueError("lam must be nonnegative")
    if lam == 0.0:
        return DensityMatrix(rho.dim, rho.elems.copy())
    norm = 1.0 / math.sqrt(4.0 * math.pi * lam**2)

    def integrand(phi):
        weight = norm * math.exp(-(phi**2) / (4.0 * lam**2))
        return weight * phase_shift(rho, -phi).elems

    half_width = 8.0 * math.sqrt(2.0) * lam
    total = _adaptive_matrix_quad(integrand, -half_width, half_width, abs_tol)
    return DensityMatrix(rho.dim, total)
