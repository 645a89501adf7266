"""Closed-form variational bounds for noisy optical phase estimation.

Upper bounds on the quantum Fisher information of a phase-encoded probe
subject to photon loss into a thermal environment and to Gaussian phase
diffusion, the matching phase-variance floor, the exact Gaussian result for
a squeezed-vacuum probe, and the raw variational costs whose numerical
minima must reproduce the closed forms.  Everything here is pure float
arithmetic; probe states enter only through their photon-number moments.

All reciprocal-form bounds are evaluated as 4 / (sum of inverse terms) so
that degenerate probes (zero mean or zero variance) map to 0 and infinite
variance maps to the noise-limited ceiling, with inf sentinels instead of
NaN throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "GaussianAux",
    "cq_min_loss_thermal",
    "cq_min_loss_zero_T",
    "exact_qfi_squeezed",
    "cq_min_loss_diffusion",
    "phase_variance_bound_full",
    "im_opt_squeezed",
    "raw_cq_loss_thermal",
    "raw_cq_loss_diffusion",
]


def _inv(x):
    """1/x with the conventions 1/0 = +inf and 1/inf = 0."""
    return math.inf if x == 0.0 else 1.0 / x


def _check_eta(eta):
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")


def _check_nonneg(value, name):
    if not value >= 0.0:
        raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class GaussianAux:
    """Effective Gaussian parameters of a squeezed probe after thermal loss.

    u = eta sinh 2r and v = eta cosh 2r + (1 - eta)(2 n_T + 1).  Physical
    parameters always satisfy 1 + v^2 - u^2 > 0; construction enforces it.
    """

    u: float
    v: float

    def __post_init__(self):
        if not 1.0 + self.v**2 - self.u**2 > 0.0:
            raise ValueError("GaussianAux requires 1 + v^2 - u^2 > 0")

    @classmethod
    def from_params(cls, r, eta, n_T=0.0):
        _check_nonneg(r, "r")
        _check_eta(eta)
        _check_nonneg(n_T, "n_T")
        u = eta * math.sinh(2.0 * r)
        v = eta * math.cosh(2.0 * r) + (1.0 - eta) * (2.0 * n_T + 1.0)
        return cls(u, v)


def _thermal_rate(mean_n, n_T):
    """Loss-induced decay bracket (n_T+1)/mean_n + n_T/(mean_n+1)."""
    return (n_T + 1.0) * _inv(mean_n) + n_T / (mean_n + 1.0)


def cq_min_loss_thermal(m, eta, n_T):
    """Variational QFI upper bound under photon loss into a thermal bath.

    4 / [1/var_n + ((1-eta)/eta)((n_T+1)/mean_n + n_T/(mean_n+1))], valid
    for any probe with the given moments.  A vacuum probe under loss
    (mean_n = 0, eta < 1) and a number eigenstate (var_n = 0) both give 0.
    """
    _check_eta(eta)
    _check_nonneg(n_T, "n_T")
    denom = _inv(m.var_n)
    if eta < 1.0:
        denom += (1.0 - eta) / eta * _thermal_rate(m.mean_n, n_T)
    return 4.0 * _inv(denom)


def cq_min_loss_zero_T(m, eta):
    """Loss-only bound 4/[1/var_n + (1-eta)/(eta mean_n)].

    Identical, float for float, to cq_min_loss_thermal at n_T = 0.
    """
    return cq_min_loss_thermal(m, eta, 0.0)


def exact_qfi_squeezed(r, eta, n_T):
    """Exact phase QFI of a squeezed vacuum after loss: 4u^2/(1+v^2-u^2)."""
    aux = GaussianAux.from_params(r, eta, n_T)
    return 4.0 * aux.u**2 / (1.0 + aux.v**2 - aux.u**2)


def cq_min_loss_diffusion(m, eta, lam):
    """QFI upper bound under zero-temperature loss plus phase diffusion.

    4 / [1/var_n + (1-eta)/(eta mean_n) + 8 lam^2].  The diffusion term
    caps the bound at 1/(2 lam^2) no matter how bright the probe is.
    """
    _check_eta(eta)
    _check_nonneg(lam, "lam")
    denom = _inv(m.var_n)
    if eta < 1.0:
        denom += (1.0 - eta) / eta * _thermal_rate(m.mean_n, 0.0)
    denom += 8.0 * lam**2
    return 4.0 * _inv(denom)


def phase_variance_bound_full(m, eta, n_T, lam):
    """Phase-variance floor with thermal loss and diffusion combined.

    1/(4 var_n) + ((1-eta)/(4 eta))((n_T+1)/mean_n + n_T/(mean_n+1))
    + 2 lam^2.  Zero moments give +inf.  Term for term this is one quarter
    of the reciprocal of the matching QFI bound, so at n_T = 0 it equals
    1/cq_min_loss_diffusion exactly.
    """
    _check_eta(eta)
    _check_nonneg(n_T, "n_T")
    _check_nonneg(lam, "lam")
    out = 0.25 * _inv(m.var_n)
    if eta < 1.0:
        out += (1.0 - eta) / (4.0 * eta) * _thermal_rate(m.mean_n, n_T)
    out += 2.0 * lam**2
    return out


def im_opt_squeezed(r, eta, lam):
    """Fisher information of the optimal quadratic readout at the origin.

    Error-propagation information of the number-quadratic observable
    i(a^2 - a^dag^2) on a squeezed vacuum after zero-temperature loss and
    phase diffusion: 4 u^2 e^{-8 lam^2} / [1 + v^2 + u^2 (1 - 3 e^{-16
    lam^2}) / 2].  The mean of the observable rides on second-order
    coherences, damped by e^{-4 lam^2} and squared in the numerator; its
    variance picks up fourth-order coherences, damped by e^{-16 lam^2} in
    the denominator.  At lam = 0 it reduces to exact_qfi_squeezed(r, eta,
    0) identically.
    """
    _check_nonneg(lam, "lam")
    aux = GaussianAux.from_params(r, eta, 0.0)
    num = 4.0 * aux.u**2 * math.exp(-8.0 * lam**2)
    den = 1.0 + aux.v**2 + 0.5 * aux.u**2 * (1.0 - 3.0 * math.exp(-16.0 * lam**2))
    return num / den


def raw_cq_loss_thermal(m, eta, n_T, alpha, beta, gamma):
    """Raw variational cost for thermal loss, before minimization.

    Shorthands c1 = sqrt(eta), s1 = sqrt(1-eta), c2 = sqrt(n_T+1),
    s2 = sqrt(n_T).  Minimizing over (alpha, beta, gamma) reproduces
    cq_min_loss_thermal; the factor 4 keeps both on the same scale.
    """
    _check_eta(eta)
    _check_nonneg(n_T, "n_T")
    c1 = math.sqrt(eta)
    s1 = math.sqrt(1.0 - eta)
    c2 = math.sqrt(n_T + 1.0)
    s2 = math.sqrt(n_T)
    g1 = m.var_n * (c1**2 + alpha * s1**2) ** 2
    g2 = m.mean_n * s1**2 * (c1 * c2 * (1.0 - alpha) - gamma * s2) ** 2
    g3 = (m.mean_n + 1.0) * s1**2 * (c1 * s2 * (1.0 - alpha) - gamma * c2) ** 2
    g4 = ((s1**2 + alpha * c1**2 + beta) * c2 * s2 + gamma * c1 * (c2**2 + s2**2)) ** 2
    return 4.0 * (g1 + g2 + g3 + g4)


def raw_cq_loss_diffusion(m, eta, lam, alpha, beta):
    """Raw variational cost for loss plus diffusion, before minimization.

    4 var_n [eta + alpha(1-eta) - beta]^2 + 4 mean_n (1-alpha)^2 eta (1-eta)
    + beta^2/(2 lam^2).  Minimizing over (alpha, beta) reproduces
    cq_min_loss_diffusion.  At lam = 0 the last term is 0 for beta = 0 and
    +inf otherwise: an undiffused phase reference tolerates no beta.
    """
    _check_eta(eta)
    _check_nonneg(lam, "lam")
    out = 4.0 * m.var_n * (eta + alpha * (1.0 - eta) - beta) ** 2
    out += 4.0 * m.mean_n * (1.0 - alpha) ** 2 * eta * (1.0 - eta)
    if lam == 0.0:
        return out if beta == 0.0 else math.inf
    return out + beta**2 / (2.0 * lam**2)
