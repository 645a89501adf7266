"""Dense states and operators on truncated Fock spaces.

Single- and two-mode plumbing for the bound/oracle cross-checks: number and
annihilation operators, squeezed vacuum and thermal states, beam-splitter
unitaries, tensor products, partial traces, photon-number moments.  Dense
numpy throughout; the two-mode product dimension is capped at 4096 so every
matrix exponential stays desk-scale.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "MAX_PRODUCT_DIM",
    "TruncationError",
    "FockVector",
    "DensityMatrix",
    "InputMoments",
    "number_operator",
    "annihilation_operator",
    "squeezed_vacuum",
    "squeezed_dim",
    "thermal_state",
    "thermal_dim",
    "beam_splitter",
    "beam_splitter_apply",
    "tensor_product",
    "partial_trace",
    "moments",
]

MAX_PRODUCT_DIM = 4096

# discarded probability mass allowed by the default truncation rule
TAIL_MASS = 1e-8


class TruncationError(ValueError):
    """A truncated basis cannot hold the requested state to tolerance."""

    def __init__(self, message, suggested_dim=None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


def _check_dim(dim):
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {dim!r}")


@dataclass(frozen=True)
class FockVector:
    """Pure state on a truncated number basis; amps[k] multiplies |k>.

    The amplitude vector is normalized at construction and stored read-only.
    """

    dim: int
    amps: np.ndarray

    def __post_init__(self):
        _check_dim(self.dim)
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (self.dim,):
            raise ValueError("amps must be a length-dim vector")
        norm = float(np.linalg.norm(amps))
        if not math.isfinite(norm) or norm == 0.0:
            raise ValueError("state vector must have finite nonzero norm")
        amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    def density(self):
        """The rank-one density matrix |psi><psi|."""
        return DensityMatrix(self.dim, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite (to roundoff) operator."""

    dim: int
    elems: np.ndarray

    def __post_init__(self):
        _check_dim(self.dim)
        elems = np.asarray(self.elems, dtype=complex)
        if elems.shape != (self.dim, self.dim):
            raise ValueError("elems must be a dim x dim matrix")
        herm_defect = float(np.max(np.abs(elems - elems.conj().T)))
        if herm_defect > 1e-10:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm_defect:.3e}")
        tr = complex(np.trace(elems))
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"trace {tr.real:.12g} differs from 1 beyond 1e-8")
        low = float(np.linalg.eigvalsh(elems).min())
        if low < -1e-8:
            raise ValueError(f"negative eigenvalue {low:.3e} beyond -1e-8")
        elems = elems.copy()
        elems.setflags(write=False)
        object.__setattr__(self, "elems", elems)


@dataclass(frozen=True)
class InputMoments:
    """Photon-number mean and variance of the probe."""

    mean_n: float
    var_n: float

    def __post_init__(self):
        if not self.mean_n >= 0.0:
            raise ValueError("mean_n must be nonnegative")
        if not self.var_n >= 0.0:
            raise ValueError("var_n must be nonnegative")


def number_operator(dim):
    """diag(0, 1, ..., dim-1), the truncated n = a^dag a."""
    _check_dim(dim)
    return np.diag(np.arange(dim, dtype=float))


def annihilation_operator(dim):
    """Truncated a with entries a[k-1, k] = sqrt(k)."""
    _check_dim(dim)
    a = np.zeros((dim, dim), dtype=complex)
    ks = np.arange(1, dim)
    a[ks - 1, ks] = np.sqrt(ks)
    return a


def _squeezed_population_iter(r):
    """Yields p_{2m} for m = 0, 1, ... of an untruncated squeezed vacuum."""
    p = 1.0 / math.cosh(r)
    t2 = math.tanh(r) ** 2
    m = 0
    while True:
        yield p
        p *= t2 * (2 * m + 1) / (2 * m + 2)
        m += 1


def squeezed_dim(r, tail_mass=TAIL_MASS, max_dim=MAX_PRODUCT_DIM):
    """Smallest dim holding all but tail_mass of the squeezed vacuum."""
    if r < 0:
        raise ValueError("squeezing parameter must be nonnegative")
    if r == 0:
        return 2
    cum = 0.0
    for m, p in enumerate(_squeezed_population_iter(r)):
        cum += p
        if 1.0 - cum <= tail_mass:
            return max(2, 2 * m + 1)
        if 2 * m + 1 > max_dim:
            raise TruncationError(
                f"squeezing r={r} needs more than {max_dim} levels at "
                f"tail mass {tail_mass:g}"
            )


def squeezed_vacuum(r, dim):
    """Squeezed vacuum on a truncated basis, real nonnegative amplitudes.

    Even levels carry amplitude (tanh r)^m sqrt((2m)!)/(2^m m!)/sqrt(cosh r);
    the overall sign convention is a free global phase (moments and QFI are
    blind to it).  Raises TruncationError when the discarded probability
    mass exceeds the truncation rule, suggesting an adequate dim.
    """
    if r < 0:
        raise ValueError("squeezing parameter must be nonnegative")
    _check_dim(dim)
    amps = np.zeros(dim, dtype=complex)
    amp = 1.0 / math.sqrt(math.cosh(r))
    t = math.tanh(r)
    kept = 0.0
    m = 0
    while 2 * m < dim:
        amps[2 * m] = amp
        kept += amp * amp
        amp *= t * math.sqrt((2 * m + 1) / (2 * m + 2))
        m += 1
    discarded = max(1.0 - kept, 0.0)
    if discarded > TAIL_MASS:
        raise TruncationError(
            f"dim={dim} discards probability {discarded:.3e} of the r={r} "
            f"squeezed vacuum (allowed {TAIL_MASS:g})",
            suggested_dim=squeezed_dim(r),
        )
    return FockVector(dim, amps)


def thermal_dim(n_T, tail_mass=TAIL_MASS):
    """Smallest dim whose geometric tail mass is at most tail_mass."""
    if n_T < 0:
        raise ValueError("thermal occupation must be nonnegative")
    if n_T == 0:
        return 2
    q = n_T / (n_T + 1.0)
    return max(2, math.ceil(math.log(tail_mass) / math.log(q)))


def thermal_state(n_T, dim):
    """Thermal (geometric) diagonal state renormalized on the truncated basis."""
    if n_T < 0:
        raise ValueError("thermal occupation must be nonnegative")
    _check_dim(dim)
    q = n_T / (n_T + 1.0)
    w = q ** np.arange(dim, dtype=float)
    return DensityMatrix(dim, np.diag(w / w.sum()).astype(complex))


@functools.lru_cache(maxsize=32)
def _beam_splitter_blocks(theta, dim_a, dim_b):
    """Per-sector orthogonal blocks of the two-mode mixer.

    The generator theta (a b^dag - a^dag b) conserves the total photon
    number, so on the truncated product space it is block diagonal over
    sectors of fixed total N.  Each sector block is a small real
    antisymmetric tridiagonal matrix; exponentiating the blocks one by one
    gives exactly the exponential of the full truncated generator at a tiny
    fraction of the dense cost.  Returns (flat indices, orthogonal block)
    pairs, both read-only.
    """
    blocks = []
    for total in range(dim_a + dim_b - 1):
        lo = max(0, total - (dim_b - 1))
        hi = min(total, dim_a - 1)
        ns = np.arange(lo, hi + 1)
        idx = ns * dim_b + (total - ns)
        size = ns.size
        if size == 1:
            block = np.ones((1, 1))
        else:
            gen = np.zeros((size, size))
            n = ns[1:].astype(float)
            coup = theta * np.sqrt(n * (total - n + 1.0))
            gen[np.arange(size - 1), np.arange(1, size)] = coup
            gen[np.arange(1, size), np.arange(size - 1)] = -coup
            block = scipy.linalg.expm(gen)
        idx.setflags(write=False)
        block.setflags(write=False)
        blocks.append((idx, block))
    return tuple(blocks)


def beam_splitter(theta, dim_a, dim_b):
    """exp(theta (a b^dag - a^dag b)) on the dim_a*dim_b product space.

    Exponential of the anti-Hermitian truncated generator, assembled from
    its photon-number sector blocks, so the result is exactly unitary
    (orthogonal, the generator is real) on the truncated space.
    """
    _check_dim(dim_a)
    _check_dim(dim_b)
    if dim_a * dim_b > MAX_PRODUCT_DIM:
        raise ValueError(
            f"product dimension {dim_a * dim_b} exceeds the cap {MAX_PRODUCT_DIM}"
        )
    u = np.zeros((dim_a * dim_b, dim_a * dim_b))
    for idx, block in _beam_splitter_blocks(float(theta), int(dim_a), int(dim_b)):
        u[np.ix_(idx, idx)] = block
    return u


def beam_splitter_apply(theta, joint_vec, dim_a, dim_b):
    """Apply the two-mode mixer to a joint pure-state vector.

    Same map as beam_splitter(theta, dim_a, dim_b) @ joint_vec but works
    sector by sector without materializing the full matrix, which keeps
    repeated channel applications on large product spaces cheap.
    """
    _check_dim(dim_a)
    _check_dim(dim_b)
    if dim_a * dim_b > MAX_PRODUCT_DIM:
        raise ValueError(
            f"product dimension {dim_a * dim_b} exceeds the cap {MAX_PRODUCT_DIM}"
        )
    vec = np.asarray(joint_vec)
    if vec.shape != (dim_a * dim_b,):
        raise ValueError("joint_vec must have length dim_a * dim_b")
    out = np.empty_like(vec)
    for idx, block in _beam_splitter_blocks(float(theta), int(dim_a), int(dim_b)):
        out[idx] = block @ vec[idx]
    return out


def tensor_product(a, b):
    """Kronecker product of two operators."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("tensor_product expects two matrices")
    return np.kron(a, b)


def partial_trace(rho_ab, keep, dims):
    """Trace out one register of a two-mode operator.

    keep=0 keeps the first (dim_a) register, keep=1 the second.  rho_ab may
    be any square array of shape (dim_a*dim_b, dim_a*dim_b).
    """
    dim_a, dim_b = dims
    _check_dim(dim_a)
    _check_dim(dim_b)
    rho = np.asarray(rho_ab, dtype=complex)
    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValueError(
            f"shape {rho.shape} does not match product dims ({dim_a}, {dim_b})"
        )
    four = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == 0:
        out = np.einsum("ijkj->ik", four)
    elif keep == 1:
        out = np.einsum("ijil->jl", four)
    else:
        raise ValueError("keep must be 0 (first register) or 1 (second)")
    return DensityMatrix(out.shape[0], out)


def moments(state):
    """Photon-number mean and variance of a FockVector or DensityMatrix."""
    if isinstance(state, FockVector):
        p = np.abs(state.amps) ** 2
    elif isinstance(state, DensityMatrix):
        p = np.real(np.diag(state.elems))
    else:
        raise TypeError("moments expects a FockVector or DensityMatrix")
    k = np.arange(p.size, dtype=float)
    mean = float(k @ p)
    second = float((k * k) @ p)
    return InputMoments(mean, max(second - mean * mean, 0.0))
