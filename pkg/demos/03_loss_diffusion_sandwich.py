"""Sandwiching the true information between two computable bounds.

With loss and phase diffusion acting together there is no closed form for
the quantum Fisher information, but it can be pinched from both sides:

  below by the classical information of a fixed quadrature measurement
  (error propagation through <i(a^2 - a^dag^2)>), and
  above by the variational bound 4 / (1/var_n + (1-eta)/(eta mean_n) + 8 lam^2).

The Fock-space oracle sits between the two on every row.  Both bounds
flatten at high energy: diffusion caps the available information at
1/(2 lam^2) no matter how bright the probe is.
"""

import math

from varqfi.bounds import cq_min_loss_diffusion, im_opt_squeezed
from varqfi.fock_core import InputMoments
from varqfi.qfi_oracle import squeezed_probe_qfi

ETA, LAM = 0.95, 0.1

print(f"eta = {ETA}, diffusion lam = {LAM}, information ceiling 1/(2 lam^2) = "
      f"{1.0 / (2.0 * LAM**2):g}")
print(f"{'r':>4} {'mean_n':>8} {'measurement':>12} {'oracle':>12} {'bound':>12}")
for r in (0.2, 0.4, 0.6, 0.8):
    mean_n = math.sinh(r) ** 2
    m = InputMoments(mean_n, 2.0 * mean_n * (mean_n + 1.0))
    lower = im_opt_squeezed(r, ETA, LAM)
    oracle = squeezed_probe_qfi(r, ETA, 0.0, LAM)
    upper = cq_min_loss_diffusion(m, ETA, LAM)
    assert lower <= oracle <= upper
    print(f"{r:>4.1f} {mean_n:>8.4f} {lower:>12.6f} {oracle:>12.6f} {upper:>12.6f}")

print()
print("Bright-probe plateaus of the two bounds (oracle omitted: the basis")
print("needed for r > 0.8 outgrows the truncation rule):")
print(f"{'r':>5} {'mean_n':>10} {'measurement':>12} {'bound':>12}")
for r in (2.0, 3.0, 4.0, 4.7):
    mean_n = math.sinh(r) ** 2
    m = InputMoments(mean_n, 2.0 * mean_n * (mean_n + 1.0))
    print(f"{r:>5.1f} {mean_n:>10.1f} {im_opt_squeezed(r, ETA, LAM):>12.6f} "
          f"{cq_min_loss_diffusion(m, ETA, LAM):>12.6f}")
