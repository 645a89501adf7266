"""How tight is the variational upper bound under thermal loss?

The bound

    C_Q^min = 4 / [ 1/var_n + ((1-eta)/eta) ((n_T+1)/mean_n + n_T/(mean_n+1)) ]

only sees the first two moments of the probe's photon-number distribution.
For a squeezed vacuum (var_n = 2 mean_n (mean_n + 1)) it can be compared
against the exact information of the same probe: the bound dominates
everywhere, is loose at low energy, and becomes tight as the probe
brightens, even for a hot bath.
"""

import math

from varqfi.bounds import cq_min_loss_thermal, exact_qfi_squeezed
from varqfi.fock_core import InputMoments

ETA = 0.8

print(f"transmission eta = {ETA}")
print(f"{'mean_n':>10} {'n_T':>5} {'bound':>12} {'exact':>12} {'ratio':>8}")
for n_T in (10.0, 100.0):
    for mean_n in (0.1, 1.0, 10.0, 100.0, 1e3, 1e4):
        m = InputMoments(mean_n, 2.0 * mean_n * (mean_n + 1.0))
        r = math.asinh(math.sqrt(mean_n))
        bound = cq_min_loss_thermal(m, ETA, n_T)
        exact = exact_qfi_squeezed(r, ETA, n_T)
        print(f"{mean_n:>10g} {n_T:>5g} {bound:>12.6g} {exact:>12.6g} {bound / exact:>8.4f}")
    print()

print("Limiting behavior built into the formula:")
m = InputMoments(1.0, 4.0)
print(f"  lossless probe keeps everything:  eta=1 -> {cq_min_loss_thermal(m, 1.0, 7.0)}"
      f"  (= 4 var_n)")
print(f"  scalding bath erases everything:  n_T=1e12 -> "
      f"{cq_min_loss_thermal(m, 0.8, 1e12):.3e}")
