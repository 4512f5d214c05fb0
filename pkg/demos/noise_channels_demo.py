"""Walk through the scalar noise algebra on a single distributed pair.

Shows how idle time in each memory maps onto channel probabilities, what
the standard channels do to a Bell pair, and how the two pair scalars
(mu, nu) respond.  Run with ``python demos/noise_channels_demo.py``.
"""

import math

import numpy as np

from qramsim.dense import DenseState, apply_channel
from qramsim.noise import NoiseParams, eps, h_factor, h_tilde_factor, kraus_set
from qramsim.analytics import pair_after_transfer

print("== decay probabilities ==")
for dt in (1e-6, 1e-4, 1e-2):
    print(f"  idle {dt:8.0e} s on a 10 ms memory -> eps = {eps(dt, 0.01):.6f}")

print("\n== a Bell pair under each channel (p = 0.2) ==")
for kind in ("dephasing", "damping", "depolarizing"):
    out = apply_channel(DenseState.bell_pair(), kraus_set(kind, 0.2), 0)
    diag = np.round(2 * np.diag(out.matrix).real, 4)
    corner = round(2 * out.matrix[0, 3].real, 4)
    print(f"  {kind:13s} diag(2rho) = {diag}, corner = {corner}")

print("\n== pair scalars after creation and transfer ==")
params = NoiseParams(T1_e=2.0, T2_e=0.1, p_e=1e-3)
for wait in (0.0, 20e-6, 200e-6):
    pp = pair_after_transfer(wait, wait, 10e-6, 10e-6, params)
    print(f"  electron wait {wait*1e6:6.1f} us -> mu = {pp.mu:.6f}, "
          f"nu = {pp.nu:.6f}")

print("\n== gate-error factors per linking operation ==")
for p in (1e-4, 1e-3, 1e-2):
    print(f"  p = {p:7.0e}: even-link diagonal {h_factor(p):.6f}, "
          f"deterministic-node diagonal {h_tilde_factor(p):.6f}")
