"""Stochastic protocol: where to spend the deterministic gates.

Sweeps the two placement strategies for deterministic linking nodes and
prints the fidelity/query-time trade-off that motivates putting them at
the top of the linking tree.
"""

import warnings

from qramsim.analytics import FirstOrderValidityWarning
from qramsim.noise import NoiseParams
from qramsim.protocol import PlacementStrategy
from qramsim.qram import RunConfig, monte_carlo

warnings.filterwarnings("once", category=FirstOrderValidityWarning)

N_LAYERS = 10
PARAMS = NoiseParams(T1_e=2.0, T2_e=0.1, p_e=1e-3, p_n=1e-3,
                     eta=0.7, p_link=0.7)

print("== top-of-tree deterministic layers ==")
print(f"{'offset':>6s} {'~det frac':>9s} | {'fidelity':>8s} | {'query':>9s}")
for offset in (6, 4, 3, 2, 1):
    placement = PlacementStrategy("top_layers", offset)
    s = monte_carlo(RunConfig("ts", N_LAYERS, PARAMS, placement=placement),
                    n_sims=25, base_seed=3)
    print(f"{offset:6d} {2.0**-(offset + 1):9.3%} | {s.mean_fidelity:8.4f} | "
          f"{s.mean_query_time*1e6:7.1f} us")

print("\n== random placement ==")
print(f"{'P_d':>6s} | {'fidelity':>8s} | {'query':>9s}")
for pd in (0.0, 0.1, 0.25, 0.5):
    placement = PlacementStrategy("random", pd)
    s = monte_carlo(RunConfig("ts", N_LAYERS, PARAMS, placement=placement),
                    n_sims=25, base_seed=3)
    print(f"{pd:6.2f} | {s.mean_fidelity:8.4f} | "
          f"{s.mean_query_time*1e6:7.1f} us")
