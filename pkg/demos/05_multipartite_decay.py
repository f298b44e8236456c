"""Fitted decay rates of GHZ and W states as the number of qubits grows.

Run: python demos/05_multipartite_decay.py   (a few seconds)
"""

import numpy as np

from entk.dynamics import Dephasing, InfiniteTemperature, ZeroTemperature, decay_rate

times = np.linspace(0, 4, 161)
for label, kind, ch in [
    ("GHZ, dephasing", "ghz", Dephasing(1.0)),
    ("W, zero temperature", "w", ZeroTemperature(1.0)),
    ("W, infinite temperature", "w", InfiniteTemperature(1.0)),
]:
    rates = []
    for n in (3, 4, 5):
        fit = decay_rate(kind, n, ch, times)
        rates.append(f"N={n}: {fit.gamma:.4f}")
    print(f"{label:25s}", "  ".join(rates))
