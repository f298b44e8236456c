"""Two qutrits coupled to a small environment by a random Hamiltonian.

Run: python demos/06_random_environment.py
"""

import numpy as np

from entk.dynamics import random_open_evolution

times = np.linspace(0, 10, 11)
for ratio in (1e-2, 5e-2):
    traj = random_open_evolution((3, 3), env_dim=3, alpha_se=ratio, alpha_s=1.0, seed=7, times=times)
    print(f"alpha_se/alpha_s = {ratio:g}")
    print("  t        entropy    quasi-pure concurrence")
    for t, s, c in zip(traj.times, traj.observables["entropy"], traj.observables["concurrence"]):
        print(f"  {t:5.1f}   {s:.5f}    {c:.5f}")
