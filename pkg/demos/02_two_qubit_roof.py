"""Two-qubit mixed states: the exact roof value and the estimate hierarchy.

Run: python demos/02_two_qubit_roof.py
"""

from entk.roof import compute_bounds, concurrence_upper_bound, wootters_concurrence_2x2
from entk.states import random_density

# For two qubits the algebraic bound, the optimized bound, the quasi-pure
# estimate and the gradient upper bound all meet the exact value.
for seed in range(4):
    rho = random_density([2, 2], rank=2, seed=seed)
    rep = compute_bounds(rho, restarts=5, seed=seed)
    print(
        f"seed {seed}: exact {wootters_concurrence_2x2(rho):.8f}  "
        f"algebraic {max(rep.lower_algebraic):.8f}  quasi-pure {rep.quasi_pure:.8f}  upper {rep.upper:.8f}"
    )

# The upper bound also returns the optimal decomposition.
rho = random_density([2, 2], rank=3, seed=7)
ub = concurrence_upper_bound(rho, seed=1)
print("members:", len(ub.ensemble), " CG iterations:", ub.iterations)
