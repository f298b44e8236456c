"""Pure-state concurrences and the Schmidt picture.

Run: python demos/01_states_and_pure_concurrence.py
"""

import numpy as np

from entk.pure import ProjectorMix, i_concurrence, multipartite_concurrence, selective_concurrence
from entk.states import ghz, local_unitary, maximally_entangled, random_pure_state, random_unitary, schmidt_decompose, w_state

# For a bipartite pure state everything is fixed by the Schmidt coefficients.
psi = random_pure_state([3, 3], seed=1)
dec = schmidt_decompose(psi)
print("Schmidt coefficients:", np.round(dec.coefficients, 6))
print("I-concurrence       :", i_concurrence(psi))
print("from coefficients   :", np.sqrt(2 * (1 - np.sum(dec.coefficients**2))))

# Local unitaries leave it unchanged.
rng = np.random.default_rng(0)
moved = local_unitary(psi, [random_unitary(3, rng), random_unitary(3, rng)])
print("after local unitary :", i_concurrence(moved))

print("maximally entangled d=3:", i_concurrence(maximally_entangled(3)), "= 2/sqrt(3)")

# Multipartite: GHZ and W through c_N, then one selective pattern.
for n in (3, 4, 5):
    g, w = multipartite_concurrence(ghz(n)), multipartite_concurrence(w_state(n))
    print(f"N={n}: c_N(GHZ)={g:.6f}  c_N(W)={w:.6f}  ratio={g / w:.6f}")
mix = ProjectorMix.single("--+", 4.0)
print("GHZ_3 with pattern --+ :", selective_concurrence(ghz(3), mix))
