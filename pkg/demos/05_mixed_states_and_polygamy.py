"""Mixed global states and the negative-exponent (polygamy) direction.

For a mixed state of more than two qubits the one-to-rest concurrence is a
convex roof with no closed form.  The library searches decompositions and
returns an upper bound; a monogamy residual computed from it is one-sided.
"""

# %%
import numpy as np

from monoqubit import (
    DensityMatrix,
    concurrence_two_qubit,
    convex_roof_upper_bound,
    polygamy_residual,
    pure_profile,
)
from monoqubit.linalg import random_mixed
from monoqubit.repro import w_state

rng = np.random.default_rng(0)
print("two-qubit rank-2 states: exact Wootters value vs decomposition search")
for k in range(4):
    rho = random_mixed((2, 2), rng, env_dim=2)
    exact = concurrence_two_qubit(rho)
    ub = convex_roof_upper_bound(rho, [0], restarts=50, seed=k)
    print(f"  exact {exact:.5f}  bound {ub:.5f}  gap {ub - exact:.1e}")

# %% A noisy W state
w = w_state(3).density().matrix
rho = DensityMatrix((2, 2, 2), 0.9 * w + 0.1 * np.eye(8) / 8)
print(f"\nnoisy W: C(A|BC) <= {convex_roof_upper_bound(rho, [0], restarts=50):.5f}")

# %% Polygamy for alpha <= 0
for n in (3, 4, 5):
    total, pair = pure_profile(w_state(n), "concurrence")
    vals = ", ".join(f"{polygamy_residual(pair, total, a):.4f}" for a in (-2, -1, -0.1, 0))
    print(f"W{n}: sum C(AB_i)^a - C(A|rest)^a for a = -2, -1, -0.1, 0: {vals}")
