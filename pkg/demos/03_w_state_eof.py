"""Entanglement of formation on the W state.

EoF of the W state breaks the plain relation E(A|BC) >= E(AB) + E(AC),
while the weighted relation with 2^(b/a) - 1 on the larger pairwise term
holds on the whole beta/alpha grid.
"""

# %%
import numpy as np

from monoqubit import pure_profile
from monoqubit.repro import default_axes, tripartite_surface, w_state

total, (e_ab, e_ac) = pure_profile(w_state(3), "eof")
print(f"E(A|BC) = {total:.6f}")
print(f"E(AB) = E(AC) = {e_ab:.6f}; plain sum {e_ab + e_ac:.6f} > E(A|BC)")

# %% The beta = 1 bound is largest at the smallest alpha
alphas = np.linspace(np.sqrt(2), 10, 9)
for a in alphas:
    print(f"  alpha={a:5.3f}  E(AB) + (2^(1/alpha) - 1) E(AC) = "
          f"{e_ab + (2 ** (1 / a) - 1) * e_ac:.6f}")

# %% Residual surface over beta in [0, 1], alpha in [sqrt 2, 10]
betas, alphas = default_axes("eof")
surf = tripartite_surface(total, e_ab, e_ac, betas, alphas)
print(f"\n{surf.size} grid points, min residual {surf.min():.3e}")
row = surf[-1]
print(f"beta = 1 row: {row[0]:.6f} at alpha=sqrt2 rising to {row[-1]:.6f}")
