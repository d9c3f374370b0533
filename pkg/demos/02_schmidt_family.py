"""The five-amplitude Schmidt family of three-qubit states.

For this family every concurrence has a closed form, so the weighted
relation C^b(A|BC) >= C^b(small) + (2^(b/a) - 1) C^b(large) can be examined
exactly.  The worked instance below violates the plain relation
C(A|BC) >= C(AB) + C(AC) and still satisfies the weighted one.
"""

# %%
import numpy as np

from monoqubit import ExponentPair, SchmidtParams, build_state, closed_form_concurrences
from monoqubit.schmidt3 import residual_surface, residual_u, theta_grid
from monoqubit.monogamy import tripartite_residuals
from monoqubit.repro import default_axes

p = SchmidtParams.example2()
c_abc, c_ab, c_ac = closed_form_concurrences(p)
print("lambda =", np.round(p.lam, 6))
print(f"C(A|BC) = {c_abc:.6f}")
print(f"C(AB) + C(AC) = {c_ab + c_ac:.6f}  -> plain sum exceeds C(A|BC): {c_ab + c_ac > c_abc}")
print(f"u(1, 2) = {residual_u(p, ExponentPair(1, 2)):.6f}  (weighted relation holds)")

# %% [markdown]
# The state itself, for use with other tools:

# %%
psi = build_state(p)
for k in np.flatnonzero(np.abs(psi.amplitudes) > 0):
    print(f"  |{k:03b}>  {psi.amplitudes[k]:.6f}")

# %% Residual surface on the default concurrence grid
betas, alphas = default_axes("concurrence")
surf = residual_surface(p, betas, alphas)
print(f"\nsurface {surf.shape}: min {surf.min():.3e}, max {surf.max():.4f}")
print("residual at alpha = 2 for a few beta:")
for b in (0.0, 0.5, 1.0, 1.5, 2.0):
    i = int(round(b / 0.02))
    print(f"  beta={b:.1f}  u={surf[i, 0]:.6f}")

# %% The whole family on a 10^4-point angle grid
lam = theta_grid(10)
total, ab, ac = closed_form_concurrences(lam)
worst = min(tripartite_residuals(ab, ac, total, b, a)[0].min()
            for b, a in [(1, 2), (2, 2), (0.5, 3), (3, 5)])
print(f"\nsmallest residual over the grid and four exponent pairs: {worst:.3e}")
print(f"largest C(A|BC) on the grid: {total.max():.4f}")
