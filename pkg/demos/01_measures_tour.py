"""A tour of the entanglement measures on a few familiar states.

Run with ``python3 demos/01_measures_tour.py``.
"""

# %%
import numpy as np

from monoqubit import (
    DensityMatrix,
    PureState,
    concurrence_pure,
    concurrence_two_qubit,
    cren_two_qubit,
    eof_two_qubit,
    negativity,
    partial_trace,
    pure_measure,
)
from monoqubit.repro import w_state

bell = PureState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))
print("Bell state")
for m in ("concurrence", "negativity", "cren", "eof"):
    print(f"  {m:12s} {pure_measure(bell, m, [0]):.6f}")

# %% [markdown]
# Negativity here is the doubled one, ||rho^T_A||_1 - 1, so a Bell pair
# scores 1 and negativity equals concurrence on every pure qubit cut.

# %%
print("\nWerner states p |Bell><Bell| + (1 - p) I/4")
print("   p      C        N       CREN     EoF")
for p in np.linspace(0, 1, 6):
    rho = p * bell.density().matrix + (1 - p) * np.eye(4) / 4
    print(f"  {p:.1f}  {concurrence_two_qubit(rho):.4f}  {negativity(rho):.4f}  "
          f"{cren_two_qubit(rho):.4f}  {eof_two_qubit(rho):.4f}")

# %%
w = w_state(3)
print("\nW state on three qubits")
print(f"  C(A|BC) = {concurrence_pure(w, [0]):.6f}  (2 sqrt2 / 3 = {2 * np.sqrt(2) / 3:.6f})")
print(f"  E(A|BC) = {pure_measure(w, 'eof', [0]):.6f}  (binary entropy of 1/3)")
rho = DensityMatrix((2, 2, 2), w.density().matrix)
print(f"  C(AB)   = {concurrence_two_qubit(partial_trace(rho, (0, 1))):.6f}  (2/3)")
