"""Seeded Haar campaigns for the tripartite and chain relations.

Three-qubit states are checked directly.  For four or more qubits the chain
relation assumes an ordering between each pairwise concurrence and a tail
concurrence of a mixed marginal; that ordering is certified with bounds
first, and only certified trials count toward violations.
"""

# %%
from monoqubit import (
    ExponentPair,
    certify_ordering,
    haar_random_pure,
    pure_profile,
    run_campaign,
    tripartite_residual,
)
from monoqubit.repro import w_state

for measure, pairs in [("concurrence", [(1, 2), (2, 2), (0.5, 4)]),
                       ("eof", [(1, 2 ** 0.5), (0.5, 3)])]:
    for s in run_campaign(3, 2000, seed=1, measure=measure, exponents=pairs):
        print(f"3 qubits {measure:12s} beta={s.beta:<4} alpha={s.alpha:<6.4g} "
              f"violations={s.violations} worst={s.worst_residual:.2e} at {s.worst_seed}")

# %% Ordering certificates
for n in (4, 5):
    cert = certify_ordering(w_state(n))
    print(f"\nW{n}: pairwise {cert.pairwise[0]:.3f} each, status {cert.status}, m={cert.m}")
cert = certify_ordering(haar_random_pure((2,) * 4, 3))
print("Haar sample:", cert.status, "m =", cert.m)

# %% Chain campaign on four qubits
(s,) = run_campaign(4, 1000, seed=2, measure="eof",
                    exponents=[ExponentPair(1, 2 ** 0.5, "eof")])
print(f"\n4 qubits EoF: certified {s.certified}, undecided {s.undecided}, "
      f"outside the ordering pattern {s.out_of_hypothesis}, violations {s.violations}")

# %% Replaying the worst trial
# Trial i of seed s is drawn from default_rng([s, i]); worst_seed names it.
(s,) = run_campaign(3, 2000, seed=1, measure="concurrence", exponents=[(1, 2)])
psi = haar_random_pure((2, 2, 2), s.worst_seed)
total, pair = pure_profile(psi, "concurrence")
again = tripartite_residual(pair[0], pair[1], total, ExponentPair(1, 2)).residual
print(f"\nworst trial {s.worst_seed}: campaign {s.worst_residual:.12f}, replayed {again:.12f}")
