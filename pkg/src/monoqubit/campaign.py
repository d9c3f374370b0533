"""Seeded Haar sampling campaigns over the monogamy relations.

Trial ``i`` of a campaign with seed ``s`` draws its state from
``numpy.random.default_rng([s, i])``, so any single trial can be replayed
with ``haar_random_pure(dims, [s, i])`` and chunking never changes results.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np

from .linalg import PureState, reduced_density
from .measures import Measure, concurrence_two_qubit, f_of, negativity, pure_measure
from .monogamy import (
    RESIDUAL_TOL,
    ExponentPair,
    _statuses,
    _tail_upper_pure,
    chain_rhs,
    powered,
    tripartite_residuals,
)

__all__ = ["trial_amplitudes", "batch_profile", "CampaignSummary", "run_campaign"]


def trial_amplitudes(n_qubits: int, seed: int, start: int, stop: int) -> np.ndarray:
    """Haar amplitudes for trials start..stop-1, shape (stop - start, 2**n)."""
    d = 2 ** n_qubits
    out = np.empty((max(stop - start, 0), d), dtype=np.complex128)
    for row, i in enumerate(range(start, stop)):
        rng = np.random.default_rng([seed, i])
        z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        out[row] = z / np.linalg.norm(z)
    return out


def batch_profile(amps: np.ndarray, n_qubits: int, measures: Sequence) -> dict:
    """Concurrences plus one-to-rest and pairwise values of each measure.

    Returns a dict with key ``"concurrence_pairwise"`` (always present, used
    for ordering certificates) and ``(measure, "total" | "pairwise")`` keys.
    """
    dims = (2,) * n_qubits
    marg = np.stack([reduced_density(amps, (0, i), dims) for i in range(1, n_qubits)], axis=1)
    conc = np.asarray(concurrence_two_qubit(marg), dtype=float)
    out = {"concurrence_pairwise": conc}
    for meas in map(Measure.parse, measures):
        total = np.asarray(pure_measure(amps, meas, {0}, dims), dtype=float)
        if meas is Measure.NEGATIVITY:
            pair = np.asarray(negativity(marg, 0, (2, 2)), dtype=float)
        elif meas is Measure.EOF:
            pair = np.asarray(f_of(np.minimum(conc * conc, 1.0)), dtype=float)
        else:
            pair = conc
        out[meas, "total"] = total
        out[meas, "pairwise"] = pair
    return out


@dataclass
class CampaignSummary:
    n_qubits: int
    trials: int
    seed: int
    measure: str
    beta: float
    alpha: float
    certified: int = 0
    undecided: int = 0
    out_of_hypothesis: int = 0
    violations: int = 0
    worst_residual: float | None = None
    worst_trial: int | None = None

    @property
    def worst_seed(self):
        return None if self.worst_trial is None else [self.seed, self.worst_trial]

    @property
    def undecided_fraction(self) -> float:
        return self.undecided / self.trials if self.trials else 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["worst_seed"] = self.worst_seed
        d["undecided_fraction"] = self.undecided_fraction
        return d

    def _record(self, residual: float, trial: int):
        self.certified += 1
        if residual < -RESIDUAL_TOL:
            self.violations += 1
        if self.worst_residual is None or residual < self.worst_residual:
            self.worst_residual = float(residual)
            self.worst_trial = int(trial)


def _chain_certificates(amps, conc, n_qubits):
    """Per-trial (status, m) for the chain ordering hypothesis."""
    n1 = n_qubits - 1
    lower = np.sqrt(np.cumsum((conc ** 2)[:, ::-1], axis=1)[:, ::-1])
    lower = np.concatenate([lower[:, 1:], np.zeros((len(conc), 1))], axis=1)
    certs = []
    for k in range(len(conc)):
        c = conc[k]
        upper = np.full(n1, np.inf)
        for i in range(n1 - 2):
            if c[i] > lower[k, i]:
                psi = PureState((2,) * n_qubits, amps[k])
                upper[i] = _tail_upper_pure(psi, i + 1)
        certs.append(_statuses(c, lower[k], upper))
    return certs


def run_campaign(n_qubits: int, trials: int, seed: int, measure, exponents,
                 min_certified: int | None = None, chunk: int = 2000,
                 max_trials: int | None = None) -> list[CampaignSummary]:
    """Check the tripartite (n = 3) or chain (n >= 4) relation on Haar states.

    Parameters
    ----------
    n_qubits : int
        System size, 3..6.
    trials : int
        Number of trials to draw.  With `min_certified`, sampling instead
        runs chunk by chunk until that many trials are certified, capped at
        `max_trials` (default ``max(trials, 20 * min_certified)``).
    seed : int
        Campaign seed.
    measure : str or Measure
        Measure under test.
    exponents : ExponentPair or sequence of (beta, alpha)
        One summary is produced per exponent pair; states are shared.

    Returns
    -------
    list of CampaignSummary
        In the order of `exponents`.  Violations count certified trials
        with residual below -1e-9.
    """
    if not 3 <= int(n_qubits) <= 6:
        raise ValueError("n_qubits must lie in 3..6")
    measure = Measure.parse(measure)
    if isinstance(exponents, ExponentPair):
        exponents = [exponents]
    pairs = [e if isinstance(e, ExponentPair) else ExponentPair(e[0], e[1], measure.regime)
             for e in exponents]
    for e in pairs:
        if e.regime != measure.regime:
            raise ValueError(f"exponent regime {e.regime} does not match {measure.value}")
    summaries = [CampaignSummary(n_qubits, 0, seed, measure.value, e.beta, e.alpha) for e in pairs]
    target = trials if min_certified is None else (
        max_trials if max_trials is not None else max(trials, 20 * min_certified))

    done = 0
    while done < target:
        if min_certified is not None and summaries[0].certified >= min_certified:
            break
        stop = min(done + chunk, target)
        amps = trial_amplitudes(n_qubits, seed, done, stop)
        prof = batch_profile(amps, n_qubits, [measure])
        total, pair = prof[measure, "total"], prof[measure, "pairwise"]
        if n_qubits == 3:
            for s, e in zip(summaries, pairs):
                res, _ = tripartite_residuals(pair[:, 0], pair[:, 1], total, e.beta, e.alpha)
                for k, r in enumerate(res):
                    s._record(float(r), done + k)
        else:
            certs = _chain_certificates(amps, prof["concurrence_pairwise"], n_qubits)
            for s, e in zip(summaries, pairs):
                lhs = powered(total, e.beta)
                for k, (status, m) in enumerate(certs):
                    if m is None:
                        if "undecided" in status:
                            s.undecided += 1
                        else:
                            s.out_of_hypothesis += 1
                        continue
                    s._record(float(lhs[k] - chain_rhs(pair[k], e.beta, e.alpha, m)), done + k)
        for s in summaries:
            s.trials = stop
        done = stop
    return summaries
