"""Residuals of the weighted beta-power monogamy relations.

Every relation is evaluated as ``lhs - rhs``; a nonnegative residual means
the inequality holds at that point.  The weight ``r = 2**(beta/alpha) - 1``
lies in [0, 1] whenever ``0 <= beta <= alpha``.

Zero handling: beta-powers of values below ``FLUSH`` are taken as 0, so a
vanishing pairwise term drops out even at ``beta = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Sequence

import numpy as np

from .linalg import DensityMatrix, DomainError, PureState, _bipartite_matrix, hermitian_eigh
from .measures import (
    Measure,
    concurrence_pure,
    concurrence_two_qubit,
    convex_roof_upper_bound,
    eof_two_qubit,
    f_of,
    negativity,
    pure_measure,
)
from .linalg import partial_trace, reduced_density

__all__ = [
    "FLUSH",
    "RESIDUAL_TOL",
    "ExponentPair",
    "MonogamyReport",
    "OrderingCertificate",
    "powered",
    "lemma1_gap",
    "lemma2_gap",
    "tripartite_residual",
    "tripartite_residuals",
    "chain_residual",
    "certify_ordering",
    "polygamy_residual",
    "pure_profile",
    "pairwise_concurrences",
    "state_profile",
]

FLUSH = 1e-12
RESIDUAL_TOL = 1e-9
TIE_TOL = 1e-10
SQRT2 = math.sqrt(2.0)
REGIMES = ("concurrence", "eof")


def powered(v, beta):
    """``v**beta`` with values below FLUSH mapped to exactly 0."""
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(v < FLUSH, 0.0, np.abs(v) ** beta)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ExponentPair:
    """Exponents (beta, alpha) of a weighted monogamy relation.

    ``regime="concurrence"`` requires alpha >= 2 (concurrence, negativity,
    CREN); ``regime="eof"`` requires alpha >= sqrt(2).
    """

    beta: float
    alpha: float
    regime: str = "concurrence"

    def __post_init__(self):
        beta, alpha = float(self.beta), float(self.alpha)
        if self.regime not in REGIMES:
            raise DomainError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        floor = 2.0 if self.regime == "concurrence" else SQRT2
        if not (math.isfinite(beta) and math.isfinite(alpha)):
            raise DomainError("exponents must be finite")
        if alpha < floor - 1e-12:
            raise DomainError(f"alpha={alpha} below {floor:.6g} for the {self.regime} regime")
        if beta < 0.0 or beta > alpha + 1e-12:
            raise DomainError(f"need 0 <= beta <= alpha, got beta={beta}, alpha={alpha}")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def for_measure(cls, beta: float, alpha: float, measure) -> "ExponentPair":
        return cls(beta, alpha, Measure.parse(measure).regime)

    @property
    def weight(self) -> float:
        return 2.0 ** (self.beta / self.alpha) - 1.0


def _check_regime(e: ExponentPair, measure: Measure):
    if e.regime != measure.regime:
        raise DomainError(f"exponent regime {e.regime!r} does not match measure "
                          f"{measure.value!r} (needs {measure.regime!r})")


@dataclass(frozen=True)
class MonogamyReport:
    """Outcome of one inequality evaluation.

    `branch` is 1 or 2 for tripartite relations (which pairwise value got
    the weight) and the split index m for chains.
    """

    measure: str
    beta: float
    alpha: float
    lhs: float
    rhs: float
    branch: int
    certified: bool = True
    note: str = ""
    total: float = float("nan")
    pairwise: tuple = ()
    residual: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", self.lhs - self.rhs)

    @property
    def holds(self) -> bool:
        return self.residual >= -RESIDUAL_TOL

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pairwise"] = list(self.pairwise)
        return d


def _domain(x, lo=None, hi=None, name="value"):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)):
        raise DomainError(f"{name} must be finite")
    if lo is not None and np.any(x < lo):
        raise DomainError(f"{name} must be >= {lo}")
    if hi is not None and np.any(x > hi):
        raise DomainError(f"{name} must be <= {hi}")
    return x


def lemma1_gap(x, t):
    """(1 + t)^x - 1 - (2^x - 1) t^x for x in [0, 1], t >= 1; nonnegative."""
    x = _domain(x, 0.0, 1.0, "x")
    t = _domain(t, 1.0, None, "t")
    out = (1.0 + t) ** x - 1.0 - (2.0 ** x - 1.0) * t ** x
    return float(out) if out.ndim == 0 else out


def lemma2_gap(x, y, e: ExponentPair):
    """f^b(x^2 + y^2) - f^b(x^2) - (2^{b/a} - 1) f^b(y^2) for 0 <= x <= y <= 1.

    The exponent pair must be in the EoF regime (alpha >= sqrt(2)).
    """
    if e.regime != "eof":
        raise DomainError("lemma2_gap needs an eof-regime exponent pair")
    x = _domain(x, 0.0, 1.0, "x")
    y = _domain(y, 0.0, 1.0, "y")
    if np.any(x > y):
        raise DomainError("lemma2_gap requires x <= y")
    s = x * x + y * y
    if np.any(s > 1.0 + 1e-12):
        raise DomainError("lemma2_gap requires x^2 + y^2 <= 1")
    s = np.minimum(s, 1.0)
    b = e.beta
    out = (np.asarray(powered(f_of(s), b)) - np.asarray(powered(f_of(x * x), b))
           - e.weight * np.asarray(powered(f_of(y * y), b)))
    return float(out) if np.ndim(out) == 0 else out


def tripartite_residuals(c_ab, c_ac, total, beta, alpha):
    """Vectorized tripartite residuals; broadcasts all arguments.

    Branch 1 (c_ab <= c_ac) puts the weight on c_ac, branch 2 on c_ab.
    Returns ``(residual, branch)`` arrays.
    """
    c_ab, c_ac, total, beta, alpha = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (c_ab, c_ac, total, beta, alpha)))
    r = 2.0 ** (beta / alpha) - 1.0
    pab, pac = powered(c_ab, beta), powered(c_ac, beta)
    branch1 = c_ab <= c_ac
    rhs = np.where(branch1, pab + r * pac, r * pab + pac)
    return powered(total, beta) - rhs, np.where(branch1, 1, 2)


def tripartite_residual(c_ab: float, c_ac: float, total: float, e: ExponentPair,
                        measure="concurrence") -> MonogamyReport:
    """Residual of total^b >= v_small^b + (2^{b/a} - 1) v_large^b.

    Parameters
    ----------
    c_ab, c_ac : float
        Pairwise values of the measure for AB and AC.
    total : float
        One-to-rest value for A|BC.
    e : ExponentPair
        Exponents; their regime must match `measure`.
    measure : str or Measure
        Which measure the three numbers are values of.

    Returns
    -------
    MonogamyReport
        Branch 1 when c_ab <= c_ac (ties included), otherwise branch 2.
    """
    measure = Measure.parse(measure)
    _check_regime(e, measure)
    _domain([c_ab, c_ac, total], 0.0, None, "measure values")
    c_ab, c_ac, total = float(c_ab), float(c_ac), float(total)
    r = e.weight
    if c_ab <= c_ac:
        branch, rhs = 1, powered(c_ab, e.beta) + r * powered(c_ac, e.beta)
    else:
        branch, rhs = 2, r * powered(c_ab, e.beta) + powered(c_ac, e.beta)
    return MonogamyReport(measure.value, e.beta, e.alpha, powered(total, e.beta), rhs,
                          branch, total=total, pairwise=(c_ab, c_ac))


def chain_rhs(pairwise, beta: float, alpha: float, m: int) -> float:
    v = np.asarray(pairwise, dtype=float)
    n1 = v.shape[-1]
    r = 2.0 ** (beta / alpha) - 1.0
    p = np.asarray(powered(v, beta))
    head = sum(r ** i * p[..., i] for i in range(m))
    middle = np.sum(p[..., m:n1 - 1], axis=-1)
    return head + r ** (m + 1) * middle + r ** m * p[..., n1 - 1]


def chain_residual(pairwise: Sequence[float], total: float, e: ExponentPair, m: int,
                   measure="concurrence", certified: bool = True,
                   note: str = "") -> MonogamyReport:
    """Residual of the n-qubit weighted chain relation with split index m.

    ``rhs = sum_{i<=m} r^{i-1} v_i^b + r^{m+1} sum_{m<i<=n-2} v_i^b + r^m v_{n-1}^b``
    with ``r = 2^{b/a} - 1`` and the pairwise values ``v_1..v_{n-1}``.
    """
    measure = Measure.parse(measure)
    _check_regime(e, measure)
    v = _domain(pairwise, 0.0, None, "pairwise values")
    if v.ndim != 1 or v.size < 3:
        raise DomainError("chain relations need at least 3 pairwise values (n >= 4)")
    n = v.size + 1
    if not 1 <= int(m) <= n - 3:
        raise DomainError(f"split index m={m} outside 1..{n - 3}")
    total = float(_domain(total, 0.0, None, "total"))
    rhs = float(chain_rhs(v, e.beta, e.alpha, int(m)))
    return MonogamyReport(measure.value, e.beta, e.alpha, powered(total, e.beta), rhs,
                          int(m), certified=certified, note=note, total=total,
                          pairwise=tuple(float(x) for x in v))


def polygamy_residual(pairwise: Sequence[float], total: float, alpha: float,
                      measure="concurrence") -> float:
    """sum_i v_i^alpha - total^alpha for alpha <= 0; positive when polygamy holds.

    Every pairwise value must be nonzero.
    """
    Measure.parse(measure)
    alpha = float(alpha)
    if alpha > 0.0:
        raise DomainError("polygamy relations need alpha <= 0")
    v = _domain(pairwise, 0.0, None, "pairwise values")
    if np.any(v < FLUSH):
        raise DomainError("polygamy relation needs every pairwise value nonzero")
    total = float(_domain(total, 0.0, None, "total"))
    if total < FLUSH:
        raise DomainError("polygamy relation needs a nonzero one-to-rest value")
    return float(np.sum(v ** alpha) - total ** alpha)


# ordering certification -------------------------------------------------------

@dataclass(frozen=True)
class OrderingCertificate:
    """Which side of each ordering hypothesis C_{AB_i} vs C_{A|B_{i+1}..} is certified.

    Positions are 1-based, i = 1..n-2.  Each status is ``"le"``, ``"ge"``,
    ``"tie"`` (both hold; only possible where the tail is one qubit) or
    ``"undecided"``.  `m` is the largest split index in 1..n-3 whose
    pattern (le/tie up to m, ge/tie after) is fully certified.
    """

    pairwise: tuple
    lower: tuple
    upper: tuple
    status: tuple
    m: int | None

    @property
    def certified(self) -> bool:
        return self.m is not None

    @property
    def undecided(self) -> bool:
        return self.m is None and "undecided" in self.status

    def to_dict(self) -> dict:
        return {"pairwise": list(self.pairwise), "tail_lower": list(self.lower),
                "tail_upper": list(self.upper), "status": list(self.status),
                "m": self.m, "certified": self.certified}


def _statuses(c: np.ndarray, lower: np.ndarray, upper: np.ndarray):
    n1 = c.size
    status = []
    for i in range(n1 - 1):
        if i == n1 - 2:
            if abs(c[i] - c[n1 - 1]) <= TIE_TOL:
                status.append("tie")
            else:
                status.append("le" if c[i] < c[n1 - 1] else "ge")
        elif c[i] <= lower[i]:
            status.append("le")
        elif c[i] >= upper[i]:
            status.append("ge")
        else:
            status.append("undecided")
    best = None
    for m in range(1, n1 - 1):
        head = all(s in ("le", "tie") for s in status[:m])
        tail = all(s in ("ge", "tie") for s in status[m:])
        if head and tail:
            best = m
    return tuple(status), best


def pairwise_concurrences(psi) -> np.ndarray:
    """Wootters concurrences C_{A B_i} of qubit 0 with each other qubit."""
    if isinstance(psi, PureState):
        marg = np.stack([reduced_density(psi, (0, i)) for i in range(1, psi.nsub)])
    else:
        marg = np.stack([partial_trace(psi, (0, i)).matrix for i in range(1, psi.nsub)])
    return np.asarray(concurrence_two_qubit(marg), dtype=float).reshape(-1)


def _tail_upper_pure(psi: PureState, i: int) -> float:
    """Upper bound on C(A | B_{i+1}..B_{n-1}) for the marginal of a pure state.

    Takes the least of the one-to-rest pure value (tracing out B_1..B_i is
    local on the B side) and the average pure concurrence of two explicit
    decompositions of the marginal: computational-basis and spectral.
    """
    n = psi.nsub
    traced = list(range(1, i + 1))
    kept = [0] + list(range(i + 1, n))
    kept_dims = tuple(psi.dims[k] for k in kept)
    mat = _bipartite_matrix(psi.amplitudes, psi.dims, traced, kept)  # rows: traced basis
    best = concurrence_pure(psi, {0})

    def average(members):
        p = np.sum(np.abs(members) ** 2, axis=-1)
        live = p > 1e-15
        if not np.any(live):
            return 0.0
        unit = members[live] / np.sqrt(p[live])[:, None]
        return float(np.sum(p[live] * np.asarray(concurrence_pure(unit, {0}, kept_dims))))

    best = min(best, average(mat))
    gram = mat.conj() @ mat.T
    _, u = hermitian_eigh(gram)
    best = min(best, average(u.T @ mat))
    return best


def certify_ordering(psi) -> OrderingCertificate:
    """Certify the ordering hypotheses of the chain relations for one state.

    ``C_{AB_i} <= C_{A|B_{i+1}..}`` is certified through the lower bound
    ``sqrt(sum_{j>i} C_{AB_j}^2)`` on the tail concurrence; the reverse
    direction needs an upper bound, taken from explicit decompositions of
    the tail marginal (and the one-to-rest value for pure inputs).  The last
    position has a single-qubit tail whose concurrence is exact.

    Parameters
    ----------
    psi : PureState or DensityMatrix
        n-qubit state with n >= 4; qubit 0 plays A.
    """
    if not isinstance(psi, (PureState, DensityMatrix)):
        raise DomainError("certify_ordering expects a PureState or DensityMatrix")
    if any(d != 2 for d in psi.dims) or psi.nsub < 4:
        raise DomainError("ordering certification needs at least 4 qubits")
    c = pairwise_concurrences(psi)
    n1 = c.size
    lower = np.array([math.sqrt(float(np.sum(c[i + 1:] ** 2))) for i in range(n1)])
    upper = np.full(n1, np.inf)
    upper[n1 - 2] = c[n1 - 1]
    lower[n1 - 2] = c[n1 - 1]
    for i in range(n1 - 2):
        if c[i] <= lower[i]:
            continue
        if isinstance(psi, PureState):
            upper[i] = _tail_upper_pure(psi, i + 1)
        else:
            tail = partial_trace(psi, [0] + list(range(i + 2, psi.nsub)))
            upper[i] = convex_roof_upper_bound(tail, {0}, "concurrence", restarts=0)
    status, m = _statuses(c, lower, upper)
    return OrderingCertificate(tuple(float(x) for x in c), tuple(float(x) for x in lower[:n1 - 1]),
                               tuple(float(x) for x in upper[:n1 - 1]), status, m)


def pure_profile(psi: PureState, measure) -> tuple[float, np.ndarray]:
    """One-to-rest value A|B_1..B_{n-1} and pairwise values A B_i of a pure qubit state."""
    measure = Measure.parse(measure)
    if any(d != 2 for d in psi.dims):
        raise DomainError("profiles are defined for qubit states")
    total = float(pure_measure(psi, measure, {0}))
    marg = np.stack([reduced_density(psi, (0, i)) for i in range(1, psi.nsub)])
    if measure is Measure.NEGATIVITY:
        pair = negativity(marg, 0, (2, 2))
    elif measure is Measure.EOF:
        pair = f_of(np.minimum(np.asarray(concurrence_two_qubit(marg)) ** 2, 1.0))
    else:
        pair = concurrence_two_qubit(marg)
    return total, np.asarray(pair, dtype=float).reshape(-1)


def state_profile(state, measure, restarts: int = 200, seed: int = 0):
    """(total, pairwise, exact) for a pure or mixed qubit state.

    Pure inputs go through `pure_profile` and are exact.  For mixed inputs
    the pairwise values are exact two-qubit quantities but the one-to-rest
    value is a convex-roof upper bound, so ``exact`` is False.  Negativity
    is rejected for mixed inputs since its relations are stated for pure
    global states only.
    """
    measure = Measure.parse(measure)
    if isinstance(state, PureState):
        total, pair = pure_profile(state, measure)
        return total, pair, True
    if not isinstance(state, DensityMatrix):
        raise DomainError("expected a PureState or DensityMatrix")
    if any(d != 2 for d in state.dims):
        raise DomainError("profiles are defined for qubit states")
    if measure is Measure.NEGATIVITY:
        raise DomainError("negativity relations are checked on pure global states only")
    marg = np.stack([partial_trace(state, (0, i)).matrix for i in range(1, state.nsub)])
    if measure is Measure.EOF:
        pair = eof_two_qubit(marg)
    else:
        pair = concurrence_two_qubit(marg)
    total = float(convex_roof_upper_bound(state, {0}, measure, restarts=restarts, seed=seed))
    return total, np.asarray(pair, dtype=float).reshape(-1), False
