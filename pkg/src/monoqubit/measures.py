"""Bipartite entanglement measures for small qubit systems.

Functions take either the state objects from :mod:`monoqubit.linalg` or raw
arrays.  Raw arrays may carry leading batch axes, in which case an array of
values comes back instead of a float.

Conventions
-----------
* Negativity is ``||rho^{T_A}|| - 1``, twice the more common definition.
* Entropies are in bits and carry the usual minus sign, ``S = -Tr rho log2 rho``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import (
    DensityMatrix,
    DomainError,
    PureState,
    _bipartite_matrix,
    _check_dims,
    _check_subsystems,
    _qubit_dims,
    _rng,
    haar_unitary,
    hermitian_eigh,
    hermitian_eigenvalues,
    kron,
    partial_transpose,
    reduced_density,
)

__all__ = [
    "Measure",
    "Bipartition",
    "concurrence_pure",
    "concurrence_two_qubit",
    "negativity",
    "cren_two_qubit",
    "binary_entropy",
    "f_of",
    "von_neumann_entropy",
    "eof_two_qubit",
    "eof_pure",
    "pure_measure",
    "convex_roof_upper_bound",
]

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)

# eigenvalues of rho below this are treated as exact zeros before sqrt(rho)
RANK_CUTOFF = 1e-14
# slack allowed on [0, 1] arguments before they are rejected
UNIT_SLACK = 1e-12


class Measure(str, enum.Enum):
    CONCURRENCE = "concurrence"
    NEGATIVITY = "negativity"
    CREN = "cren"
    EOF = "eof"

    @classmethod
    def parse(cls, value) -> "Measure":
        if isinstance(value, Measure):
            return value
        key = str(value).strip().lower()
        aliases = {"c": cls.CONCURRENCE, "n": cls.NEGATIVITY, "e": cls.EOF,
                   "cren": cls.CREN, "eof": cls.EOF}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown measure {value!r}") from None

    @property
    def regime(self) -> str:
        """Exponent regime of the monogamy relations for this measure."""
        return "eof" if self is Measure.EOF else "concurrence"


@dataclass(frozen=True)
class Bipartition:
    """A cut of ``nsub`` subsystems into two nonempty complementary sides."""

    side_a: frozenset
    side_b: frozenset

    def __post_init__(self):
        a, b = frozenset(self.side_a), frozenset(self.side_b)
        if not a or not b:
            raise DomainError("both sides of a bipartition must be nonempty")
        if a & b:
            raise DomainError(f"sides overlap: {sorted(a & b)}")
        everything = a | b
        if min(everything) < 0 or everything != frozenset(range(len(everything))):
            raise DomainError("bipartition must cover subsystems 0..n-1 exactly")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def of(cls, side_a: Iterable[int], nsub: int) -> "Bipartition":
        a = frozenset(int(i) for i in side_a)
        if any(i < 0 or i >= nsub for i in a):
            raise DomainError(f"indices {sorted(a)} out of range for {nsub} subsystems")
        return cls(a, frozenset(range(nsub)) - a)

    @property
    def nsub(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def __str__(self):
        return "".join(map(str, sorted(self.side_a))) + "|" + "".join(map(str, sorted(self.side_b)))


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _pure(psi, dims):
    if isinstance(psi, PureState):
        return psi.amplitudes, psi.dims
    amps = np.asarray(psi, dtype=np.complex128)
    return amps, (_check_dims(dims) if dims is not None else _qubit_dims(amps.shape[-1]))


def _mixed(rho, dims):
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.dims
    if isinstance(rho, PureState):
        a = rho.amplitudes
        return np.outer(a, a.conj()), rho.dims
    m = np.asarray(rho, dtype=np.complex128)
    return m, (_check_dims(dims) if dims is not None else _qubit_dims(m.shape[-1]))


def _cut(cut, nsub: int) -> Bipartition:
    if cut is None:
        return Bipartition.of({0}, nsub)
    if isinstance(cut, Bipartition):
        if cut.nsub != nsub:
            raise DomainError(f"cut {cut} does not match {nsub} subsystems")
        return cut
    return Bipartition.of(cut, nsub)


def concurrence_pure(psi, cut=None, dims: Sequence[int] | None = None):
    """Concurrence sqrt(2 (1 - Tr rho_A^2)) of a pure state across a cut.

    Evaluated as twice the root of the summed squared 2x2 minors of the
    coefficient matrix, which equals the purity form but stays accurate
    near product states.

    Parameters
    ----------
    psi : PureState or ndarray
        State, or a batch of amplitude vectors with shape (..., D).
    cut : Bipartition or iterable of int, optional
        Side A of the cut; defaults to subsystem 0 against the rest.
    dims : sequence of int, optional
        Subsystem dims for raw arrays (default: qubits).
    """
    amps, dims = _pure(psi, dims)
    cut = _cut(cut, len(dims))
    m = _bipartite_matrix(amps, dims, sorted(cut.side_a), sorted(cut.side_b))
    if m.shape[-2] > m.shape[-1]:
        m = np.swapaxes(m, -1, -2)
    ri, rj = np.triu_indices(m.shape[-2], 1)
    ck, cl = np.triu_indices(m.shape[-1], 1)
    minors = (m[..., ri[:, None], ck[None, :]] * m[..., rj[:, None], cl[None, :]]
              - m[..., ri[:, None], cl[None, :]] * m[..., rj[:, None], ck[None, :]])
    return _scalar(2.0 * np.sqrt(np.sum(np.abs(minors) ** 2, axis=(-2, -1))))


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    w, v = hermitian_eigh(m)
    w = np.where(w > RANK_CUTOFF, w, 0.0)
    return (v * np.sqrt(w)[..., None, :]) @ np.swapaxes(v, -1, -2).conj()


def _wootters(m: np.ndarray) -> np.ndarray:
    # sqrt(rho) S sqrt(rho)^* has singular values equal to the square roots of
    # the eigenvalues of rho (S rho^* S); the Hermitian dilation [[0, A], [A^H, 0]]
    # yields them as eigenvalues without squaring and re-rooting.
    root = _sqrt_psd(m)
    a = root @ SPIN_FLIP @ root.conj()
    zero = np.zeros_like(a)
    dil = np.concatenate([np.concatenate([zero, a], axis=-1),
                          np.concatenate([np.swapaxes(a, -1, -2).conj(), zero], axis=-1)],
                         axis=-2)
    lam = hermitian_eigenvalues(dil)[..., :4]
    return np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def _two_qubit(rho, dims):
    m, dims = _mixed(rho, dims)
    if tuple(dims) != (2, 2) or m.shape[-2:] != (4, 4):
        raise DomainError(f"expected a two-qubit state, got dims {tuple(dims)}")
    return m


def concurrence_two_qubit(rho, dims: Sequence[int] | None = None):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.

    The l_i are the descending square roots of the eigenvalues of
    rho (sy x sy) rho^* (sy x sy).
    """
    return _scalar(_wootters(_two_qubit(rho, dims)))


def cren_two_qubit(rho, dims: Sequence[int] | None = None):
    """Convex-roof extended negativity of a two-qubit state.

    Pure-state negativity equals pure-state concurrence on 2 x d systems, so
    the two convex roofs coincide and the Wootters formula gives the value.
    """
    return concurrence_two_qubit(rho, dims)


def negativity(rho, subsystem_a=0, dims: Sequence[int] | None = None):
    """Negativity ||rho^{T_A}|| - 1 with respect to the given subsystem(s).

    Computed as twice the magnitude of the summed negative eigenvalues of
    the partial transpose.
    """
    m, dims = _mixed(rho, dims)
    subs = [subsystem_a] if np.ndim(subsystem_a) == 0 else list(subsystem_a)
    subs = _check_subsystems(subs, len(dims))
    pt = m
    for k in subs:
        pt = partial_transpose(pt, k, dims)
    w = hermitian_eigenvalues(pt)
    # 2 * sum(max(-w, 0)) keeps a positive zero for PPT states
    return _scalar(2.0 * np.sum(np.maximum(-w, 0.0), axis=-1))


def _unit_interval(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < -UNIT_SLACK) or np.any(x > 1.0 + UNIT_SLACK):
        raise DomainError(f"{name} argument must lie in [0, 1]")
    return np.clip(x, 0.0, 1.0)


def _h(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(x > 0.0, -x * np.log2(x), 0.0)
        b = np.where(x < 1.0, -(1.0 - x) * np.log2(1.0 - x), 0.0)
    return a + b


def binary_entropy(x):
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0."""
    return _scalar(_h(_unit_interval(x, "binary_entropy")))


def f_of(x):
    """f(x) = H((1 + sqrt(1 - x)) / 2): EoF of a two-qubit state with C^2 = x."""
    x = _unit_interval(x, "f_of")
    return _scalar(_h(0.5 * (1.0 + np.sqrt(1.0 - x))))


def _entropy_bits(w: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.sum(np.where(w > 0.0, -w * np.log2(w), 0.0), axis=-1)


def von_neumann_entropy(rho, dims: Sequence[int] | None = None):
    """S(rho) = -Tr rho log2 rho, with 0 log 0 = 0."""
    m, _ = _mixed(rho, dims)
    return _scalar(np.maximum(_entropy_bits(hermitian_eigenvalues(m)), 0.0))


def eof_two_qubit(rho, dims: Sequence[int] | None = None):
    c = _wootters(_two_qubit(rho, dims))
    return f_of(np.minimum(c * c, 1.0))


def eof_pure(psi, cut=None, dims: Sequence[int] | None = None):
    """Entanglement of formation of a pure state: entropy of the side-A marginal."""
    amps, dims = _pure(psi, dims)
    cut = _cut(cut, len(dims))
    rho_a = reduced_density(amps, cut.side_a, dims)
    return _scalar(np.maximum(_entropy_bits(hermitian_eigenvalues(rho_a)), 0.0))


def _side_dim(dims, side) -> int:
    return int(np.prod([dims[i] for i in side]))


def pure_measure(psi, measure, cut=None, dims: Sequence[int] | None = None):
    """Value of `measure` on pure state(s) across `cut`.

    CREN of a pure state is its negativity, so both share one evaluation.
    """
    measure = Measure.parse(measure)
    amps, dims = _pure(psi, dims)
    cut = _cut(cut, len(dims))
    if measure is Measure.CONCURRENCE:
        return concurrence_pure(amps, cut, dims)
    if measure is Measure.EOF:
        return eof_pure(amps, cut, dims)
    if min(_side_dim(dims, cut.side_a), _side_dim(dims, cut.side_b)) == 2:
        # negativity equals concurrence for pure 2 x d states
        return concurrence_pure(amps, cut, dims)
    rho = amps[..., :, None] * amps[..., None, :].conj()
    return negativity(rho, sorted(cut.side_a), dims)


def _member_values(w: np.ndarray, measure, cut, dims) -> np.ndarray:
    """p * value(w / sqrt(p)) for unnormalized members w along the last axis."""
    p = np.sum(np.abs(w) ** 2, axis=-1)
    live = p > 1e-15
    unit = np.where(live[..., None], w / np.sqrt(np.where(live, p, 1.0))[..., None], 0.0)
    unit[~live, 0] = 1.0
    vals = np.asarray(pure_measure(unit, measure, cut, dims))
    return np.where(live, p * vals, 0.0)


def _decomposition_value(vecs: np.ndarray, u: np.ndarray, measure, cut, dims) -> np.ndarray:
    # members w_j = sum_k u[j, k] v_k for each candidate isometry u (batch axis 0)
    w = np.einsum("bjk,dk->bjd", u, vecs)
    return np.sum(_member_values(w, measure, cut, dims), axis=-1)


def _euclidean_gradient(vecs, u, measure, cut, dims, eps=1e-7):
    """Central-difference gradient of the decomposition value in the entries of u.

    Entry (j, k) only moves member j, so each partial derivative needs just
    two perturbed members per real direction.  Returns G with
    ``dF = Re sum conj(G) dU``.
    """
    w = np.einsum("bjk,dk->bjd", u, vecs)
    steps = eps * np.array([1.0, -1.0, 1.0j, -1.0j])
    # shape (b, j, k, 4, d): member j shifted by step * v_k
    moved = w[:, :, None, None, :] + steps[None, None, None, :, None] * vecs.T[None, None, :, None, :]
    g = _member_values(moved, measure, cut, dims)
    return ((g[..., 0] - g[..., 1]) + 1j * (g[..., 2] - g[..., 3])) / (2 * eps)


def _descend(vecs, u, vals, measure, cut, dims, steps):
    """Riemannian gradient descent on the isometries u with Cayley retraction.

    Each accepted point is an exact isometry, hence a genuine decomposition,
    and only strict improvements are accepted.
    """
    k = u.shape[1]
    eye = np.eye(k, dtype=np.complex128)
    taus = np.geomspace(2.0, 1e-5, 12)
    active = np.ones(len(u), dtype=bool)
    for _ in range(steps):
        if not np.any(active):
            break
        idx = np.flatnonzero(active)
        cur = u[idx]
        grad = _euclidean_gradient(vecs, cur, measure, cut, dims)
        skew = grad @ np.swapaxes(cur, -1, -2).conj() - cur @ np.swapaxes(grad, -1, -2).conj()
        norm = np.linalg.norm(skew, axis=(-2, -1))
        stalled = norm < 1e-12
        scale = np.where(stalled, 0.0, 1.0 / np.where(stalled, 1.0, norm))
        # Y(tau) = (I + tau/2 A)^-1 (I - tau/2 A) U for each candidate and step size
        half = 0.5 * (taus[None, :, None, None] * scale[:, None, None, None]) * skew[:, None]
        trial = np.linalg.solve(eye + half, (eye - half) @ cur[:, None])
        tv = _decomposition_value(vecs, trial.reshape(-1, k, u.shape[2]), measure, cut,
                                  dims).reshape(len(idx), len(taus))
        best = np.argmin(tv, axis=1)
        new = tv[np.arange(len(idx)), best]
        better = (new < vals[idx] - 1e-15) & ~stalled
        u[idx[better]] = trial[better, best[better]]
        vals[idx[better]] = new[better]
        active[idx[~better]] = False
    return u, vals


def convex_roof_upper_bound(rho, cut=None, measure="concurrence", restarts: int = 200,
                            seed=0, dims: Sequence[int] | None = None,
                            refine_steps: int = 200, refine_count: int = 4) -> float:
    """Upper bound on a convex-roof measure from explicit decompositions.

    Decompositions with ``r**2`` members (``r`` the rank of `rho`) are
    written ``W = U V^T`` with ``V`` the scaled eigenvectors and ``U`` a
    ``r**2 x r`` isometry.  The search evaluates the spectral decomposition
    and `restarts` Haar-random isometries, then runs gradient descent on the
    isometry manifold from the best `refine_count` of them.  Every candidate
    is a genuine decomposition, so the minimum found never undercuts the
    true value.

    Parameters
    ----------
    rho : DensityMatrix or ndarray
        Mixed state.
    cut : Bipartition or iterable of int, optional
        Side A; defaults to subsystem 0.
    measure : str or Measure
        Pure-state measure being extended.
    restarts : int
        Number of random starting isometries.  With 0 the spectral
        decomposition is returned without refinement (cheap, looser).
    seed : int or numpy Generator
        Seed for the random starts; results are deterministic per seed.
    refine_steps : int
        Maximum descent iterations per refined candidate.
    refine_count : int
        Number of best starting points that are refined.
    """
    measure = Measure.parse(measure)
    m, dims = _mixed(rho, dims)
    cut = _cut(cut, len(dims))
    w, v = hermitian_eigh(m)
    keep = w > 1e-12
    vecs = v[:, keep] * np.sqrt(w[keep])
    r = vecs.shape[1]
    if r == 1:
        return float(pure_measure(v[:, 0], measure, cut, dims))
    k = r * r

    starts = np.eye(k, dtype=np.complex128)[None, :, :r]
    if restarts <= 0:
        return float(_decomposition_value(vecs, starts, measure, cut, dims)[0])
    rng = _rng(seed)
    starts = np.concatenate([starts, haar_unitary(k, rng, size=restarts)[:, :, :r]])
    vals = _decomposition_value(vecs, starts, measure, cut, dims)
    idx = np.argsort(vals)[:max(1, refine_count)]
    _, refined = _descend(vecs, starts[idx].copy(), vals[idx].copy(), measure, cut, dims,
                          refine_steps)
    return float(min(vals.min(), refined.min()))
