"""Dense complex linear algebra for small multi-qubit systems.

Matrices are plain ``numpy`` arrays.  Every matrix routine here accepts a
stack of matrices with arbitrary leading batch axes (shape ``(..., d, d)``),
so sampling campaigns can push thousands of states through a single call.

Subsystem 0 is the leftmost tensor factor and basis states are indexed
big-endian: ``|b0 b1 ... b_{n-1}>`` maps to the integer with ``b0`` as the
most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "PureState",
    "DensityMatrix",
    "kron",
    "partial_trace",
    "partial_transpose",
    "reduced_density",
    "hermitian_eigh",
    "hermitian_eigenvalues",
    "trace_norm",
    "haar_random_pure",
    "haar_amplitudes",
    "haar_unitary",
    "random_mixed",
]

HERMITIAN_TOL = 1e-8
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise DomainError(f"subsystem dimensions must all be >= 2, got {dims}")
    return dims


def _qubit_dims(size: int) -> tuple[int, ...]:
    n = size.bit_length() - 1
    if size < 2 or 1 << n != size:
        raise DomainError(f"cannot infer qubit dimensions for size {size}; pass dims")
    return (2,) * n


def _check_subsystems(indices: Iterable[int], nsub: int) -> tuple[int, ...]:
    idx = tuple(sorted({int(i) for i in indices}))
    if not idx or idx[0] < 0 or idx[-1] >= nsub:
        raise DomainError(f"invalid subsystem indices {idx} for {nsub} subsystems")
    return idx


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over an ordered list of subsystems."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        if amps.size != prod(dims):
            raise DomainError(f"{amps.size} amplitudes do not match dims {dims}")
        if not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > 1e-12:
            raise DomainError(f"state is not normalized: squared norm {norm2!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec, dims: Sequence[int] | None = None,
                    normalize: bool = False) -> "PureState":
        vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
        if normalize:
            vec = vec / np.linalg.norm(vec)
        return cls(dims if dims is not None else _qubit_dims(vec.size), vec)

    @property
    def nsub(self) -> int:
        return len(self.dims)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix with subsystem dims."""

    dims: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        m = _frozen(self.matrix)
        side = prod(dims)
        if m.shape != (side, side):
            raise DomainError(f"matrix shape {m.shape} does not match dims {dims}")
        if not np.all(np.isfinite(m)):
            raise DomainError("matrix entries must be finite")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise DomainError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > 1e-10:
            raise DomainError(f"density matrix trace is {tr.real:.12g}, expected 1")
        low = hermitian_eigenvalues(m)[-1]
        if low < -1e-9:
            raise DomainError(f"density matrix is not positive semidefinite "
                              f"(smallest eigenvalue {low:.3g})")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m, dims: Sequence[int] | None = None) -> "DensityMatrix":
        m = np.asarray(m, dtype=np.complex128)
        return cls(dims if dims is not None else _qubit_dims(m.shape[-1]), m)

    @property
    def nsub(self) -> int:
        return len(self.dims)


def kron(a, b) -> np.ndarray:
    """Kronecker product, broadcasting over leading batch axes."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim < 2 or b.ndim < 2:
        raise DomainError("kron expects matrices")
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    batch = out.shape[:-4]
    return out.reshape(*batch, a.shape[-2] * b.shape[-2], a.shape[-1] * b.shape[-1])


def _trace_out(m: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    n = len(dims)
    batch = m.shape[:-2]
    t = m.reshape(*batch, *dims, *dims)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = [letters[i] for i in range(n)]
    col = [letters[i] if i not in keep else letters[n + i] for i in range(n)]
    out = [letters[i] for i in keep] + [letters[n + i] for i in keep]
    t = np.einsum(f"...{''.join(row)}{''.join(col)}->...{''.join(out)}", t)
    side = prod(dims[i] for i in keep)
    return t.reshape(*batch, side, side)


def partial_trace(rho, keep: Iterable[int], dims: Sequence[int] | None = None):
    """Reduce a density matrix to the subsystems listed in `keep`.

    Parameters
    ----------
    rho : DensityMatrix or ndarray
        State to reduce. Arrays may carry leading batch axes; their
        subsystem dims default to all qubits.
    keep : iterable of int
        Subsystems that survive, returned in ascending order.
    dims : sequence of int, optional
        Subsystem dimensions when `rho` is an array.

    Returns
    -------
    DensityMatrix or ndarray
        Same kind as the input.
    """
    if isinstance(rho, DensityMatrix):
        keep = _check_subsystems(keep, rho.nsub)
        m = _trace_out(rho.matrix, rho.dims, keep)
        return DensityMatrix(tuple(rho.dims[i] for i in keep), m)
    m = np.asarray(rho, dtype=np.complex128)
    dims = _check_dims(dims) if dims is not None else _qubit_dims(m.shape[-1])
    return _trace_out(m, dims, _check_subsystems(keep, len(dims)))


def reduced_density(psi, keep: Iterable[int], dims: Sequence[int] | None = None) -> np.ndarray:
    """Reduced density matrix of pure state(s) on `keep`, without forming |psi><psi|."""
    if isinstance(psi, PureState):
        amps, dims = psi.amplitudes, psi.dims
    else:
        amps = np.asarray(psi, dtype=np.complex128)
        dims = _check_dims(dims) if dims is not None else _qubit_dims(amps.shape[-1])
    keep = _check_subsystems(keep, len(dims))
    rest = tuple(i for i in range(len(dims)) if i not in keep)
    mat = _bipartite_matrix(amps, dims, keep, rest)
    return mat @ np.swapaxes(mat, -1, -2).conj()


def _bipartite_matrix(amps: np.ndarray, dims, side_a, side_b) -> np.ndarray:
    """Coefficient matrix psi[a, b] of pure state(s) for the cut side_a | side_b."""
    batch = amps.shape[:-1]
    nb = len(batch)
    t = amps.reshape(*batch, *dims)
    order = list(range(nb)) + [nb + i for i in side_a] + [nb + i for i in side_b]
    t = np.transpose(t, order)
    da = prod(dims[i] for i in side_a)
    return t.reshape(*batch, da, -1)


def partial_transpose(rho, subsystem: int, dims: Sequence[int] | None = None) -> np.ndarray:
    """Transpose the indices of one subsystem; returns a bare matrix."""
    if isinstance(rho, DensityMatrix):
        m, dims = rho.matrix, rho.dims
    else:
        m = np.asarray(rho, dtype=np.complex128)
        dims = _check_dims(dims) if dims is not None else _qubit_dims(m.shape[-1])
    n = len(dims)
    (k,) = _check_subsystems([subsystem], n)
    batch = m.shape[:-2]
    nb = len(batch)
    t = m.reshape(*batch, *dims, *dims)
    t = np.swapaxes(t, nb + k, nb + n + k)
    return t.reshape(m.shape)


def hermitian_eigh(m, tol: float = JACOBI_TOL, check: bool = True):
    """Eigendecomposition of Hermitian matrices by cyclic complex Jacobi sweeps.

    Sweeps stop once the off-diagonal Frobenius norm of every matrix in the
    batch is below ``tol * max(1, ||m||_F)``.

    Parameters
    ----------
    m : array_like, shape (..., d, d)
        Hermitian matrices.
    tol : float
        Convergence threshold on the off-diagonal norm.
    check : bool
        Reject inputs that are not Hermitian within 1e-8.

    Returns
    -------
    w : ndarray, shape (..., d)
        Eigenvalues in descending order.
    v : ndarray, shape (..., d, d)
        Unitary whose columns are the matching eigenvectors.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DomainError(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    if check and a.size and np.max(np.abs(a - np.swapaxes(a, -1, -2).conj())) > HERMITIAN_TOL:
        raise DomainError("matrix is not Hermitian")
    shape = a.shape
    n = shape[-1]
    a = a.reshape(-1, n, n)
    a = 0.5 * (a + np.swapaxes(a, -1, -2).conj())
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy()
    thresh = tol * np.maximum(1.0, np.linalg.norm(a, axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if not np.any(off > thresh):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                live = mag > 1e-290
                safe = np.where(live, mag, 1.0)
                phase = np.where(live, apq / safe, 1.0)
                tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                with np.errstate(over="ignore"):
                    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # rotation J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on (p, q)
                jpp = c[:, None]
                jpq = s[:, None]
                jqp = (-s * phase.conj())[:, None]
                jqq = (c * phase.conj())[:, None]

                colp = a[:, :, p].copy()
                colq = a[:, :, q]
                a[:, :, p] = colp * jpp + colq * jqp
                a[:, :, q] = colp * jpq + colq * jqq
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :]
                a[:, p, :] = jpp.conj() * rowp + jqp.conj() * rowq
                a[:, q, :] = jpq.conj() * rowp + jqq.conj() * rowq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0

                vp = v[:, :, p].copy()
                vq = v[:, :, q]
                v[:, :, p] = vp * jpp + vq * jqp
                v[:, :, q] = vp * jpq + vq * jqq
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")

    w = np.diagonal(a, axis1=1, axis2=2).real
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w.reshape(shape[:-1]), v.reshape(shape)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of Hermitian matrices, descending along the last axis."""
    return hermitian_eigh(m)[0]


def trace_norm(m) -> np.ndarray | float:
    """Sum of singular values, Tr sqrt(X X^dagger).

    Hermitian inputs use the absolute eigenvalues directly, which keeps
    exact zeros at zero instead of square-rooting rounding noise.
    """
    a = np.asarray(m, dtype=np.complex128)
    if np.max(np.abs(a - np.swapaxes(a, -1, -2).conj()), initial=0.0) <= 1e-12:
        out = np.sum(np.abs(hermitian_eigenvalues(a)), axis=-1)
    else:
        gram = a @ np.swapaxes(a, -1, -2).conj()
        out = np.sum(np.sqrt(np.clip(hermitian_eigenvalues(gram), 0.0, None)), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_amplitudes(dims: Sequence[int], size: int | None, rng) -> np.ndarray:
    """Haar-random normalized amplitude vectors, shape (size, prod(dims)) or (prod(dims),)."""
    dims = _check_dims(dims)
    rng = _rng(rng)
    shape = (prod(dims),) if size is None else (size, prod(dims))
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def haar_random_pure(dims: Sequence[int], seed) -> PureState:
    """Haar-uniform pure state; identical output for identical seeds."""
    dims = _check_dims(dims)
    amps = haar_amplitudes(dims, None, seed)
    return PureState(dims, amps)


def haar_unitary(d: int, rng, size: int | None = None) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase correction."""
    rng = _rng(rng)
    shape = (d, d) if size is None else (size, d, d)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[..., None, :]


def random_mixed(dims: Sequence[int], rng, size: int | None = None,
                 env_dim: int | None = None) -> np.ndarray:
    """Random density matrices from the induced measure.

    A Haar pure state on ``dims`` plus an environment of dimension
    `env_dim` (default: the system dimension) is traced over the environment.
    """
    dims = _check_dims(dims)
    d = prod(dims)
    env = d if env_dim is None else int(env_dim)
    amps = haar_amplitudes((d, env), size, rng)
    mat = amps.reshape(*amps.shape[:-1], d, env)
    return mat @ np.swapaxes(mat, -1, -2).conj()
