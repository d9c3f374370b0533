"""Shared fixtures and slow but obviously-correct reference implementations."""

import itertools

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def loop_partial_trace(rho, dims, keep):
    """Partial trace by explicit summation over basis labels."""
    dims = list(dims)
    keep = sorted(keep)
    drop = [k for k in range(len(dims)) if k not in keep]
    kd = [dims[k] for k in keep]
    out = np.zeros((int(np.prod(kd)),) * 2, dtype=complex)
    strides = [int(np.prod(dims[k + 1:])) for k in range(len(dims))]

    def index(labels):
        return sum(l * s for l, s in zip(labels, strides))

    for kept_r in itertools.product(*[range(d) for d in kd]):
        for kept_c in itertools.product(*[range(d) for d in kd]):
            total = 0.0
            for env in itertools.product(*[range(dims[k]) for k in drop]):
                lr, lc = [0] * len(dims), [0] * len(dims)
                for k, v in zip(keep, kept_r):
                    lr[k] = v
                for k, v in zip(keep, kept_c):
                    lc[k] = v
                for k, v in zip(drop, env):
                    lr[k] = lc[k] = v
                total += rho[index(lr), index(lc)]
            r = int(np.ravel_multi_index(kept_r, kd)) if kd else 0
            c = int(np.ravel_multi_index(kept_c, kd)) if kd else 0
            out[r, c] = total
    return out


def loop_partial_transpose(rho, dims, sub):
    """Partial transpose by swapping one subsystem's row and column labels."""
    out = np.empty_like(rho)
    n = rho.shape[0]
    for i in range(n):
        for j in range(n):
            li = list(np.unravel_index(i, dims))
            lj = list(np.unravel_index(j, dims))
            li[sub], lj[sub] = lj[sub], li[sub]
            out[np.ravel_multi_index(li, dims), np.ravel_multi_index(lj, dims)] = rho[i, j]
    return out


def wootters_reference(rho):
    """Wootters concurrence through the non-Hermitian R = rho (sy sy) rho* (sy sy)."""
    sy = np.array([[0, -1j], [1j, 0]])
    yy = np.kron(sy, sy)
    r = rho @ yy @ rho.conj() @ yy
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(r).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def schmidt_negativity(amps, da, db):
    """Doubled negativity of a pure state, (sum_i s_i)^2 - 1 over Schmidt coefficients."""
    s = np.linalg.svd(np.asarray(amps).reshape(da, db), compute_uv=False)
    return float(np.sum(s) ** 2 - 1.0)


def haar_vector(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance lines collected by test_acceptance, if it ran."""
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
