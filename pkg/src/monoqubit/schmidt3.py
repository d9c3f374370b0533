"""Three-qubit generalized Schmidt family and its closed-form concurrences.

The family is

    lam0 |000> + lam1 e^{i phi} |100> + lam2 |110> + lam3 |101> + lam4 |111>

with qubits ordered A, B, C.  With this placement the pairwise
concurrences are C_AB = 2 lam0 lam2 and C_AC = 2 lam0 lam3, and
C_A|BC = 2 lam0 sqrt(lam2^2 + lam3^2 + lam4^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DomainError, PureState
from .measures import Measure, f_of, negativity
from .linalg import reduced_density
from .monogamy import ExponentPair, tripartite_residual, tripartite_residuals

__all__ = [
    "SchmidtParams",
    "ThetaParams",
    "build_state",
    "from_theta",
    "closed_form_concurrences",
    "measure_triple",
    "residual_u",
    "residual_surface",
    "theta_grid",
]

# basis index of each amplitude, big-endian |A B C>
_SLOTS = (0b000, 0b100, 0b110, 0b101, 0b111)


@dataclass(frozen=True)
class SchmidtParams:
    """Amplitudes lam0..lam4 (nonnegative, unit norm) and relative phase phi."""

    lam: tuple
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5:
            raise DomainError("expected five amplitudes lam0..lam4")
        if any(not math.isfinite(x) or x < 0.0 for x in lam):
            raise DomainError("amplitudes must be finite and nonnegative")
        norm = math.fsum(x * x for x in lam)
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"squared amplitudes sum to {norm!r}, expected 1")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * math.pi))

    @classmethod
    def example2(cls) -> "SchmidtParams":
        """The worked instance lam = (sqrt2/2, 1/2, 1/4, 3 sqrt3/20, sqrt3/5)."""
        s2, s3 = math.sqrt(2.0), math.sqrt(3.0)
        return cls((s2 / 2, 0.5, 0.25, 3 * s3 / 20, s3 / 5))

    @classmethod
    def w_equivalent(cls) -> "SchmidtParams":
        """Parameters of (|000> + |110> + |101>)/sqrt3, the W state up to X on qubit A."""
        a = 1.0 / math.sqrt(3.0)
        return cls((a, 0.0, a, a, 0.0))


@dataclass(frozen=True)
class ThetaParams:
    """Four angles in [0, pi/2] that parameterize the amplitudes on the unit sphere."""

    theta: tuple

    def __post_init__(self):
        th = tuple(float(x) for x in self.theta)
        if len(th) != 4:
            raise DomainError("expected four angles")
        if any(not (0.0 <= x <= math.pi / 2 + 1e-15) for x in th):
            raise DomainError("angles must lie in [0, pi/2]")
        object.__setattr__(self, "theta", th)


def build_state(p: SchmidtParams) -> PureState:
    amps = np.zeros(8, dtype=np.complex128)
    amps[list(_SLOTS)] = p.lam
    amps[_SLOTS[1]] *= np.exp(1j * p.phi)
    return PureState((2, 2, 2), amps)


def _theta_to_lam(th: np.ndarray) -> np.ndarray:
    c, s = np.cos(th), np.sin(th)
    lam0 = c[..., 0]
    lam1 = s[..., 0] * c[..., 1]
    lam2 = s[..., 0] * s[..., 1] * c[..., 2]
    lam3 = s[..., 0] * s[..., 1] * s[..., 2] * c[..., 3]
    lam4 = s[..., 0] * s[..., 1] * s[..., 2] * s[..., 3]
    return np.abs(np.stack([lam0, lam1, lam2, lam3, lam4], axis=-1))


def from_theta(t: ThetaParams, phi: float = 0.0) -> SchmidtParams:
    """Nested-sine map lam0 = cos t0, lam1 = sin t0 cos t1, ..., lam4 = sin t0..sin t3."""
    return SchmidtParams(tuple(_theta_to_lam(np.asarray(t.theta))), phi)


def _closed_forms(lam: np.ndarray):
    lam = np.asarray(lam, dtype=float)
    l0, l2, l3, l4 = lam[..., 0], lam[..., 2], lam[..., 3], lam[..., 4]
    c_abc = 2.0 * l0 * np.sqrt(l2 * l2 + l3 * l3 + l4 * l4)
    return c_abc, 2.0 * l0 * l2, 2.0 * l0 * l3


def closed_form_concurrences(p):
    """(C_A|BC, C_AB, C_AC) for the family; the phase never enters.

    `p` is a SchmidtParams (returns floats) or an array whose last axis
    holds lam0..lam4 (returns three arrays, e.g. for a whole `theta_grid`).
    """
    if isinstance(p, SchmidtParams):
        return tuple(float(x) for x in _closed_forms(np.asarray(p.lam)))
    return _closed_forms(p)


def measure_triple(p: SchmidtParams, measure="concurrence") -> tuple[float, float, float]:
    """(total, AB, AC) values of `measure` for the state built from `p`.

    Concurrence and CREN use the closed forms; EoF maps them through f
    (exact for two-qubit marginals and for a qubit against a pure rest);
    negativity keeps total = C and evaluates the marginals numerically.
    """
    measure = Measure.parse(measure)
    c_abc, c_ab, c_ac = closed_form_concurrences(p)
    if measure in (Measure.CONCURRENCE, Measure.CREN):
        return c_abc, c_ab, c_ac
    if measure is Measure.EOF:
        return tuple(float(f_of(min(c * c, 1.0))) for c in (c_abc, c_ab, c_ac))
    psi = build_state(p)
    n_ab = negativity(reduced_density(psi, (0, 1)), 0, (2, 2))
    n_ac = negativity(reduced_density(psi, (0, 2)), 0, (2, 2))
    return c_abc, n_ab, n_ac


def residual_u(p: SchmidtParams, e: ExponentPair, measure="concurrence") -> float:
    """u(beta, alpha) = total^b - small^b - (2^{b/a} - 1) large^b for the family.

    The larger of the two pairwise values carries the weight.
    """
    total, v_ab, v_ac = measure_triple(p, measure)
    return tripartite_residual(v_ab, v_ac, total, e, measure).residual


def residual_surface(p: SchmidtParams, betas, alphas, measure="concurrence") -> np.ndarray:
    """u on the outer grid betas x alphas; shape (len(betas), len(alphas)).

    Every grid point is validated against the measure's exponent regime.
    """
    measure = Measure.parse(measure)
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    ExponentPair(float(betas.min()), float(alphas.min()), measure.regime)
    ExponentPair(float(betas.max()), float(alphas.min()), measure.regime)
    total, v_ab, v_ac = measure_triple(p, measure)
    res, _ = tripartite_residuals(v_ab, v_ac, total, betas[:, None], alphas[None, :])
    return res


def theta_grid(points_per_axis: int = 10) -> np.ndarray:
    """Amplitude rows lam0..lam4 on a uniform grid of the four angles in [0, pi/2]."""
    axis = np.linspace(0.0, math.pi / 2, points_per_axis)
    th = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 4)
    return _theta_to_lam(th)
