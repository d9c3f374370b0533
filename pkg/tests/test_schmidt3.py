import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoqubit.linalg import DomainError, reduced_density
from monoqubit.measures import (
    concurrence_pure,
    concurrence_two_qubit,
    eof_two_qubit,
    negativity,
)
from monoqubit.monogamy import ExponentPair
from monoqubit.repro import w_state
from monoqubit.schmidt3 import (
    SchmidtParams,
    ThetaParams,
    build_state,
    closed_form_concurrences,
    from_theta,
    measure_triple,
    residual_surface,
    residual_u,
    theta_grid,
)

angle = st.floats(0, math.pi / 2)


def numeric_triple(p):
    psi = build_state(p)
    return (concurrence_pure(psi, [0]),
            concurrence_two_qubit(reduced_density(psi, (0, 1))),
            concurrence_two_qubit(reduced_density(psi, (0, 2))))


@settings(max_examples=300, deadline=None)
@given(st.tuples(angle, angle, angle, angle), st.floats(0, 2 * math.pi))
def test_closed_forms_match_numerics(theta, phi):
    p = from_theta(ThetaParams(theta), phi)
    np.testing.assert_allclose(closed_form_concurrences(p), numeric_triple(p), atol=1e-9)


def test_example2_values():
    p = SchmidtParams.example2()
    c_abc, c_ab, c_ac = closed_form_concurrences(p)
    assert c_abc == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert c_ab + c_ac == pytest.approx((5 * math.sqrt(2) + 3 * math.sqrt(6)) / 20, abs=1e-15)
    assert c_ab <= c_ac


def test_example2_u12_against_mpmath():
    s2, s6 = mpmath.sqrt(2), mpmath.sqrt(6)
    ref = s2 / 2 - s2 / 4 - (s2 - 1) * 3 * s6 / 20
    u = residual_u(SchmidtParams.example2(), ExponentPair(1, 2))
    assert u == pytest.approx(float(ref), abs=1e-14)
    assert u >= 0.201


def test_w_equivalent_params_reproduce_w_state():
    p = SchmidtParams.w_equivalent()
    np.testing.assert_allclose(closed_form_concurrences(p),
                               numeric_triple(p), atol=1e-12)
    c = closed_form_concurrences(p)
    assert c == pytest.approx((2 * math.sqrt(2) / 3, 2 / 3, 2 / 3))
    w = w_state(3)
    # X on qubit A maps the parameterized state onto the W state
    amps = build_state(p).amplitudes.reshape(2, 4)[::-1].reshape(-1)
    np.testing.assert_allclose(amps, w.amplitudes, atol=1e-15)


def test_phase_never_enters(rng):
    lam = rng.uniform(0, 1, 5)
    lam /= np.linalg.norm(lam)
    a = numeric_triple(SchmidtParams(tuple(lam), 0.0))
    b = numeric_triple(SchmidtParams(tuple(lam), 2.1))
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_measure_triple_eof_and_negativity():
    p = SchmidtParams.example2()
    psi = build_state(p)
    tot, e_ab, e_ac = measure_triple(p, "eof")
    assert e_ab == pytest.approx(eof_two_qubit(reduced_density(psi, (0, 1))), abs=1e-12)
    assert e_ac == pytest.approx(eof_two_qubit(reduced_density(psi, (0, 2))), abs=1e-12)
    tot_n, n_ab, n_ac = measure_triple(p, "negativity")
    assert tot_n == pytest.approx(math.sqrt(2) / 2)
    assert n_ab == pytest.approx(negativity(reduced_density(psi, (0, 1)), 0, (2, 2)))
    assert measure_triple(p, "cren") == measure_triple(p, "c")


def test_params_validation():
    with pytest.raises(DomainError):
        SchmidtParams((1, 0, 0, 0))
    with pytest.raises(DomainError):
        SchmidtParams((1, 0.1, 0, 0, 0))
    with pytest.raises(DomainError):
        SchmidtParams((-1, 0, 0, 0, 0))
    with pytest.raises(DomainError):
        ThetaParams((0, 0, 0, 2))


def test_from_theta_nested_sines():
    p = from_theta(ThetaParams((math.pi / 4, math.pi / 2, 0, 0)))
    np.testing.assert_allclose(p.lam, [math.sqrt(0.5), 0, math.sqrt(0.5), 0, 0], atol=1e-15)


def test_theta_grid():
    lam = theta_grid()
    assert lam.shape == (10 ** 4, 5)
    np.testing.assert_allclose(np.linalg.norm(lam, axis=1), 1.0, atol=1e-14)
    assert np.all(lam >= 0)


def test_residual_surface_shape_and_regime():
    p = SchmidtParams.example2()
    surf = residual_surface(p, [0.5, 1.0, 2.0], [2.0, 3.0])
    assert surf.shape == (3, 2)
    assert surf[1, 0] == pytest.approx(residual_u(p, ExponentPair(1, 2)))
    with pytest.raises(DomainError):
        residual_surface(p, [0.5], [1.5])
    with pytest.raises(DomainError):
        residual_surface(p, [3.0], [2.0])
    residual_surface(p, [1.0], [1.5], "eof")
