import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from cosetdual.adjoint import (
    FieldConfiguration,
    adjoint_of,
    coset_matrix,
    coset_matrix_inverse,
    coset_matrix_json,
    exp_gamma,
    exp_lambda,
    lambda_matrix,
    verify_homomorphism,
)
from cosetdual.dualized import gtilde
from conftest import SMALL, algebra


def test_homomorphism(small):
    rep = verify_homomorphism(small[2])
    assert rep.passed
    assert rep.checked == small[2].S ** 2


def test_adjoint_of_is_linear():
    d = algebra("A2")[2]
    coords = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(0), Fraction(5)]
    want = sum((d.U(l) * c for l, c in enumerate(coords)), start=d.U(0) * 0)
    assert (adjoint_of(d, coords) == want).all()
    with pytest.raises(ValueError):
        adjoint_of(d, coords[:2])


def test_zero_field_gives_identity(small):
    d = small[2]
    assert np.array_equal(coset_matrix(d, FieldConfiguration.zero(d)), np.eye(d.S))


def test_lambda_is_nilpotent_and_exact_inverse(small):
    d = small[2]
    chi = [Fraction(k + 1, 7) * (-1) ** k for k in range(len(d.ncp))]
    lam = lambda_matrix(d, chi)
    power = lam.copy()
    for _ in range(max(a.height for a in d.ncp)):
        power = power @ lam
    assert not power.any()
    prod = exp_lambda(d, chi) @ exp_lambda(d, chi, sign=-1)
    assert (prod == np.eye(d.S, dtype=int)).all()


fields = st.lists(st.floats(-1, 1, allow_nan=False), min_size=20, max_size=20)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), fields)
def test_coset_matrix_matches_dense_exponentials(name, values):
    d = algebra(name)[2]
    fc = FieldConfiguration(tuple(values[: d.r]), tuple(values[d.r : d.S]))
    gamma = sum(np.asarray(gtilde(d, i).entries, dtype=float) * (fc.phi[i] / 2) for i in range(d.r))
    lam = np.asarray(lambda_matrix(d, fc.chi), dtype=float)
    want = expm(gamma) @ expm(lam)
    nu = coset_matrix(d, fc)
    assert np.allclose(nu, want, rtol=1e-12, atol=1e-12)
    inv = coset_matrix_inverse(d, fc)
    assert np.allclose(nu @ inv, np.eye(d.S), atol=1e-12)
    assert math.isclose(np.linalg.det(nu), math.exp(np.trace(gamma)), rel_tol=1e-10)


def test_coset_matrix_is_block_upper_triangular():
    d = algebra("G2")[2]
    fc = FieldConfiguration((0.3, -0.2), (0.1, 0.5, -0.4, 0.2, 0.7, -0.9))
    nu = coset_matrix(d, fc)
    # Cartan rows of nu are e_i plus root columns; root block is upper triangular
    assert np.array_equal(nu[: d.r, : d.r], np.eye(d.r))
    assert not nu[d.r :, : d.r].any()
    assert np.allclose(np.tril(nu[d.r :, d.r :], -1), 0)


def test_exp_gamma_diagonal():
    d = algebra("A2")[2]
    eg = exp_gamma(d, (0.4, -0.6))
    comps = [(2, -1), (-1, 2), (1, 1)]
    want = [1, 1] + [math.exp(-(a * 0.4 + b * -0.6) / 2) for a, b in comps]
    assert np.allclose(np.diag(eg.astype(float)), want)


def test_field_configuration_validation():
    d = algebra("A2")[2]
    with pytest.raises(ValueError):
        FieldConfiguration((float("nan"), 0.0), (0.0,) * 3)
    with pytest.raises(ValueError):
        coset_matrix(d, FieldConfiguration((0.0,), (0.0,) * 3))
    fc = FieldConfiguration.random(d, np.random.default_rng(0))
    assert len(fc.phi) == 2 and len(fc.chi) == 3
    assert all(-1 <= x <= 1 for x in fc.phi + fc.chi)
    assert FieldConfiguration.of([Fraction(1, 2)], [1]).is_exact


def test_json_export():
    d = algebra("A1")[2]
    out = coset_matrix_json(d, FieldConfiguration((0.0,), (1.0,)), precision=4)
    assert out == {"labels": ["H1", "E[1]"], "nu": [[1.0, 0.5], [0.0, 1.0]]}
