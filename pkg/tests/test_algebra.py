import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from timoshenko_lie.algebra import (CASE_KINDS, DIM, EQUAL, GREATER, LESS, CaseParams, basis, bracket,
                                    case_of, characteristic_roots, derived_series, is_solvable,
                                    killing_closed_form, killing_coefficient, killing_form, mode_basis,
                                    structure_constants, x6_shift)
from timoshenko_lie.errors import ConfigError

from conftest import random_params

finite = st.floats(-3, 3, allow_nan=False)
vec8 = st.lists(finite, min_size=8, max_size=8).map(np.array)


def test_case_of_signs():
    assert case_of(1.0, 1.0, 2.0)[0] == EQUAL
    kind, lam = case_of(1.0, 1.0, math.sqrt(5.0))
    assert kind == GREATER and lam == pytest.approx(1.0)
    kind, mu = case_of(1.0, 1.0, math.sqrt(3.0))
    assert kind == LESS and mu == pytest.approx(1.0)


def test_from_damping_snaps_equal_band():
    p = CaseParams.from_damping(d=2.0 * (1 + 1e-12))
    assert p.kind == EQUAL and p.d ** 2 == pytest.approx(4.0, abs=1e-15)


@pytest.mark.parametrize("bad", [dict(rho1=0.0), dict(k=-1.0), dict(b=float("nan"))])
def test_invalid_params_rejected(bad):
    with pytest.raises(ConfigError):
        CaseParams.from_case(EQUAL, **bad)


def test_less_requires_subcritical_mu():
    with pytest.raises(ConfigError):
        CaseParams.from_case(LESS, mu=2.5)


def test_hat_constants():
    p = CaseParams.from_case(GREATER, rho2=2.0, lam=1.2)
    assert p.a_hat == pytest.approx(p.d / 4.0)
    assert p.b_hat == pytest.approx(0.3)
    assert CaseParams.from_case(EQUAL, rho2=4.0, k=1.0).a_hat == pytest.approx(0.5)


def test_commutators_equal_table():
    p = CaseParams.from_case(EQUAL, rho2=2.0, k=3.0)
    sc = structure_constants(p)
    a = math.sqrt(3.0 / 2.0)
    assert np.allclose(bracket(basis(1), basis(4), sc), basis(3))
    assert np.allclose(bracket(basis(1), basis(6), sc), basis(5))
    assert np.allclose(bracket(basis(2), basis(5), sc), basis(3))
    assert np.allclose(bracket(basis(2), basis(6), sc), basis(4))
    assert np.allclose(bracket(basis(1), basis(7), sc), -a * basis(7))
    assert np.allclose(bracket(basis(1), basis(8), sc), basis(7) - a * basis(8))


def test_nonzero_commutator_count(params):
    sc = structure_constants(params)
    nz = [(i, j) for i in range(1, 9) for j in range(i + 1, 9) if np.any(bracket(basis(i), basis(j), sc))]
    assert nz == [(1, 4), (1, 6), (1, 7), (1, 8), (2, 5), (2, 6)]


@given(vec8, vec8)
def test_bracket_antisymmetric(x, y):
    sc = structure_constants(CaseParams.from_case(LESS))
    assert np.allclose(bracket(x, y, sc), -bracket(y, x, sc), atol=1e-12)


def test_jacobi_all_triples(params):
    sc = structure_constants(params)
    worst = 0.0
    for i in range(1, 9):
        for j in range(1, 9):
            for k in range(1, 9):
                x, y, z = basis(i), basis(j), basis(k)
                r = (bracket(x, bracket(y, z, sc), sc) + bracket(y, bracket(z, x, sc), sc)
                     + bracket(z, bracket(x, y, sc), sc))
                worst = max(worst, np.max(np.abs(r)))
    assert worst <= 1e-12


def test_killing_coefficient_unit_values():
    assert killing_coefficient(CaseParams.from_case(EQUAL)) == pytest.approx(2.0)
    assert killing_coefficient(CaseParams.from_case(GREATER)) == pytest.approx(3.0)
    assert killing_coefficient(CaseParams.from_case(LESS)) == pytest.approx(1.0)


@given(vec8, vec8, st.sampled_from(CASE_KINDS))
def test_killing_trace_matches_closed_form(x, y, kind):
    p = CaseParams.from_case(kind)
    sc = structure_constants(p)
    assert killing_form(x, y, sc) == pytest.approx(killing_closed_form(x, y, p), rel=1e-10, abs=1e-12)


def test_derived_series_and_solvable(params):
    sc = structure_constants(params)
    assert derived_series(sc) == [8, 5, 0]
    assert is_solvable(sc)


def test_characteristic_roots_solve_quadratic(rng):
    for kind in CASE_KINDS:
        p = random_params(kind, rng)
        for r in characteristic_roots(p):
            assert abs(p.rho2 * r * r + p.d * r + p.k) <= 1e-12 * max(1.0, p.k)
        ref = np.sort_complex(np.roots([p.rho2, p.d, p.k]).astype(complex))
        assert np.allclose(np.sort_complex(characteristic_roots(p)), ref, atol=1e-7)


def test_mode_basis_solves_damped_oscillator(rng):
    t = np.linspace(0.0, 5.0, 41)
    for kind in CASE_KINDS:
        p = random_params(kind, rng)
        u, du, ddu = (mode_basis(p, t, o) for o in (0, 1, 2))
        for j in range(2):
            assert np.max(np.abs(p.rho2 * ddu[j] + p.d * du[j] + p.k * u[j])) <= 1e-12


def test_mode_basis_equal_matches_generators():
    p = CaseParams.from_case(EQUAL, rho2=2.0, k=0.5)
    t = np.linspace(0, 3, 7)
    u7, u8 = mode_basis(p, t)
    a = math.sqrt(0.5 / 2.0)
    assert np.allclose(u7, np.exp(-a * t), atol=1e-15)
    assert np.allclose(u8, t * np.exp(-a * t), atol=1e-15)


def test_mode_basis_bad_order(params):
    with pytest.raises(ValueError):
        mode_basis(params, 0.0, 3)


def test_x6_shift_equal():
    p = CaseParams.from_case(EQUAL, rho2=2.0, k=0.5)
    assert x6_shift(p, 0.0) == pytest.approx(2.0 * math.sqrt(2.0 / 0.5))


def test_basis_dimension():
    assert basis(DIM).shape == (DIM,) and basis(DIM)[-1] == 1.0
