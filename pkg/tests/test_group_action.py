import numpy as np
import pytest
from hypothesis import given, strategies as st

from timoshenko_lie.algebra import CASE_KINDS, EQUAL, GREATER, LESS, CaseParams, mode_basis
from timoshenko_lie.chi import ChiSpec
from timoshenko_lie.errors import RequiresLinearChi, WindowExceeded
from timoshenko_lie.fields import SolutionField
from timoshenko_lie.group_action import (PRINTED, GeneratorSpec, compose_point, drift_solution,
                                         manufactured_linear, modes, scale_solution, shear_solution,
                                         transform_point, transform_solution, transform_solution_by_points)
from timoshenko_lie.residual import convergence_study, pde_residual, sample

eps_st = st.lists(st.floats(-1, 1, allow_nan=False), min_size=8, max_size=8)
WIN = (0.0, 1.0, 0.0, 1.0)


def test_generator_indices(params):
    with pytest.raises(IndexError):
        GeneratorSpec(0, params)
    xi1, xi2, e1, e2 = GeneratorSpec(6, params).evaluate(0.5, 2.0, 0.0, 0.0)
    assert (xi1, xi2, e1) == (0.0, 0.0, 1.0)
    assert e2 == pytest.approx(params.d / params.k - 0.5)


@pytest.mark.parametrize("i", range(1, 9))
def test_flow_is_generated_by_infinitesimals(params, i):
    p0 = (0.3, 0.7, 0.2, -0.1)
    h = 1e-6
    plus = np.array(transform_point(i, h, p0, params), float)
    minus = np.array(transform_point(i, -h, p0, params), float)
    deriv = (plus - minus) / (2 * h)
    gen = np.array(GeneratorSpec(i, params).evaluate(*p0), float)
    assert np.allclose(deriv, gen, atol=1e-8)


@given(st.integers(1, 8), st.floats(-1, 1), st.floats(-1, 1), st.sampled_from(CASE_KINDS))
def test_one_parameter_group_law(i, a, b, kind):
    p = CaseParams.from_case(kind)
    p0 = (0.3, 0.7, 0.2, -0.1)
    if i == 1:
        return  # X7, X8 depend on t, so the t-shift does not compose additively on (phi, psi)
    two = transform_point(i, b, transform_point(i, a, p0, p), p)
    one = transform_point(i, a + b, p0, p)
    assert np.allclose(np.array(two, float), np.array(one, float), atol=1e-12)


@given(eps_st, st.sampled_from(CASE_KINDS))
def test_closed_form_matches_point_composition(eps, kind):
    p = CaseParams.from_case(kind)
    base = shear_solution()
    t, x = np.meshgrid(np.linspace(0, 1, 5), np.linspace(0, 1, 5), indexing="ij")
    a = transform_solution(base, eps, p)(t, x)
    b = transform_solution_by_points(base, eps, p)(t, x)
    assert np.allclose(a[0], b[0], atol=1e-12) and np.allclose(a[1], b[1], atol=1e-12)


def test_zero_eps_is_identity(params):
    base = drift_solution(0.7)
    t, x = np.meshgrid(np.linspace(0, 1, 4), np.linspace(0, 1, 4), indexing="ij")
    a = transform_solution(base, np.zeros(8), params)(t, x)
    b = base(t, x)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_window_shifts_with_translation(params):
    base = SolutionField(lambda t, x: 0 * t, lambda t, x: 0 * t, window=WIN)
    f = transform_solution(base, [0.5, -0.25, 0, 0, 0, 0, 0, 0], params)
    assert f.window == (-0.5, 0.5, 0.25, 1.25)
    with pytest.raises(WindowExceeded):
        f(np.array([0.9]), np.array([0.5]))


def test_transformed_exact_solution_converges(params):
    eps = [0.3, -0.5, 0.7, 0.2, -0.4, 0.6, 0.8, -0.9]
    study = convergence_study(transform_solution(shear_solution(), eps, params), ChiSpec.linear(params.b),
                              params, WIN)
    assert all(o is None or o >= 1.9 for o in study.orders)
    assert study.finest.max <= 1e-5


def test_printed_composed_exponent_differs_from_composition():
    p = CaseParams.from_case(GREATER)
    eps = [0.8, 0, 0, 0, 0, 0, 0.5, 0.5]
    t, x = np.meshgrid(np.linspace(0, 1, 5), np.linspace(0, 1, 5), indexing="ij")
    a = transform_solution(shear_solution(), eps, p, reading=PRINTED)(t, x)
    b = transform_solution_by_points(shear_solution(), eps, p)(t, x)
    assert np.max(np.abs(a[1] - b[1])) > 1e-3


def test_printed_mode_reading_is_not_a_solution():
    p = CaseParams.from_case(LESS)
    t = np.linspace(0, 2, 201)
    h7 = modes(p, t, PRINTED)[0]
    dt = t[1] - t[0]
    r = p.rho2 * np.gradient(np.gradient(h7, dt), dt) + p.d * np.gradient(h7, dt) + p.k * h7
    assert np.max(np.abs(r[5:-5])) > 1e-2
    assert np.allclose(modes(p, t)[0], mode_basis(p, t)[0])


def test_scale_requires_linear_chi():
    with pytest.raises(RequiresLinearChi):
        scale_solution(shear_solution(), 0.3, ChiSpec.cubic(1.0, 0.3))
    with pytest.raises(RequiresLinearChi):
        scale_solution(shear_solution(), 0.3, ChiSpec.linear(1.0, offset=0.2))


def test_scaled_exact_solution_stays_exact(params):
    g = sample(scale_solution(shear_solution(), 0.5, ChiSpec.linear(params.b)), WIN, 11, 11)
    assert pde_residual(g, ChiSpec.linear(params.b), params).max <= 1e-12


def test_compose_point_order(params):
    p0 = (0.0, 0.0, 0.0, 0.0)
    eps = np.array([1.0, 0, 0, 2.0, 0, 0, 0, 0])
    # G1 shifts t first, so G4 sees t = 1
    assert compose_point(eps, p0, params)[2] == pytest.approx(2.0)


def test_manufactured_linear_converges(params):
    fld = manufactured_linear(params, 1.3, [0.2, -0.1, 0.4, 0.3])
    study = convergence_study(fld, ChiSpec.linear(params.b), params, WIN)
    assert abs(study.orders[-1] - 2.0) <= 0.15
