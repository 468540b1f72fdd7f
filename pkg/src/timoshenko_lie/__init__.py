"""Lie symmetry toolkit for the damped nonlinear Timoshenko beam system."""

from .adjoint import adjoint_composed, adjoint_exact, adjoint_product, adjoint_single, series_matrix
from .algebra import (CASE_KINDS, EQUAL, GREATER, LESS, CaseParams, bracket, derived_series, is_solvable,
                      killing_closed_form, killing_form, mode_basis, structure_constants)
from .chi import ChiSpec
from .errors import (CaseMismatch, ConfigError, ConstraintViolation, GridTooCoarse, NumericalDegeneracy,
                     RangeExceeded, RequiresLinearChi, SingularCoefficient, StepUnstable,
                     TimoshenkoLieError, WindowExceeded, ZeroElement)
from .fields import SolutionField
from .group_action import (GeneratorSpec, compose_point, manufactured_linear, scale_solution,
                           transform_point, transform_solution)
from .optimal_system import ClassificationResult, classify, representative, verify_conjugacy
from .reduction import (AnsatzSpec, ReducedSolution, ansatz, example_solution, lift, lift_consistency,
                        reduced_residual, solve_eta2, solve_reduced)
from .residual import GridSolution, ResidualReport, convergence_study, pde_residual, sample

__version__ = "0.1.0"
