"""Regularized multi-task learning in feature coordinates."""

from vrkbs.learn.checks import (
    ZeroTest,
    characterization_residual,
    dual_coordinate_residual,
    essential_li_check,
    network_residuals,
    representer_check,
    zero_minimizer_test,
)
from vrkbs.learn.interpolation import InfeasibleInterpolation, solve_min_norm_interpolation
from vrkbs.learn.losses import (
    LossSpec,
    RegularizerSpec,
    eps_insensitive_loss,
    power_loss,
    square_loss,
)
from vrkbs.learn.problem import LearningProblem, Model, objective_eval, objective_gradient
from vrkbs.learn.solver import recover_eta, solve

__all__ = [
    "LossSpec", "RegularizerSpec", "square_loss", "power_loss", "eps_insensitive_loss",
    "LearningProblem", "Model", "objective_eval", "objective_gradient",
    "solve", "recover_eta", "solve_min_norm_interpolation", "InfeasibleInterpolation",
    "characterization_residual", "ZeroTest", "zero_minimizer_test", "representer_check",
    "essential_li_check", "dual_coordinate_residual", "network_residuals",
]
