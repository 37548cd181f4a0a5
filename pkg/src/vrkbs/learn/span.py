"""Linear algebra on the span of dual kernel sections."""

from __future__ import annotations

import numpy as np

from vrkbs.kernel import FeatureMap


def stacked_adjoint(space: FeatureMap, points):
    """Columns Phi(x_j)^* e_l for all j, l: the map (eta_j^*)_j -> sum_j Phi(x_j)^* eta_j^*."""
    return np.concatenate([space.adjoint(x) for x in points], axis=1)


def span_coefficients(B, target):
    """Least squares coefficients c of target in the column span of B, and the residual."""
    c, *_ = np.linalg.lstsq(B, target, rcond=None)
    return c, float(np.linalg.norm(B @ c - target))
