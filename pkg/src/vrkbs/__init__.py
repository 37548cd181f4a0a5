"""Vector-valued reproducing kernel Banach spaces from semi-inner products."""

from vrkbs._backend import BACKEND
from vrkbs.kernel import (
    FeatureMap,
    RkbsFunction,
    dual_section,
    generalized_adjoint_apply,
    kernel_apply,
    kernel_section,
)
from vrkbs.sip import LpSpace, ProductSpace, dualize, lp_norm, pairing, sip, undualize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FeatureMap", "RkbsFunction", "dual_section", "generalized_adjoint_apply",
    "kernel_apply", "kernel_section",
    "LpSpace", "ProductSpace", "dualize", "undualize", "lp_norm", "pairing", "sip",
]
