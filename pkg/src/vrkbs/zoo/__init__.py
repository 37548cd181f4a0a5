"""Concrete vector-valued RKBS families."""

from vrkbs.zoo.scalar_kernels import GaussianKernel, LinearKernel, Poly2Kernel, make_kernel
from vrkbs.zoo.sensing import SensingMatrixSpace, schatten_norm
from vrkbs.zoo.tensor import SingularKernelError, TensorProductSpace
from vrkbs.zoo.translation import TranslationInvariantSpace, trapezoid_grid

__all__ = [
    "GaussianKernel", "LinearKernel", "Poly2Kernel", "make_kernel",
    "SensingMatrixSpace", "schatten_norm",
    "SingularKernelError", "TensorProductSpace",
    "TranslationInvariantSpace", "trapezoid_grid",
]
