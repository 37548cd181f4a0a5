"""Scalar positive-definite kernels with explicit finite feature maps.

Each kernel exposes ``features(x)`` (a vector psi(x)) and evaluates
``k(x, y) = psi(x) . psi(y)``, so closed-form formulas built on ``k`` and the
generic feature-map machinery describe exactly the same space. Linear and
degree-2 polynomial kernels have exact finite features; the Gaussian kernel
uses the Nystrom features over a caller-supplied anchor set, which reproduce
the exact Gaussian kernel whenever one argument is an anchor.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ScalarKernel", "LinearKernel", "Poly2Kernel", "GaussianKernel", "make_kernel"]


class ScalarKernel:
    name = "kernel"

    def features(self, x) -> np.ndarray:
        raise NotImplementedError

    @property
    def feature_dim(self) -> int:
        raise NotImplementedError

    def __call__(self, x, y) -> float:
        return float(self.features(x) @ self.features(y))

    def params(self) -> dict:
        return {"kind": self.name}


class LinearKernel(ScalarKernel):
    """k(x, y) = c + x . y; the constant keeps k(x, x) > 0 at the origin."""

    name = "linear"

    def __init__(self, input_dim: int, offset: float = 1.0):
        if offset <= 0:
            raise ValueError("offset must be positive")
        self.input_dim = int(input_dim)
        self.offset = float(offset)

    @property
    def feature_dim(self):
        return self.input_dim + 1

    def features(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.concatenate([[np.sqrt(self.offset)], x])

    def params(self):
        return {"kind": self.name, "input_dim": self.input_dim, "offset": self.offset}


class Poly2Kernel(ScalarKernel):
    """k(x, y) = (1 + x . y)^2."""

    name = "poly2"

    def __init__(self, input_dim: int):
        self.input_dim = int(input_dim)
        self._iu = np.triu_indices(self.input_dim, 1)

    @property
    def feature_dim(self):
        d = self.input_dim
        return 1 + 2 * d + d * (d - 1) // 2

    def features(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        cross = np.sqrt(2.0) * np.outer(x, x)[self._iu]
        return np.concatenate([[1.0], np.sqrt(2.0) * x, x * x, cross])

    def params(self):
        return {"kind": self.name, "input_dim": self.input_dim}


class GaussianKernel(ScalarKernel):
    """exp(-||x - y||^2 / (2 h^2)) through Nystrom features on ``anchors``."""

    name = "gaussian"

    def __init__(self, anchors, bandwidth: float = 1.0, rtol: float = 1e-12):
        anchors = np.asarray(anchors, dtype=float)
        if anchors.ndim == 1:
            anchors = anchors[:, None]
        if bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        self.anchors = anchors
        self.bandwidth = float(bandwidth)
        gram = self.exact(anchors, anchors)
        vals, vecs = np.linalg.eigh(gram)
        keep = vals > rtol * vals.max()
        # psi(x) = diag(vals)^(-1/2) V^T k(anchors, x), spanning the anchor sections
        self._proj = (vecs[:, keep] / np.sqrt(vals[keep])).T

    def exact(self, x, y):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.atleast_2d(np.asarray(y, dtype=float))
        d2 = np.sum((x[:, None, :] - y[None, :, :]) ** 2, axis=-1)
        return np.exp(-d2 / (2.0 * self.bandwidth ** 2))

    @property
    def feature_dim(self):
        return self._proj.shape[0]

    def features(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self._proj @ self.exact(self.anchors, x[None, :])[:, 0]

    def params(self):
        return {"kind": self.name, "bandwidth": self.bandwidth,
                "anchors": self.anchors.tolist()}


def make_kernel(params: dict, input_dim: int | None = None) -> ScalarKernel:
    kind = params["kind"]
    if kind == "linear":
        return LinearKernel(params.get("input_dim", input_dim), params.get("offset", 1.0))
    if kind == "poly2":
        return Poly2Kernel(params.get("input_dim", input_dim))
    if kind == "gaussian":
        return GaussianKernel(params["anchors"], params.get("bandwidth", 1.0))
    raise ValueError(f"unknown scalar kernel {kind!r}")
