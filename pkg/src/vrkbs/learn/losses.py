"""Loss functions phi: R+ -> R+ and power regularizers Psi(t) = t^sigma.

Besides value and derivative, losses and regularizers expose
``ratio(t) = f'(t) / t`` with the convention 0/0 := 0, which is the form the
gradient and the optimality conditions use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LossSpec", "RegularizerSpec", "square_loss", "power_loss", "eps_insensitive_loss"]


@dataclass(frozen=True)
class LossSpec:
    kind: str
    exponent: float = 2.0
    eps: float = 0.0
    smoothing: float = 0.0

    def __post_init__(self):
        if self.kind in ("square", "power"):
            if self.kind == "square" and self.exponent != 2.0:
                raise ValueError("square loss has exponent 2")
            if self.exponent < 2.0:
                raise ValueError("power losses need exponent >= 2")
        elif self.kind == "eps":
            if self.eps <= 0:
                raise ValueError("eps-insensitive loss needs eps > 0")
            if self.smoothing < 0:
                raise ValueError("smoothing must be nonnegative")
        else:
            raise ValueError(f"unknown loss kind {self.kind!r}")

    @property
    def differentiable(self) -> bool:
        return self.kind != "eps" or self.smoothing > 0

    def value(self, t, exact: bool = False):
        t = np.asarray(t, dtype=float)
        if self.kind != "eps":
            return t ** self.exponent
        e, mu = self.eps, self.smoothing
        if exact or mu == 0:
            return np.maximum(t - e, 0.0)
        # quadratic knee of width mu joining 0 and the slope-1 branch
        return np.where(t <= e, 0.0,
                        np.where(t <= e + mu, (t - e) ** 2 / (2.0 * mu), t - e - mu / 2.0))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind != "eps":
            return self.exponent * t ** (self.exponent - 1.0)
        if not self.differentiable:
            raise ValueError("the exact eps-insensitive loss is not differentiable; set smoothing > 0")
        e, mu = self.eps, self.smoothing
        return np.where(t <= e, 0.0, np.where(t <= e + mu, (t - e) / mu, 1.0))

    def ratio(self, t):
        """phi'(t) / t with 0/0 := 0."""
        t = np.asarray(t, dtype=float)
        if self.kind != "eps":
            k = self.exponent
            if k == 2.0:
                return np.full_like(t, 2.0)
            return k * t ** (k - 2.0)
        d = self.derivative(t)
        out = np.zeros_like(t)
        nz = t > 0
        out[nz] = d[nz] / t[nz]
        return out

    def to_dict(self):
        if self.kind == "eps":
            return {"kind": "eps", "eps": self.eps, "smoothing": self.smoothing}
        return {"kind": self.kind, "exponent": self.exponent}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], float(d.get("exponent", 2.0)), float(d.get("eps", 0.0)),
                   float(d.get("smoothing", 0.0)))


def square_loss() -> LossSpec:
    return LossSpec("square")


def power_loss(exponent) -> LossSpec:
    return LossSpec("power", float(exponent))


def eps_insensitive_loss(eps, smoothing) -> LossSpec:
    return LossSpec("eps", eps=float(eps), smoothing=float(smoothing))


@dataclass(frozen=True)
class RegularizerSpec:
    """Psi(t) = t^sigma. sigma = 1 is only accepted with ``allow_linear``."""

    sigma: float = 2.0
    allow_linear: bool = False

    def __post_init__(self):
        if self.sigma < 1.0 or (self.sigma == 1.0 and not self.allow_linear):
            raise ValueError("regularizer exponent must exceed 1")

    def value(self, t):
        return float(t) ** self.sigma

    def derivative(self, t):
        t = float(t)
        if self.sigma == 1.0:
            return 1.0
        return self.sigma * t ** (self.sigma - 1.0)

    def ratio(self, t):
        """Psi'(t) / t, with 0/0 := 0 at t = 0 for sigma != 2."""
        t = float(t)
        if self.sigma == 2.0:
            return 2.0
        if t == 0.0:
            return 0.0
        return self.sigma * t ** (self.sigma - 2.0)

    def to_dict(self):
        return {"sigma": self.sigma}
