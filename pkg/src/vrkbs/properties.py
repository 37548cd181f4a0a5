"""Randomized checks of the basic reproducing-kernel inequalities and identities.

Each check returns a ``Check`` holding the two sides that were compared, so
reports can show margins rather than bare booleans. ``run_property_suite``
draws seeded random feature-map spaces and runs every check on each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from vrkbs.kernel import (FeatureMap, RkbsFunction, dual_section, evaluate, kernel_apply,
                          kernel_apply_via_duality, kernel_section, operator_norm,
                          random_feature_map, rkbs_norm, rkbs_sip)

# additive slack for inequalities, relative slack for identities
TOL_POSITIVE = 1e-12
TOL_SECTION_NORM = 1e-10
TOL_KERNEL_CS = 1e-10
TOL_OPNORM = 1e-8
TOL_HOMOGENEITY = 1e-12
TOL_DUAL_ADDITIVE = 1e-10
TOL_REPRODUCING = 1e-9
TOL_TWO_PATH = 1e-12


class Check(NamedTuple):
    name: str
    lhs: float
    rhs: float
    ok: bool


def _le(name, lhs, rhs, tol):
    # rhs is stored with its slack so that rhs - lhs is the true margin
    return Check(name, float(lhs), float(rhs + tol), bool(lhs <= rhs + tol))


def _close(name, err, scale, tol):
    return Check(name, float(err), float(tol * (1.0 + scale)), bool(err <= tol * (1.0 + scale)))


def instance_checks(fm: FeatureMap, x, y, xi, eta, rng: np.random.Generator) -> list[Check]:
    """All kernel properties for one (space, x, y, xi, eta) draw."""
    L, W = fm.output_space, fm.feature_space
    out = []

    kxx_xi = kernel_apply(fm, x, x, xi)
    kyy_eta = kernel_apply(fm, y, y, eta)
    kxy_xi = kernel_apply(fm, x, y, xi)
    diag_x = L.sip(kxx_xi, xi)
    diag_y = L.sip(kyy_eta, eta)
    sec = kernel_section(fm, x, xi)
    out.append(_le("diagonal nonnegative", -np.real(diag_x), 0.0, TOL_POSITIVE))
    out.append(_close("diagonal equals section norm squared",
                      abs(diag_x - sec.norm() ** 2), sec.norm() ** 2, TOL_SECTION_NORM))
    out.append(_le("kernel Cauchy-Schwarz", abs(L.sip(kxy_xi, eta)),
                   np.sqrt(abs(diag_x)) * np.sqrt(abs(diag_y)), TOL_KERNEL_CS))

    nxy = operator_norm(lambda v: kernel_apply(fm, x, y, v), L, rng)
    nxx = operator_norm(lambda v: kernel_apply(fm, x, x, v), L, rng)
    nyy = operator_norm(lambda v: kernel_apply(fm, y, y, v), L, rng)
    out.append(_le("operator norm bound", nxy, np.sqrt(nxx * nyy), TOL_OPNORM))
    out.append(_le("section norm bound", sec.norm(), np.sqrt(nxx) * L.norm(xi), TOL_OPNORM))

    alpha = rng.uniform(-3.0, 3.0)
    if L.complex:
        alpha = alpha + 1j * rng.uniform(-3.0, 3.0)
    hom = kernel_apply(fm, x, y, alpha * xi) - alpha * kxy_xi
    out.append(_close("homogeneity", L.norm(hom), abs(alpha) * L.norm(kxy_xi), TOL_HOMOGENEITY))

    tau = L.undual(L.dual(xi) + L.dual(eta))
    add = dual_section(fm, x, xi) + dual_section(fm, x, eta) - dual_section(fm, x, tau)
    scale = W.dual_space().norm(dual_section(fm, x, xi)) + W.dual_space().norm(dual_section(fm, x, eta))
    out.append(_close("dual additivity", W.dual_space().norm(add), scale, TOL_DUAL_ADDITIVE))

    f = RkbsFunction(_random_vector(rng, W), fm)
    g = RkbsFunction(_random_vector(rng, W), fm)
    fx = evaluate(f, x)
    rep = abs(L.sip(fx, xi) - rkbs_sip(f, sec.function()))
    out.append(_le("reproducing property", rep, 0.0, TOL_REPRODUCING))
    out.append(_le("pointwise convergence bound", L.norm(fx - evaluate(g, x)),
                   rkbs_norm(f - g) * np.sqrt(nxx), TOL_OPNORM))

    two = kernel_apply_via_duality(fm, x, y, xi)
    out.append(_close("two-path kernel", L.norm(two - kxy_xi), L.norm(kxy_xi), TOL_TWO_PATH))
    return out


def _random_vector(rng, space):
    v = rng.standard_normal(space.dim)
    if space.complex:
        v = v + 1j * rng.standard_normal(space.dim)
    return v


@dataclass
class SuiteReport:
    instances: int
    seed: int
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    worst_margin: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        return {
            "instances": self.instances,
            "seed": self.seed,
            "ok": self.ok,
            "checks": {k: {"passed": self.counts[k], "worst_margin": self.worst_margin[k]}
                       for k in sorted(self.counts)},
            "failures": [list(f) for f in self.failures],
        }


def run_property_suite(instances: int = 500, seed: int = 0,
                       exponents=(1.5, 2.0, 3.0, 4.0), input_dim: int = 2,
                       max_feature_dim: int = 8) -> SuiteReport:
    """Run ``instance_checks`` over seeded random spaces, points and directions."""
    rng = np.random.default_rng(seed)
    report = SuiteReport(instances, seed)
    for i in range(instances):
        fm = random_feature_map(rng, input_dim=input_dim, exponents=exponents,
                                max_feature_dim=max_feature_dim,
                                weighted=bool(i % 3 == 2))
        x, y = rng.standard_normal(input_dim), rng.standard_normal(input_dim)
        xi = _random_vector(rng, fm.output_space)
        eta = _random_vector(rng, fm.output_space)
        for c in instance_checks(fm, x, y, xi, eta, rng):
            report.counts.setdefault(c.name, 0)
            margin = c.rhs - c.lhs
            report.worst_margin[c.name] = min(report.worst_margin.get(c.name, np.inf), margin)
            if c.ok:
                report.counts[c.name] += 1
            else:
                report.failures.append((i, c.name, c.lhs, c.rhs))
    return report
