"""Built-in invariant suites, runnable as ``grassmann-kit selftest``.

Each suite draws random instances from a seeded generator and checks one
family of identities. ``run_selftest`` accepts a replacement logarithm so a
deliberately broken implementation can be shown to fail.
"""

from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from . import charts, grassmann, jacobi, matcore, projector
from .stiefel import orthogonal_complement, random_stiefel

LEVELS = {"quick": 10, "full": 200}
SIZES = [(6, 2), (8, 3), (20, 5)]


@dataclass
class Failure:
    module: str
    invariant: str
    seed: int
    observed: float


@dataclass
class SuiteResult:
    name: str
    module: str
    checks: int = 0
    failures: List[Failure] = field(default_factory=list)

    def check(self, invariant, seed, observed, bound):
        self.checks += 1
        if not (observed <= bound):
            self.failures.append(Failure(self.module, invariant, seed, float(observed)))

    @property
    def passed(self):
        return not self.failures


@dataclass
class SelftestReport:
    level: str
    suites: List[SuiteResult]

    @property
    def passed(self):
        return all(s.passed for s in self.suites)

    def format(self):
        lines = []
        for s in self.suites:
            status = "PASS" if s.passed else "FAIL"
            lines.append(f"{status} {s.name}: {s.checks - len(s.failures)}/{s.checks} checks passed")
            for f in s.failures[:5]:
                lines.append(
                    f"  module={f.module} invariant={f.invariant} seed={f.seed} observed={f.observed:.3e}"
                )
        lines.append(f"selftest {self.level}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _instance(seed, scale=None):
    rng = np.random.default_rng(seed)
    n, p = SIZES[seed % len(SIZES)]
    U = random_stiefel(n, p, rng)
    D = grassmann.random_horizontal(U, rng)
    if scale is not None:
        D *= scale / np.linalg.norm(D, 2)
    return rng, U, D


def suite_round_trip(count, log_fn):
    res = SuiteResult("round-trip", "grassmann")
    for seed in range(count):
        rng, U, D = _instance(seed, scale=rng_scale(seed))
        Y = grassmann.exp(U, D)
        D2 = log_fn(U, Y)
        res.check("log(exp(D)) = D", seed, np.linalg.norm(D2 - D), 1e-9 * max(1.0, np.linalg.norm(D)))
        F = random_stiefel(U.shape[0], U.shape[1], rng)
        res.check("exp(log(F)) = F", seed, grassmann.distance(grassmann.exp(U, log_fn(U, F)), F), 1e-10)
    return res


def rng_scale(seed):
    return 0.1 + (np.pi / 2 - 0.2) * ((seed * 0.6180339887) % 1.0)


def suite_oracle(count):
    res = SuiteResult("oracle", "projector")
    for seed in range(count):
        _, U, D = _instance(seed, scale=rng_scale(seed))
        Up = orthogonal_complement(U)
        Y = grassmann.exp(U, D)
        Yo = projector.exp_oracle_On(U, Up, Up.T @ D)
        res.check("exp vs O(n) oracle", seed, grassmann.distance(Y, Yo), 1e-10)
        P = projector.from_onb(U)
        F = projector.exp_projector(P, grassmann.ambient(U, D))
        res.check("exp vs projector exp", seed, np.linalg.norm(F - Y @ Y.T), 1e-9)
        Dl = projector.log_projector(P, Y @ Y.T) @ U
        res.check("log_projector vs log_extended", seed, np.linalg.norm(Dl - grassmann.log(U, Y)), 1e-9)
    return res


def suite_curvature(count):
    res = SuiteResult("curvature", "grassmann")
    for seed in range(count):
        rng, U, D1 = _instance(seed)
        D2 = grassmann.random_horizontal(U, rng)
        K = grassmann.sectional_curvature(U, D1, D2)
        res.check("K >= 0", seed, -K, 1e-12)
        res.check("K <= 2", seed, K - 2.0, 1e-12)
        P = projector.from_onb(U)
        Kp = projector.sectional_curvature_projector(
            P, grassmann.ambient(U, D1), grassmann.ambient(U, D2)
        )
        res.check("K matches projector form", seed, abs(K - Kp), 1e-10)
    return res


def suite_transport(count):
    res = SuiteResult("transport", "grassmann")
    for seed in range(count):
        rng, U, G = _instance(seed, scale=1.0)
        D1 = grassmann.random_horizontal(U, rng)
        D2 = grassmann.random_horizontal(U, rng)
        T1 = grassmann.parallel_transport(U, G, D1, 0.7)
        T2 = grassmann.parallel_transport(U, G, D2, 0.7)
        res.check("isometry", seed, abs(np.sum(T1 * T2) - np.sum(D1 * D2)), 1e-10)
        Y = grassmann.exp(U, G, 0.7)
        res.check("horizontal at endpoint", seed, np.linalg.norm(Y.T @ T1), 1e-10)
    return res


def suite_derivatives(count):
    res = SuiteResult("derivatives", "jacobi")
    h = 1e-5
    for seed in range(count):
        rng, U, D = _instance(seed, scale=1.0)
        Dt = grassmann.random_horizontal(U, rng)
        r_qr = jacobi.dexp_qr(U, D, Dt)
        r_pr = jacobi.dexp_projector(U, D, Dt)
        res.check("qr vs projector route", seed, np.linalg.norm(r_qr.ambient - r_pr.ambient), 1e-8)
        Yp, Ym = grassmann.exp(U, D + h * Dt), grassmann.exp(U, D - h * Dt)
        fd = (Yp @ Yp.T - Ym @ Ym.T) / (2 * h)
        rel = np.linalg.norm(r_qr.ambient - fd) / np.linalg.norm(fd)
        res.check("dexp vs finite differences", seed, rel, 1e-6)
        X = rng.standard_normal((4, 4))
        E = rng.standard_normal((4, 4))
        fd = (matcore.expm(X + h * E) - matcore.expm(X - h * E)) / (2 * h)
        rel = np.linalg.norm(matcore.dexpm(X, E) - fd) / np.linalg.norm(fd)
        res.check("dexpm vs finite differences", seed, rel, 1e-6)
    return res


def suite_cut_locus(count):
    res = SuiteResult("cut-locus", "grassmann")
    for seed in range(count):
        rng, U, D = _instance(seed)
        Q, s, V = matcore.svd_compact(D)
        s = np.linspace(1.2, 0.3, s.size)
        s[0] = np.pi / 2
        F = grassmann.exp(U, (Q * s) @ V.T)
        fam = grassmann.cut_solutions(U, F)
        res.check("r >= 1", seed, 1 - fam.r, 0)
        dist = grassmann.distance(U, F)
        for _ in range(3):
            W, _ = np.linalg.qr(rng.standard_normal((fam.r, fam.r)))
            DW = fam.materialize(W)
            res.check("member reaches F", seed, grassmann.distance(grassmann.exp(U, DW), F), 1e-9)
            res.check("member length", seed, abs(np.linalg.norm(DW) - dist), 1e-10)
    return res


def suite_charts(count):
    res = SuiteResult("charts", "charts")
    for seed in range(count):
        rng = np.random.default_rng(seed)
        n, p = SIZES[seed % len(SIZES)]
        B = rng.standard_normal((n - p, p))
        B /= max(1.0, np.linalg.norm(B, 2))
        res.check("psi(phi(B)) = B", seed, np.linalg.norm(charts.psi(charts.phi(B)) - B), 1e-10)
    return res


def run_selftest(level="quick", log_fn: Callable = None):
    """Run every suite at ``level`` ('quick' or 'full') and return a report."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {sorted(LEVELS)}")
    count = LEVELS[level]
    log_fn = log_fn or grassmann.log
    suites = [
        suite_round_trip(count, log_fn),
        suite_oracle(count),
        suite_curvature(count),
        suite_transport(count),
        suite_derivatives(count),
        suite_cut_locus(count),
        suite_charts(count),
    ]
    return SelftestReport(level, suites)
