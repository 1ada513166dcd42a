"""Accuracy of Grassmann logarithms close to the cut locus.

For each trial a random ``U`` and a horizontal ``D`` with largest singular
value pi/2 are drawn, so ``Exp_U(D)`` lies in the cut locus. The target
``U1(tau) = Exp_U((1 - tau) D)`` approaches it as ``tau -> 0``. Each log
method is applied to ``(U, U1)``, the result is mapped back with ``exp`` and
the subspace error to ``U1`` is measured with the clamped-arccos distance.
"""

import csv
import io as _io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from .exceptions import DomainError, InvalidInputError
from .grassmann import exp, log_extended, random_horizontal
from .stiefel import project_horizontal, random_stiefel

METHODS = ("extended-log", "standard-log", "standard-log-projected")
CSV_FIELDS = ("trial", "tau", "method", "error_rad", "ms")
THREADS_ENV = "GRASSMANN_KIT_THREADS"


def standard_log(U, Y, project=False):
    """Classical Grassmann logarithm through ``(U^T Y)^{-1}``.

    ``M = (I - U U^T) Y (U^T Y)^{-1}`` with thin SVD ``Q S V^T`` gives
    ``Q arctan(S) V^T``. With ``project=True`` the result is additionally
    projected onto the horizontal space. Kept as a baseline; it is
    inaccurate near the cut locus and fails on it.
    """
    U = np.asarray(U, dtype=float)
    Y = np.asarray(Y, dtype=float)
    UtY = U.T @ Y
    try:
        M = np.linalg.solve(UtY.T, (Y - U @ UtY).T).T
    except np.linalg.LinAlgError:
        raise DomainError("U^T Y is singular: the points are cut points") from None
    if not np.all(np.isfinite(M)):
        raise DomainError("U^T Y is singular: the points are cut points")
    Q, s, Vt = np.linalg.svd(M, full_matrices=False)
    D = (Q * np.arctan(s)) @ Vt
    if project:
        D = project_horizontal(U, D)
    return D


def subspace_error(Y, Z):
    """Clamped-arccos subspace distance without orthonormality checks.

    The unprojected baseline can return non-horizontal tangents whose
    exponential is no longer orthonormal; the error must still be measurable.
    """
    s = np.linalg.svd(np.asarray(Y).T @ np.asarray(Z), compute_uv=False)
    return float(np.linalg.norm(np.arccos(np.clip(s, -1.0, 1.0))))


def _run_log(method, U, Y):
    if method == "extended-log":
        return log_extended(U, Y).delta
    if method == "standard-log":
        return standard_log(U, Y)
    if method == "standard-log-projected":
        return standard_log(U, Y, project=True)
    raise InvalidInputError(f"unknown method {method!r}")


@dataclass
class ExperimentConfig:
    n: int = 100
    p: int = 20
    tau_min: float = 1e-16
    tau_max: float = 1.0
    tau_steps: int = 60
    trials: int = 10
    seed: int = 0
    method: str = "all"
    tau_grid: Optional[List[float]] = field(default=None)

    def __post_init__(self):
        if not (1 <= self.p < self.n):
            raise InvalidInputError(f"need 1 <= p < n, got n={self.n}, p={self.p}")
        if self.trials < 1:
            raise InvalidInputError("trials must be at least 1")
        if self.method != "all" and self.method not in METHODS:
            raise InvalidInputError(f"method must be 'all' or one of {METHODS}")
        if self.tau_grid is None:
            if not (0 < self.tau_min <= self.tau_max) or self.tau_steps < 1:
                raise InvalidInputError("need 0 < tau_min <= tau_max and tau_steps >= 1")
            self.tau_grid = list(
                np.logspace(np.log10(self.tau_min), np.log10(self.tau_max), self.tau_steps)
            )
            if self.tau_steps == 1:
                self.tau_grid = [float(self.tau_max)]
        self.tau_grid = [float(t) for t in self.tau_grid]

    @property
    def methods(self):
        return METHODS if self.method == "all" else (self.method,)


class ExperimentRecord(NamedTuple):
    trial: int
    tau: float
    method: str
    error_rad: float
    ms: float


def trial_instance(config, trial):
    """``(U, D)`` for one trial, with ``||D||_2 = pi/2``; depends only on (seed, trial)."""
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, trial]))
    U = random_stiefel(config.n, config.p, rng)
    D = random_horizontal(U, rng)
    D *= (np.pi / 2) / np.linalg.norm(D, 2)
    return U, D


def run_trial(config, trial):
    U, D = trial_instance(config, trial)
    records = []
    for tau in config.tau_grid:
        U1 = exp(U, (1.0 - tau) * D)
        for method in config.methods:
            t0 = time.perf_counter()
            try:
                Delta = _run_log(method, U, U1)
                err = subspace_error(exp(U, Delta), U1)
            except DomainError:
                err = float("inf")
            ms = 1e3 * (time.perf_counter() - t0)
            records.append(ExperimentRecord(trial, tau, method, err, ms))
    return records


def thread_count(default=None):
    """Worker count from ``GRASSMANN_KIT_THREADS`` (falls back to ``default`` or the CPU count)."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            k = int(raw)
        except ValueError:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer") from None
        if k < 1:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer")
        return k
    return default or os.cpu_count() or 1


def run_experiment(config, threads=None):
    """All records for ``config``, sorted by trial, tau and method.

    Trials run concurrently on up to ``threads`` workers; the result does not
    depend on the worker count.
    """
    threads = min(threads or thread_count(), config.trials)
    if threads == 1:
        chunks = [run_trial(config, k) for k in range(config.trials)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda k: run_trial(config, k), range(config.trials)))
    order = {m: i for i, m in enumerate(METHODS)}
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.trial, r.tau, order[r.method]))
    return records


def max_error_by_method(records, tau_max=None):
    out = {}
    for r in records:
        if tau_max is None or r.tau <= tau_max:
            out[r.method] = max(out.get(r.method, 0.0), r.error_rad)
    return out


def records_to_csv(records, timing=True):
    """CSV text; ``timing=False`` blanks the ``ms`` column for reproducible output."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow(
            [r.trial, "%.17g" % r.tau, r.method, "%.17g" % r.error_rad, "%.3f" % r.ms if timing else ""]
        )
    return buf.getvalue()


def records_to_json(records, config):
    payload = {
        "command": "fig3",
        "n": config.n,
        "p": config.p,
        "seed": config.seed,
        "trials": config.trials,
        "methods": list(config.methods),
        "records": [r._asdict() for r in records],
        "max_error": max_error_by_method(records),
    }
    return json.dumps(payload, indent=2) + "\n"
