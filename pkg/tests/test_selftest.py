import numpy as np

from grassmann_kit import grassmann as g
from grassmann_kit.matcore import svd_compact
from grassmann_kit.selftest import run_selftest


def mutated_log(U, Y):
    """Alignment step with a flipped sign: Y* = -Y Q R^T."""
    Qt, _, Rt = svd_compact(Y.T @ U)
    Ystar = -Y @ (Qt @ Rt.T)
    Qh, Sh, R = svd_compact(Ystar - U @ (U.T @ Ystar))
    return (Qh * np.arcsin(np.clip(Sh, 0, 1))) @ R.T


def test_quick_passes():
    report = run_selftest("quick")
    assert report.passed
    assert {s.name for s in report.suites} >= {"round-trip", "oracle", "cut-locus"}
    text = report.format()
    assert "checks passed" in text and text.endswith("PASS")


def test_mutation_is_caught():
    report = run_selftest("quick", log_fn=mutated_log)
    bad = {s.name for s in report.suites if not s.passed}
    assert bad == {"round-trip"}
    assert "FAIL" in report.format()
    f = next(s for s in report.suites if s.name == "round-trip").failures[0]
    assert f.module == "grassmann" and f.observed > 1e-3
