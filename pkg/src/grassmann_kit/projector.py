"""Grassmann geometry in the projector perspective (n x n matrices).

A point is an orthogonal projector ``P`` of rank p; a tangent vector is a
symmetric ``Delta`` with ``Delta P + P Delta = Delta``. These routines cost
O(n^3) and are meant for small n and for cross-checking the Stiefel routines.
"""

import numpy as np

from ._validation import as_matrix, as_square, check_stiefel, check_symmetric
from .exceptions import DomainError, InvalidInputError
from .matcore import expm, logm_principal

#: Tolerance on the projector invariants (symmetry, idempotence, trace).
PROJ_TOL = 1e-9
#: Eigenvalues of a projector must lie within this distance of 0 or 1.
CLUSTER_TOL = 1e-6
#: sigma_min(U^T Y) at or below this puts F in the cut locus of P.
CUT_TOL = 1e-8
PLANE_TOL = 1e-12


def check_projector(P, name="P", tol=PROJ_TOL):
    """Validate the projector invariants and return ``(P, rank)``."""
    P = as_square(P, name)
    if np.linalg.norm(P - P.T) > tol:
        raise InvalidInputError(f"{name} is not symmetric")
    if np.linalg.norm(P @ P - P) > tol:
        raise InvalidInputError(f"{name} is not idempotent")
    tr = np.trace(P)
    p = int(round(tr))
    if abs(tr - p) > tol or p < 1 or p > P.shape[0]:
        raise InvalidInputError(f"{name} has trace {tr}, not a valid rank")
    return P, p


def check_tangent(P, Delta, name="Delta", tol=1e-8):
    """Validate ``Delta`` symmetric with ``Delta P + P Delta = Delta``."""
    Delta = check_symmetric(Delta, name, tol=tol)
    if Delta.shape != P.shape:
        raise InvalidInputError(f"{name} must have shape {P.shape}, got {Delta.shape}")
    err = np.linalg.norm(Delta @ P + P @ Delta - Delta)
    if err > tol * max(1.0, np.linalg.norm(Delta)):
        raise InvalidInputError(f"{name} is not tangent at P (residual {err:.3e})")
    return Delta


def from_onb(U):
    """Projector ``U U^T`` onto the column span of a Stiefel matrix."""
    U = check_stiefel(U)
    P = U @ U.T
    return 0.5 * (P + P.T)


def to_onb(P):
    """Orthonormal basis of ``range(P)`` from a symmetric eigendecomposition.

    Eigenvectors with eigenvalue above 0.5 are kept; every eigenvalue must lie
    within ``CLUSTER_TOL`` of 0 or 1.
    """
    P = check_symmetric(as_square(P, "P"), "P", tol=CLUSTER_TOL)
    w, V = np.linalg.eigh(0.5 * (P + P.T))
    off = np.minimum(np.abs(w), np.abs(w - 1.0))
    if off.size and off.max() > CLUSTER_TOL:
        raise InvalidInputError("P has eigenvalues away from {0, 1}; not a projector")
    keep = w > 0.5
    if not np.any(keep):
        raise InvalidInputError("P has rank zero")
    # eigh sorts ascending, so the kept block is contiguous at the end;
    # reverse it to list the eigenvectors in a stable order
    return V[:, keep][:, ::-1]


def tangent_project(P, S):
    """Orthogonal projection ``(I - P) S P + P S (I - P)`` of a symmetric ``S``."""
    P, _ = check_projector(P)
    S = check_symmetric(S, "S")
    if S.shape != P.shape:
        raise InvalidInputError(f"S must have shape {P.shape}, got {S.shape}")
    SP = S @ P
    X = SP - P @ SP  # (I - P) S P
    return X + X.T


def omega_of(P, Delta):
    """Skew generator ``Omega = [Delta, P]``."""
    return Delta @ P - P @ Delta


def delta_of(P, Omega):
    """Tangent vector ``Delta = [Omega, P]``; inverse of :func:`omega_of`."""
    return Omega @ P - P @ Omega


def exp_projector(P, Delta, t=1.0):
    """``expm(t [Delta, P]) P expm(-t [Delta, P])``."""
    P, _ = check_projector(P)
    Delta = check_tangent(P, Delta)
    if t == 0:
        return P.copy()
    Q = expm(t * omega_of(P, Delta))
    F = Q @ P @ Q.T
    return 0.5 * (F + F.T)


def log_projector(P, F):
    """Tangent ``[Omega, P]`` with ``Omega = 1/2 logm((I - 2F)(I - 2P))``.

    Raises DomainError when ``F`` is (numerically) in the cut locus of ``P``;
    use :func:`grassmann_kit.grassmann.log_extended` there.
    """
    P, p = check_projector(P)
    F, q = check_projector(F, "F")
    if F.shape != P.shape or p != q:
        raise InvalidInputError("P and F must be projectors of equal size and rank")
    U, Y = to_onb(P), to_onb(F)
    smin = np.linalg.svd(U.T @ Y, compute_uv=False).min()
    if smin <= CUT_TOL:
        raise DomainError(
            f"F lies in the cut locus of P (sigma_min(U^T Y) = {smin:.3e}); "
            "the principal matrix logarithm is undefined"
        )
    n = P.shape[0]
    I = np.eye(n)
    Omega = 0.5 * logm_principal((I - 2.0 * F) @ (I - 2.0 * P))
    Omega = 0.5 * (Omega - Omega.T)
    D = delta_of(P, Omega)
    return 0.5 * (D + D.T)


def parallel_transport_projector(P, Delta, Gamma, t=1.0):
    """Transport of ``Delta`` along ``t -> exp_projector(P, Gamma, t)``:
    ``expm(t [Gamma, P]) Delta expm(-t [Gamma, P])``."""
    P, _ = check_projector(P)
    Delta = check_tangent(P, Delta)
    Gamma = check_tangent(P, Gamma, "Gamma")
    Q = expm(t * omega_of(P, Gamma))
    out = Q @ Delta @ Q.T
    return 0.5 * (out + out.T)


def symmetry_at(P):
    """Geodesic symmetry at ``P``: ``F -> S F S`` with ``S = 2P - I``.

    ``S`` is the reflection that fixes ``range(P)`` and negates its complement,
    i.e. ``Q S0 Q^T`` for any eigenbasis ``Q`` of ``P``.
    """
    P, _ = check_projector(P)
    S = 2.0 * P - np.eye(P.shape[0])

    def sigma(F):
        F = as_square(F, "F")
        out = S @ F @ S
        return 0.5 * (out + out.T)

    return sigma


def exp_oracle_On(U, U_perp, B, t=1.0):
    """Reference exponential through the orthogonal group.

    Returns the first p columns of ``(U U_perp) expm(t [[0, -B^T], [B, 0]])``.
    Costs O(n^3); only for testing.
    """
    U = as_matrix(U, "U")
    U_perp = as_matrix(U_perp, "U_perp")
    B = as_matrix(B, "B")
    n, p = U.shape
    if U_perp.shape != (n, n - p) or B.shape != (n - p, p):
        raise InvalidInputError("need U_perp of shape (n, n-p) and B of shape (n-p, p)")
    X = np.zeros((n, n))
    X[p:, :p] = B
    X[:p, p:] = -B.T
    return np.hstack([U, U_perp]) @ expm(t * X)[:, :p]


def sectional_curvature_projector(P, D1, D2, plane_tol=PLANE_TOL):
    """``4 (tr(D1^2 D2^2) - tr((D1 D2)^2)) / (tr(D1^2) tr(D2^2) - tr(D1 D2)^2)``."""
    P, _ = check_projector(P)
    D1 = check_tangent(P, D1, "D1")
    D2 = check_tangent(P, D2, "D2")
    t11 = np.sum(D1 * D1)
    t22 = np.sum(D2 * D2)
    t12 = np.sum(D1 * D2)
    den = t11 * t22 - t12 * t12
    if t11 == 0.0 or t22 == 0.0 or den <= plane_tol * t11 * t22:
        raise InvalidInputError("tangent vectors span a degenerate plane")
    D12 = D1 @ D2
    num = 4.0 * (np.sum((D1 @ D1) * (D2 @ D2)) - np.sum(D12 * D12.T))
    return float(num / den)


__all__ = [
    "check_projector",
    "check_tangent",
    "delta_of",
    "exp_oracle_On",
    "exp_projector",
    "from_onb",
    "log_projector",
    "omega_of",
    "parallel_transport_projector",
    "sectional_curvature_projector",
    "symmetry_at",
    "tangent_project",
    "to_onb",
]
