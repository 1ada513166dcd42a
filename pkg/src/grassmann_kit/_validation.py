"""Input validation helpers used across the package."""

import numpy as np

from .exceptions import InvalidInputError

#: Orthonormality tolerance for Stiefel representatives, ||U^T U - I||_F.
ORTH_TOL = 1e-10


def as_matrix(X, name="X"):
    """Return ``X`` as a finite 2-D float array or raise InvalidInputError."""
    A = np.asarray(X, dtype=float)
    if A.ndim != 2:
        raise InvalidInputError(f"{name} must be a 2-D array, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return A


def as_square(X, name="X"):
    A = as_matrix(X, name)
    if A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {A.shape}")
    return A


def check_same_shape(A, B, names=("A", "B")):
    if A.shape != B.shape:
        raise InvalidInputError(
            f"shape mismatch: {names[0]} is {A.shape}, {names[1]} is {B.shape}"
        )


def check_stiefel(U, name="U", tol=ORTH_TOL):
    """Validate that ``U`` is n x p with orthonormal columns and p <= n."""
    U = as_matrix(U, name)
    n, p = U.shape
    if p > n or p == 0:
        raise InvalidInputError(f"{name} must satisfy 0 < p <= n, got shape {U.shape}")
    err = np.linalg.norm(U.T @ U - np.eye(p))
    if err > tol:
        raise InvalidInputError(
            f"{name} does not have orthonormal columns: ||U^T U - I||_F = {err:.3e} > {tol:.1e}"
        )
    return U


def check_tangent_shape(U, D, name="D"):
    D = as_matrix(D, name)
    if D.shape != U.shape:
        raise InvalidInputError(f"{name} must have shape {U.shape}, got {D.shape}")
    return D


def check_horizontal(U, D, name="D", tol=1e-8):
    """Validate that ``D`` is a horizontal tangent at ``U`` (``U^T D = 0``)."""
    D = check_tangent_shape(U, D, name)
    scale = max(1.0, np.linalg.norm(D))
    err = np.linalg.norm(U.T @ D)
    if err > tol * scale:
        raise InvalidInputError(f"{name} is not horizontal at U: ||U^T D||_F = {err:.3e}")
    return D


def check_symmetric(S, name="S", tol=1e-10):
    S = as_square(S, name)
    err = np.linalg.norm(S - S.T)
    if err > tol * max(1.0, np.linalg.norm(S)):
        raise InvalidInputError(f"{name} is not symmetric: ||S - S^T||_F = {err:.3e}")
    return S
