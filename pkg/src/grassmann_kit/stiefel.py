"""Stiefel-manifold layer: representatives, tangent/horizontal projections,
the canonical metric and orthogonal completion."""

import numpy as np

from ._validation import ORTH_TOL, as_matrix, check_stiefel, check_tangent_shape
from .exceptions import InvalidInputError
from .matcore import qr_thin


def is_stiefel(U, tol=ORTH_TOL):
    """True if ``U`` has orthonormal columns to ``tol`` in Frobenius norm."""
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[1] > U.shape[0]:
        return False
    return bool(np.linalg.norm(U.T @ U - np.eye(U.shape[1])) <= tol)


def reorthonormalize(U):
    """Nearest-in-span orthonormal representative via thin QR (``diag(R) >= 0``)."""
    return qr_thin(as_matrix(U, "U")).Q


def random_stiefel(n, p, seed=None):
    """Haar-distributed point of St(n, p), deterministic in ``seed``.

    ``seed`` may be an int, a ``numpy.random.Generator`` or None.
    """
    if p > n or p < 1:
        raise InvalidInputError(f"need 1 <= p <= n, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    return qr_thin(rng.standard_normal((n, p))).Q


def project_tangent(U, X):
    """Project ``X`` onto the tangent space of St(n, p) at ``U``.

    ``X - U sym(U^T X)``; the result ``D`` satisfies ``U^T D + D^T U = 0``.
    """
    U = as_matrix(U, "U")
    X = check_tangent_shape(U, X, "X")
    UtX = U.T @ X
    return X - 0.5 * U @ (UtX + UtX.T)


def project_horizontal(U, Z):
    """Project ``Z`` onto the horizontal space ``{D : U^T D = 0}``."""
    U = as_matrix(U, "U")
    Z = check_tangent_shape(U, Z, "Z")
    return Z - U @ (U.T @ Z)


def canonical_metric(U, D1, D2):
    """Canonical metric ``tr(D1^T (I - U U^T / 2) D2)`` on T_U St(n, p)."""
    U = as_matrix(U, "U")
    D1 = check_tangent_shape(U, D1, "D1")
    D2 = check_tangent_shape(U, D2, "D2")
    return float(np.sum(D1 * D2) - 0.5 * np.sum((U.T @ D1) * (U.T @ D2)))


def orthogonal_complement(U):
    """An n x (n-p) matrix ``U_perp`` with ``(U, U_perp)`` orthogonal.

    Only the span of the result is canonical; callers should rely on the
    completion identities, not on particular columns.
    """
    U = check_stiefel(U)
    n, p = U.shape
    Qfull, _ = np.linalg.qr(U, mode="complete")
    Uperp = Qfull[:, p:]
    # One Gram-Schmidt sweep against U tightens orthogonality to machine level.
    Uperp = Uperp - U @ (U.T @ Uperp)
    if n - p:
        Uperp, _ = np.linalg.qr(Uperp)
    return Uperp
