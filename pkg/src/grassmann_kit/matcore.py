"""Dense linear-algebra kernels: SVD/QR with fixed conventions, matrix exp/log,
and first-order derivatives of the SVD, the QR decomposition and expm.

All functions are pure and operate on real float64 arrays.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

from ._validation import as_matrix, as_square
from .exceptions import DomainError, IllPosedError, InvalidInputError, RankDeficiencyError

#: Relative singular-value separation below which ``dsvd`` refuses to differentiate.
SEP_TOL = 1e-8


class SvdFactors(NamedTuple):
    """Compact SVD ``M = U @ diag(S) @ V.T`` with ``k = min(m, n)`` columns."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray


class QrFactors(NamedTuple):
    """Thin QR ``M = Q @ R`` with ``R`` upper triangular and ``diag(R) >= 0``."""

    Q: np.ndarray
    R: np.ndarray


def svd_compact(M, order="descending"):
    """Compact SVD of an m x n matrix.

    Parameters
    ----------
    M : array_like, shape (m, n)
    order : {"descending", "ascending"}
        Ordering of the singular values.

    Returns
    -------
    SvdFactors
        ``U`` (m x k), ``S`` (k,), ``V`` (n x k) with ``k = min(m, n)``.
    """
    M = as_matrix(M, "M")
    if order not in ("descending", "ascending"):
        raise InvalidInputError(f"order must be 'descending' or 'ascending', got {order!r}")
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    V = Vt.T
    if order == "ascending":
        U, S, V = U[:, ::-1], S[::-1], V[:, ::-1]
    return SvdFactors(U, S, V)


def qr_thin(M, rank_tol=None):
    """Thin QR decomposition with nonnegative diagonal of ``R``.

    Raises RankDeficiencyError when some ``|R_ii|`` falls below
    ``rank_tol * max|R_jj|`` (default ``max(n, r) * eps``).
    """
    M = as_matrix(M, "M")
    n, r = M.shape
    if r > n:
        raise RankDeficiencyError(f"M with shape {M.shape} cannot have full column rank")
    Q, R = np.linalg.qr(M, mode="reduced")
    signs = np.where(np.diag(R) < 0, -1.0, 1.0)
    Q = Q * signs
    R = signs[:, None] * R
    if rank_tol is None:
        rank_tol = max(n, r) * np.finfo(float).eps
    d = np.abs(np.diag(R))
    if r and (d.max() == 0.0 or d.min() <= rank_tol * d.max()):
        raise RankDeficiencyError("M is rank deficient within tolerance")
    return QrFactors(Q, R)


def expm(X):
    """Matrix exponential (scaling and squaring with a Pade approximant)."""
    X = as_square(X, "X")
    return scipy.linalg.expm(X)


def _negative_real_eigenvalues(X, tol):
    ev = np.linalg.eigvals(X)
    scale = max(1.0, np.max(np.abs(ev)) if ev.size else 1.0)
    on_axis = (np.abs(ev.imag) <= tol * scale) & (ev.real <= tol * scale)
    return ev[on_axis]


def logm_principal(X, tol=1e-8):
    """Principal matrix logarithm of a real matrix.

    Raises DomainError if ``X`` has an eigenvalue on the closed negative real
    axis (within ``tol``), where the principal branch is undefined.
    """
    X = as_square(X, "X")
    bad = _negative_real_eigenvalues(X, tol)
    if bad.size:
        raise DomainError(
            f"matrix has eigenvalue(s) on the closed negative real axis: {bad[:3]}"
        )
    L = scipy.linalg.logm(X)
    if np.iscomplexobj(L):
        if np.max(np.abs(L.imag), initial=0.0) > 1e-8 * max(1.0, np.max(np.abs(L.real))):
            raise DomainError("principal logarithm of the input is not real")
        L = L.real
    return L


def dsvd(Y, Ydot, factors=None, sep_tol=SEP_TOL):
    """Derivative of the compact SVD along ``Y + t*Ydot`` at ``t = 0``.

    Requires ``n >= p`` and mutually distinct, non-zero singular values
    (separation and magnitude at least ``sep_tol * sigma_max``).

    Returns
    -------
    (Udot, Sdot, Vdot) matching the factors of ``svd_compact(Y)`` (or
    ``factors`` if given).
    """
    Y = as_matrix(Y, "Y")
    Ydot = as_matrix(Ydot, "Ydot")
    if Y.shape != Ydot.shape:
        raise InvalidInputError(f"shape mismatch: Y {Y.shape}, Ydot {Ydot.shape}")
    n, p = Y.shape
    if p > n:
        raise InvalidInputError("dsvd requires a tall or square matrix (n >= p)")
    U, s, V = factors if factors is not None else svd_compact(Y)
    smax = s.max() if s.size else 0.0
    gaps = np.abs(np.subtract.outer(s, s))[~np.eye(p, dtype=bool)]
    if smax == 0.0 or s.min() <= sep_tol * smax or (gaps.size and gaps.min() <= sep_tol * smax):
        raise IllPosedError("singular values are not mutually distinct and non-zero")

    K = U.T @ Ydot @ V
    sdot = np.diag(K).copy()
    denom = np.subtract.outer(s**2, s**2).T  # (s_j^2 - s_i^2) at [i, j]
    np.fill_diagonal(denom, 1.0)
    Gamma = (s[:, None] * K + s[None, :] * K.T) / denom
    np.fill_diagonal(Gamma, 0.0)

    Vdot = V @ Gamma
    Udot = (Ydot @ V + U @ (s[:, None] * Gamma - np.diag(sdot))) / s
    return Udot, sdot, Vdot


def dqr(Y, Ydot, factors=None):
    """Derivative of the thin QR decomposition along ``Y + t*Ydot``.

    Returns ``(Qdot, Rdot)`` where ``Rdot`` is upper triangular and
    ``Q.T @ Qdot`` is skew-symmetric.
    """
    Y = as_matrix(Y, "Y")
    Ydot = as_matrix(Ydot, "Ydot")
    if Y.shape != Ydot.shape:
        raise InvalidInputError(f"shape mismatch: Y {Y.shape}, Ydot {Ydot.shape}")
    Q, R = factors if factors is not None else qr_thin(Y)
    # Ydot R^{-1} via a triangular solve: X R = Ydot  <=>  R^T X^T = Ydot^T
    YdRinv = scipy.linalg.solve_triangular(R, Ydot.T, trans="T", lower=False).T
    L = np.tril(Q.T @ YdRinv, k=-1)
    X = L - L.T
    Rdot = Q.T @ Ydot - X @ R
    Qdot = YdRinv - Q @ (Q.T @ YdRinv) + Q @ X
    return Qdot, np.triu(Rdot)


def dexpm(X, E):
    """Directional derivative ``d/dt expm(X + t E)`` at ``t = 0``.

    Read off the upper-right block of ``expm([[X, E], [0, X]])``.
    """
    X = as_square(X, "X")
    E = as_square(E, "E")
    if X.shape != E.shape:
        raise InvalidInputError(f"shape mismatch: X {X.shape}, E {E.shape}")
    n = X.shape[0]
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = X
    block[n:, n:] = X
    block[:n, n:] = E
    return scipy.linalg.expm(block)[:n, n:]
