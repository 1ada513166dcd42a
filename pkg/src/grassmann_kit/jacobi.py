"""Differential of the Grassmann exponential and Jacobi fields.

Three routes compute ``d/ds Exp_U(D + s Dtilde)`` at ``s = 0``:

* ``dexp_svd``: differentiates the thin SVD of ``D`` (needs distinct,
  non-zero singular values),
* ``dexp_qr``: differentiates a thin QR of ``D`` and a 2p x 2p exponential
  (needs full column rank only),
* ``dexp_projector``: works with n x n generators and has no restriction.

Each returns a :class:`DexpResult` holding the ambient n x n tangent and the
horizontal lift at ``Y0 = exp(U, D)``.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

from ._validation import as_matrix, check_tangent_shape
from .exceptions import RankDeficiencyError
from .grassmann import exp
from .matcore import dqr, dsvd, qr_thin, svd_compact


class DexpResult(NamedTuple):
    ambient: np.ndarray
    lift: np.ndarray


def _result(gdot, Y0):
    # gdot: velocity of an orthonormal representative passing through Y0
    lift = gdot - Y0 @ (Y0.T @ gdot)
    return DexpResult(lift @ Y0.T + Y0 @ lift.T, lift)


def dexp_svd(U, D, Dtilde):
    """SVD route. Raises IllPosedError for clustered or zero singular values of ``D``."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    Dtilde = check_tangent_shape(U, Dtilde, "Dtilde")
    Q, s, V = svd_compact(D)
    Qd, sd, Vd = dsvd(D, Dtilde, factors=(Q, s, V))
    c, sn = np.cos(s), np.sin(s)
    # Y(s) = U V cos(S) + Q sin(S) spans Exp(D); Y0 = Y V^T
    Y = (U @ V) * c + Q * sn
    G = (U @ Vd) * c - (U @ V) * (sn * sd) + Qd * sn + Q * (c * sd)
    lift = (G - Y @ (Y.T @ G)) @ V.T
    Y0 = Y @ V.T
    return DexpResult(lift @ Y0.T + Y0 @ lift.T, lift)


def _skew_block(R):
    p = R.shape[0]
    M = np.zeros((2 * p, 2 * p))
    M[p:, :p] = R
    M[:p, p:] = -R.T
    return M


def dexp_qr(U, D, Dtilde):
    """QR route, O(n p^2). Raises RankDeficiencyError if ``D`` lacks full column rank."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    Dtilde = check_tangent_shape(U, Dtilde, "Dtilde")
    p = U.shape[1]
    Q, R = qr_thin(D, rank_tol=1e-12)
    Qd, Rd = dqr(D, Dtilde, factors=(Q, R))
    M, Md = _skew_block(R), _skew_block(Rd)
    big = np.zeros((4 * p, 4 * p))
    big[: 2 * p, : 2 * p] = M
    big[2 * p :, 2 * p :] = M
    big[: 2 * p, 2 * p :] = Md
    E = scipy.linalg.expm(big)
    E11, E21 = E[:p, :p], E[p : 2 * p, :p]
    D11, D21 = E[:p, 2 * p : 3 * p], E[p : 2 * p, 2 * p : 3 * p]
    Y0 = U @ E11 + Q @ E21
    gdot = Qd @ E21 + U @ D11 + Q @ D21
    return _result(gdot, Y0)


def dexp_projector(U, D, Dtilde):
    """Projector route through the 2n x 2n block exponential; no rank conditions."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    Dtilde = check_tangent_shape(U, Dtilde, "Dtilde")
    n = U.shape[0]
    P = U @ U.T
    # Omega = [Delta, P] = D U^T - U D^T for the ambient Delta = D U^T + U D^T
    Om = D @ U.T - U @ D.T
    Omt = Dtilde @ U.T - U @ Dtilde.T
    big = np.zeros((2 * n, 2 * n))
    big[:n, :n] = Om
    big[n:, n:] = Om
    big[:n, n:] = Omt
    E = scipy.linalg.expm(big)
    Qm, dQ = E[:n, :n], E[:n, n:]
    X = dQ @ P @ Qm.T
    amb = X + X.T
    Y0 = exp(U, D)
    return DexpResult(amb, amb @ Y0)


def dexp(U, D, Dtilde):
    """Differential of the exponential: QR route, projector route if ``D`` is rank deficient."""
    try:
        return dexp_qr(U, D, Dtilde)
    except RankDeficiencyError:
        return dexp_projector(U, D, Dtilde)


def jacobi_field(U, D1, D2, t):
    """Jacobi field along ``t -> Exp_U(t D1)`` with ``J(0) = 0`` and ``J'(0) = D2``.

    ``J(t) = dexp_{t D1}(t D2)``; the lift is taken at ``exp(U, D1, t)``.
    """
    U = as_matrix(U, "U")
    D1 = check_tangent_shape(U, D1, "D1")
    D2 = check_tangent_shape(U, D2, "D2")
    if t == 0:
        n = U.shape[0]
        return DexpResult(np.zeros((n, n)), np.zeros_like(U))
    return dexp(U, t * D1, t * D2)


__all__ = ["DexpResult", "dexp", "dexp_projector", "dexp_qr", "dexp_svd", "jacobi_field"]
