"""Local coordinates on Gr(n, p): the affine chart pair (phi, psi) and normal coordinates.

Coordinates are (n-p) x p matrices ``B``. ``phi(B)`` is the projector onto
the column span of ``[I_p; B]``; ``psi`` inverts it on projectors whose
upper-left p x p block is invertible.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from ._validation import as_matrix, as_square
from .exceptions import InvalidInputError, OutOfChartError
from .grassmann import exp
from .projector import check_projector
from .stiefel import orthogonal_complement

#: psi rejects projectors whose upper-left block has condition number above 1 / CHART_TOL.
CHART_TOL = 1e-8


@dataclass(frozen=True)
class ChartBall:
    """Domain of an affine chart.

    Parameters
    ----------
    radius : float
        Bound on the spectral norm of admissible coordinates ``B``.
    Q : ndarray of shape (n, n), optional
        Orthogonal matrix moving the chart center from ``P0 = diag(I_p, 0)``
        to ``Q P0 Q^T``. None means the identity.
    """

    radius: float = np.inf
    Q: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidInputError("chart radius must be positive")
        if self.Q is not None:
            Q = as_square(self.Q, "Q")
            if np.linalg.norm(Q.T @ Q - np.eye(Q.shape[0])) > 1e-10:
                raise InvalidInputError("Q must be orthogonal")

    def center(self, n, p):
        P0 = np.zeros((n, n))
        P0[:p, :p] = np.eye(p)
        return P0 if self.Q is None else self.Q @ P0 @ self.Q.T


def phi(B, chart=None):
    """Projector ``[I; B] (I + B^T B)^{-1} [I, B^T]``, moved by ``chart.Q``."""
    chart = chart or ChartBall()
    B = as_matrix(B, "B")
    m, p = B.shape
    n = m + p
    if np.isfinite(chart.radius) and np.linalg.norm(B, 2) >= chart.radius:
        raise InvalidInputError("B lies outside the chart ball")
    if chart.Q is not None and chart.Q.shape != (n, n):
        raise InvalidInputError(f"chart rotation must be {n} x {n}")
    M = np.vstack([np.eye(p), B])
    G = scipy.linalg.cho_factor(np.eye(p) + B.T @ B)
    P = M @ scipy.linalg.cho_solve(G, M.T)
    if chart.Q is not None:
        P = chart.Q @ P @ chart.Q.T
    return 0.5 * (P + P.T)


def psi(P, chart=None):
    """Chart coordinates ``B A^{-1}`` of a projector with blocks ``[[A, B^T], [B, C]]``.

    Raises OutOfChartError when ``A`` is singular or too ill-conditioned.
    """
    chart = chart or ChartBall()
    P, p = check_projector(P)
    n = P.shape[0]
    if chart.Q is not None:
        if chart.Q.shape != (n, n):
            raise InvalidInputError(f"chart rotation must be {n} x {n}")
        P = chart.Q.T @ P @ chart.Q
    A, Bb = P[:p, :p], P[p:, :p]
    if np.linalg.cond(A) > 1.0 / CHART_TOL:
        raise OutOfChartError("projector is not covered by this chart (singular upper-left block)")
    B = scipy.linalg.solve(A, Bb.T, assume_a="sym").T
    if np.isfinite(chart.radius) and np.linalg.norm(B, 2) >= chart.radius:
        raise OutOfChartError("chart coordinates exceed the chart radius")
    return B


def normal_coords(U, B, U_perp=None):
    """Projector of ``Exp_U(U_perp B)``: normal coordinates centered at ``[U]``."""
    U = as_matrix(U, "U")
    if U_perp is None:
        U_perp = orthogonal_complement(U)
    B = as_matrix(B, "B")
    n, p = U.shape
    if B.shape != (n - p, p):
        raise InvalidInputError(f"B must have shape {(n - p, p)}, got {B.shape}")
    Y = exp(U, U_perp @ B)
    P = Y @ Y.T
    return 0.5 * (P + P.T)


__all__ = ["CHART_TOL", "ChartBall", "normal_coords", "phi", "psi"]
