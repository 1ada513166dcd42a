"""Grassmann geometry in the ONB perspective.

Points of Gr(n, p) are represented by Stiefel matrices ``U`` (n x p,
orthonormal columns); tangent vectors by their horizontal lifts ``D`` with
``U.T @ D = 0``. Every routine costs O(n p^2).
"""

from typing import NamedTuple, Optional

import numpy as np

from ._validation import (
    as_matrix,
    check_horizontal,
    check_same_shape,
    check_stiefel,
    check_symmetric,
    check_tangent_shape,
)
from .exceptions import InvalidInputError
from .matcore import svd_compact
from .stiefel import project_horizontal, random_stiefel

#: Singular values of U^T Y at or below this count as right angles (cut locus)
#: and sines at or below it as zero angles.
CUT_TOL = 1e-8
#: Relative cutoff for the thin SVD of a tangent: sigma <= RANK_TOL * sigma_1 is dropped.
RANK_TOL = 1e-14
#: Subspace distance below which two representatives are treated as the same point.
EQ_TOL = 1e-9
#: Relative Gram-determinant threshold for a non-degenerate tangent plane.
PLANE_TOL = 1e-12


class GeodesicFactors(NamedTuple):
    """Thin SVD ``D = Qhat @ diag(sigma) @ V.T`` of a horizontal tangent at ``U``.

    Only the ``r`` non-negligible singular values are kept.
    """

    U: np.ndarray
    Qhat: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def r(self):
        return self.sigma.size


class LogResult(NamedTuple):
    """Output of :func:`log_extended`: the tangent and the aligned representative."""

    delta: np.ndarray
    ystar: np.ndarray


class Conjugacy(NamedTuple):
    conjugate: bool
    reason: Optional[str]


# ---------------------------------------------------------------------------
# Tangent vectors


def lift(U, Delta, tol=1e-8):
    """Horizontal lift ``Delta @ U`` of an ambient (n x n) tangent vector at ``U U^T``.

    ``Delta`` must be symmetric with ``Delta P + P Delta = Delta``.
    """
    U = check_stiefel(U)
    Delta = check_symmetric(Delta, "Delta", tol=tol)
    if Delta.shape[0] != U.shape[0]:
        raise InvalidInputError(f"Delta must be {U.shape[0]} x {U.shape[0]}")
    DU = Delta @ U
    # Delta P + P Delta - Delta, evaluated without forming P
    resid = DU @ U.T + U @ DU.T - Delta
    if np.linalg.norm(resid) > tol * max(1.0, np.linalg.norm(Delta)):
        raise InvalidInputError("Delta is not tangent to the Grassmannian at U U^T")
    return DU


def ambient(U, D):
    """Ambient n x n tangent ``D U^T + U D^T`` represented by the lift ``D``."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    return D @ U.T + U @ D.T


def metric(U, D1, D2):
    """Riemannian metric ``tr(D1^T D2)`` of two horizontal lifts at ``U``."""
    U = as_matrix(U, "U")
    D1 = check_horizontal(U, D1, "D1")
    D2 = check_horizontal(U, D2, "D2")
    return float(np.sum(D1 * D2))


def norm(U, D):
    return float(np.sqrt(metric(U, D, D)))


def random_horizontal(U, seed=None, norm=None):
    """Gaussian horizontal tangent at ``U``; rescaled to Frobenius ``norm`` if given."""
    rng = np.random.default_rng(seed)
    U = as_matrix(U, "U")
    D = project_horizontal(U, rng.standard_normal(U.shape))
    if norm is not None:
        D *= norm / np.linalg.norm(D)
    return D


def riemannian_gradient(U, egrad):
    """Horizontal lift of the Riemannian gradient from the Euclidean gradient
    of the lifted cost at ``U``: ``(I - U U^T) egrad``."""
    return project_horizontal(U, egrad)


def covariant_derivative(U, field, Y, h=1e-5):
    """Levi-Civita derivative of a vector field along the direction ``Y`` at ``U``.

    ``field`` maps an n x p matrix ``M`` (near ``U``, not necessarily
    orthonormal) to an n x p matrix extending the horizontal lift of the
    vector field. The directional derivative is taken by central differences
    with step ``h`` and then projected onto the horizontal space at ``U``.
    """
    U = check_stiefel(U)
    Y = check_tangent_shape(U, Y, "Y")
    d = (np.asarray(field(U + h * Y)) - np.asarray(field(U - h * Y))) / (2.0 * h)
    return project_horizontal(U, d)


# ---------------------------------------------------------------------------
# Exponential and geodesics


def geodesic_factors(U, D, rank_tol=RANK_TOL):
    """Thin SVD factors of the horizontal tangent ``D`` at ``U``."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    Q, s, V = svd_compact(D)
    if s.size == 0 or s[0] == 0.0:
        r = 0
    else:
        r = int(np.count_nonzero(s > rank_tol * s[0]))
    return GeodesicFactors(U, Q[:, :r], s[:r], V[:, :r])


def _exp_from_factors(f, t):
    U, Q, s, V = f
    if f.r == 0:
        return U.copy()
    c = np.cos(t * s) - 1.0
    sn = np.sin(t * s)
    # U V cos(tS) V^T + Q sin(tS) V^T + U (I - V V^T)
    return U + ((U @ V) * c + Q * sn) @ V.T


def exp(U, D, t=1.0):
    """Stiefel representative of ``Exp_{[U]}(t * D)``.

    Returns ``U V cos(tS) V^T + Q sin(tS) V^T + U (I - V V^T)`` from the thin
    SVD ``D = Q S V^T``; at ``t = 0`` this is exactly ``U``. ``D`` is used as
    given (no horizontal projection).
    """
    U = as_matrix(U, "U")
    return _exp_from_factors(geodesic_factors(U, D), float(t))


def geodesic_velocity(U, D, t=1.0):
    """``d/dt exp(U, D, t)``, the velocity of the representative curve."""
    U = as_matrix(U, "U")
    f = geodesic_factors(U, D)
    if f.r == 0:
        return np.zeros_like(U)
    _, Q, s, V = f
    return ((U @ V) * (-np.sin(t * s) * s) + Q * (np.cos(t * s) * s)) @ V.T


# ---------------------------------------------------------------------------
# Logarithm, angles, distance


def log_extended(U, Y):
    """Logarithm of ``[Y]`` at ``[U]`` that also works on the cut locus.

    Aligns ``Y`` to ``U`` by orthogonal Procrustes, splits the aligned
    representative into its components along ``span(U)`` and its complement,
    and reads the principal angles off the complement part via arcsin (angles
    above pi/4 are taken from the matching cosines instead, for accuracy).

    Returns
    -------
    LogResult
        ``delta``: horizontal lift at ``U`` with ``exp(U, delta) == ystar``;
        ``ystar``: the representative of ``[Y]`` closest to ``U``.

    Notes
    -----
    For cut points (some angle equal to pi/2) the minimizing tangent is not
    unique; the returned member depends on the SVD kernel. Use
    :func:`cut_solutions` for the whole family.
    """
    U = check_stiefel(U)
    Y = check_stiefel(Y, "Y")
    check_same_shape(U, Y, ("U", "Y"))
    Qh, Sigma, R, Ystar, _ = _aligned_factors(U, Y)
    return LogResult((Qh * Sigma) @ R.T, Ystar)


def _aligned_factors(U, Y):
    """Procrustes alignment and thin SVD of the complement part.

    Returns ``(Qhat, Sigma, R, Ystar, cos)`` with ``Sigma`` descending and
    ``cos`` the descending singular values of ``Y^T U``.
    """
    Qt, St, Rt = svd_compact(Y.T @ U)
    Ystar = Y @ (Qt @ Rt.T)
    Qh, Sh, R = svd_compact(Ystar - U @ (U.T @ Ystar))
    Sh = np.clip(Sh, 0.0, 1.0)
    # arcsin loses accuracy near pi/2; there the angle comes from the cosine.
    # U^T Ystar = Rt diag(St) Rt^T, so Sh[i]^2 + St[p-1-i]^2 = 1.
    cos_rev = np.clip(St[::-1], -1.0, 1.0)
    Sigma = np.where(Sh**2 < 0.5, np.arcsin(Sh), np.arccos(cos_rev))
    return Qh, Sigma, R, Ystar, St


def log(U, Y):
    """Horizontal lift of the Riemannian logarithm (see :func:`log_extended`)."""
    return log_extended(U, Y).delta


def principal_angles(U, Y):
    """Principal angles between ``span(U)`` and ``span(Y)``, ascending, in [0, pi/2].

    Small angles come from the sines (singular values of ``(I - U U^T) Y``),
    large ones from the cosines (singular values of ``U^T Y``, clamped to
    [-1, 1] before ``arccos``), which keeps both ends accurate.
    """
    U = check_stiefel(U)
    Y = check_stiefel(Y, "Y")
    check_same_shape(U, Y, ("U", "Y"))
    cos = np.clip(np.linalg.svd(U.T @ Y, compute_uv=False), -1.0, 1.0)  # descending
    sin = np.linalg.svd(Y - U @ (U.T @ Y), compute_uv=False)[::-1]  # ascending
    sin = np.clip(sin, 0.0, 1.0)
    theta = np.where(sin**2 < 0.5, np.arcsin(sin), np.arccos(cos))
    return np.sort(theta)


def distance(U, Y, method="accurate"):
    """Geodesic distance, the 2-norm of the principal angles.

    ``method="arccos"`` uses only clamped arccos of the cosines; its floor is
    about ``sqrt(eps)`` per angle near zero.
    """
    if method == "accurate":
        theta = principal_angles(U, Y)
    elif method == "arccos":
        U = check_stiefel(U)
        Y = check_stiefel(Y, "Y")
        check_same_shape(U, Y, ("U", "Y"))
        s = np.linalg.svd(U.T @ Y, compute_uv=False)
        theta = np.arccos(np.clip(s, -1.0, 1.0))
    else:
        raise InvalidInputError(f"unknown distance method {method!r}")
    return float(np.linalg.norm(theta))


def same_subspace(U, Y, tol=EQ_TOL):
    return distance(U, Y) <= tol


def cut_time(U, D):
    """``pi / (2 sigma_1)``; ``inf`` for the zero tangent."""
    U = as_matrix(U, "U")
    D = check_tangent_shape(U, D)
    s1 = np.linalg.norm(D, 2)
    return np.inf if s1 == 0.0 else float(np.pi / (2.0 * s1))


def in_cut_locus(U, Y, tol=CUT_TOL):
    """True iff the smallest singular value of ``U^T Y`` is at most ``tol``."""
    U = check_stiefel(U)
    Y = check_stiefel(Y, "Y")
    check_same_shape(U, Y, ("U", "Y"))
    return bool(np.linalg.svd(U.T @ Y, compute_uv=False).min() <= tol)


# ---------------------------------------------------------------------------
# Cut points: the family of minimizing geodesics


class CutSolutionFamily(NamedTuple):
    """All minimizing tangents from ``[U]`` to a point ``[Y]``.

    ``Qhat @ diag(sigma) @ R.T`` is the base member; the first ``r`` entries
    of ``sigma`` equal pi/2 and members are parameterized by ``W`` in O(r).
    """

    base: np.ndarray
    Qhat: np.ndarray
    sigma: np.ndarray
    R: np.ndarray
    r: int

    def materialize(self, W=None):
        return materialize(self, W)


def cut_solutions(U, Y, tol=CUT_TOL):
    """Describe every minimizing solution of ``Exp_{[U]}(D) = [Y]``.

    ``r`` counts the singular values of ``U^T Y`` at or below ``tol``; those
    angles are set to exactly pi/2. For ``r = 0`` the family has the single
    member ``base``.
    """
    U = check_stiefel(U)
    Y = check_stiefel(Y, "Y")
    check_same_shape(U, Y, ("U", "Y"))
    Qh, sigma, R, _, St = _aligned_factors(U, Y)
    r = int(np.count_nonzero(St <= tol))
    sigma[:r] = np.pi / 2
    return CutSolutionFamily((Qh * sigma) @ R.T, Qh, sigma, R, r)


def materialize(family, W=None, tol=1e-10):
    """The member ``Qhat diag(sigma) diag(W, I) R^T`` of a cut-solution family."""
    r = family.r
    if W is None:
        W = np.eye(r)
    W = np.atleast_2d(np.asarray(W, dtype=float)) if r else np.zeros((0, 0))
    if W.shape != (r, r):
        raise InvalidInputError(f"W must be {r} x {r}, got {W.shape}")
    if r and np.linalg.norm(W.T @ W - np.eye(r)) > tol:
        raise InvalidInputError("W is not orthogonal")
    p = family.sigma.size
    What = np.eye(p)
    What[:r, :r] = W
    return (family.Qhat * family.sigma) @ What @ family.R.T


# ---------------------------------------------------------------------------
# Parallel transport and curvature


def parallel_transport(U, Gamma, Delta, t=1.0):
    """Parallel transport of ``Delta`` along ``t -> exp(U, Gamma, t)``.

    Returns the horizontal lift at the representative ``exp(U, Gamma, t)``:
    ``(-U V sin(tS) Qh^T + Qh cos(tS) Qh^T + I - Qh Qh^T) Delta`` with
    ``Gamma = Qh S V^T`` the thin SVD.
    """
    U = as_matrix(U, "U")
    Delta = check_tangent_shape(U, Delta, "Delta")
    _, Q, s, V = geodesic_factors(U, Gamma)
    if s.size == 0:
        return Delta.copy()
    QtD = Q.T @ Delta
    return Delta + (U @ V) @ (-np.sin(t * s)[:, None] * QtD) + Q @ ((np.cos(t * s) - 1.0)[:, None] * QtD)


def sectional_curvature(U, D1, D2, plane_tol=PLANE_TOL):
    """Sectional curvature of the plane spanned by two horizontal lifts at ``U``.

    Uses only the p x p products ``D1^T D1``, ``D2^T D2`` and ``D1^T D2``.
    """
    U = as_matrix(U, "U")
    D1 = check_tangent_shape(U, D1, "D1")
    D2 = check_tangent_shape(U, D2, "D2")
    A11 = D1.T @ D1
    A22 = D2.T @ D2
    A12 = D1.T @ D2
    n1, n2, c = np.trace(A11), np.trace(A22), np.trace(A12)
    den = n1 * n2 - c * c
    if den <= plane_tol * n1 * n2 or n1 == 0.0 or n2 == 0.0:
        raise InvalidInputError("tangent vectors span a degenerate plane")
    # ||D2^T D1||^2 + ||D1 D2^T||^2 - 2 <D2^T D1, D1^T D2>
    num = np.sum(A12 * A12) + np.sum(A11 * A22) - 2.0 * np.sum(A12.T * A12)
    return float(num / den)


# ---------------------------------------------------------------------------
# Conjugate locus


def is_conjugate(U, Y, tol=CUT_TOL):
    """Whether ``[Y]`` lies in the conjugate locus of ``[U]``.

    With ``m = min(p, n - p)`` only the ``m`` largest principal angles are
    relevant (for ``p > n/2`` the remaining ``2p - n`` angles are always
    zero). The point is conjugate if two relevant angles coincide within
    ``tol``, or, when ``p != n/2``, if a relevant angle is zero.
    """
    U = as_matrix(U, "U")
    n, p = U.shape
    m = min(p, n - p)
    theta = principal_angles(U, Y)[p - m:]
    if p != n - p and m and theta[0] <= tol:
        return Conjugacy(True, "zero-angle")
    if m >= 2 and np.min(np.diff(theta)) <= tol:
        return Conjugacy(True, "repeated-angle")
    return Conjugacy(False, None)


__all__ = [
    "CutSolutionFamily",
    "GeodesicFactors",
    "LogResult",
    "Conjugacy",
    "ambient",
    "covariant_derivative",
    "cut_solutions",
    "cut_time",
    "distance",
    "exp",
    "geodesic_factors",
    "geodesic_velocity",
    "in_cut_locus",
    "is_conjugate",
    "lift",
    "log",
    "log_extended",
    "materialize",
    "metric",
    "norm",
    "parallel_transport",
    "principal_angles",
    "random_horizontal",
    "random_stiefel",
    "riemannian_gradient",
    "same_subspace",
    "sectional_curvature",
]
