"""Numerical geometry of the Grassmann manifold Gr(n, p).

Points are handled either as Stiefel representatives (n x p, orthonormal
columns) or as rank-p orthogonal projectors (n x n). The Stiefel routines in
:mod:`grassmann_kit.grassmann` cost O(n p^2); :mod:`grassmann_kit.projector`
holds the n x n formulas used as cross-checks.
"""

from . import charts, grassmann, jacobi, matcore, projector, stiefel
from .charts import ChartBall, normal_coords, phi, psi
from .exceptions import (
    DomainError,
    GrassmannError,
    IllPosedError,
    InvalidInputError,
    OutOfChartError,
    RankDeficiencyError,
)
from .grassmann import (
    CutSolutionFamily,
    cut_solutions,
    cut_time,
    distance,
    exp,
    in_cut_locus,
    is_conjugate,
    log,
    log_extended,
    materialize,
    metric,
    parallel_transport,
    principal_angles,
    random_horizontal,
    sectional_curvature,
)
from .jacobi import dexp, jacobi_field
from .stiefel import random_stiefel

__version__ = "0.1.0"
