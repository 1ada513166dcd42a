"""Exception hierarchy shared by all modules."""


class GrassmannError(ValueError):
    """Base class for errors raised by grassmann_kit."""


class InvalidInputError(GrassmannError):
    """Input has the wrong shape, is not finite, or violates a manifold constraint."""


class RankDeficiencyError(GrassmannError):
    """A matrix that must have full column rank does not (within tolerance)."""


class IllPosedError(GrassmannError):
    """Singular values are clustered or zero where a derivative needs them separated."""


class DomainError(GrassmannError):
    """Input lies outside the domain of a map, e.g. a cut point for the projector logarithm."""


class OutOfChartError(DomainError):
    """A projector is not covered by the requested affine chart."""
