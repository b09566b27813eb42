class MissingLiftError(KeyError):
    """Raised when some track has no logarithm lift."""

    pass


class GraphMismatchError(ValueError):
    """Raised when determinants over different graphs or matrix sizes are compared."""

    pass


class DiscontinuousLogError(ValueError):
    """Raised when the chosen lifts do not glue to a continuous logarithm."""

    pass


__all__ = ["DiscontinuousLogError", "GraphMismatchError", "MissingLiftError"]
