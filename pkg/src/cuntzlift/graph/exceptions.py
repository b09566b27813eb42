class GraphError(ValueError):
    """Raised when a metric graph is malformed."""

    pass


class MeshError(ValueError):
    """Raised when cut points do not fit an edge, or meshes live on different graphs."""

    pass


class GraphLscError(ValueError):
    """Raised when node values break lower semicontinuity."""

    pass


class ContainmentError(ValueError):
    """Raised when a glue request does not satisfy its closure containment."""

    pass


class UnboundedValueError(ValueError):
    """Raised when a function attains infinity where a finite value is needed."""

    pass


__all__ = [
    "ContainmentError",
    "GraphError",
    "GraphLscError",
    "MeshError",
    "UnboundedValueError",
]
