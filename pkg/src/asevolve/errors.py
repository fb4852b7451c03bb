"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A model, fit, or theory parameter is outside its valid domain."""


class InvalidNodeError(ValueError):
    """A node id is outside the graph's 0..n-1 range."""


class NoIncidentEdgeError(ValueError):
    """An incident edge was requested from a node of degree zero."""


class NoAttachableNodeError(RuntimeError):
    """No eligible node with positive attachment weight exists."""


class InsufficientDataError(ValueError):
    """Too few points survive filtering/trimming for a regression."""


class EdgeListFormatError(ValueError):
    """An edge-list file is malformed; message cites the offending line."""
