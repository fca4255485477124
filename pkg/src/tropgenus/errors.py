"""Exception hierarchy shared by the pipeline stages."""


class TropGenusError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(TropGenusError, ValueError):
    """Malformed graph input."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class TooFewVerticesError(GraphError):
    pass


class NotOneDofError(GraphError):
    """The graph fails the one-degree-of-freedom test."""


class ResourceLimitError(TropGenusError):
    """A desk-scale cap was exceeded."""


class NonGenericError(TropGenusError):
    """Sampled parameters hit a degenerate locus; resample."""


class CertificateError(TropGenusError):
    """A tropical certificate (transversality, balancing, ...) failed."""


class ConventionError(CertificateError):
    """Fan dimension disagrees with the expected value."""


class TransversalityError(CertificateError):
    pass


class DisconnectedCurveError(CertificateError):
    pass
