class StrataError(Exception):
    """Base class for Exceptions used by strata library."""
    pass


class InvalidAlgebraError(StrataError):
    """Raised when structure constants or idempotents of an algebra violate
    the axioms of a basic finite-dimensional algebra."""
    pass


class FieldTooSmall(StrataError):
    """Raised when characteristic of a prime field does not exceed dimension
    of an algebra, so the trace form can not be used to find its radical."""
    pass


class NonSplit(StrataError):
    """Raised when a simple module or an indecomposable summand has
    endomorphism ring bigger than the ground field."""
    pass


class Inconclusive(StrataError):
    """Raised when a randomized search failed and the exhaustive fallback
    would exceed its configured budget."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}


class Undetermined(StrataError):
    """Raised when a homological invariant is requested beyond the depth,
    to which a resolution was computed."""
    pass


class NotFiniteDimensional(StrataError):
    """Raised when completion of relations or enumeration of normal paths
    does not terminate below the degree cap."""
    pass


class NonAdmissible(StrataError):
    """Raised when the relation ideal is not contained in the square of the
    arrow ideal."""
    pass


class NotAntiInvolution(StrataError):
    """Raised when a map on arrows does not extend to an anti-involution of
    the algebra."""
    pass


class VerificationFailed(StrataError):
    """Raised when a constructed object does not pass its own verification."""
    pass


class NonConvergent(StrataError):
    """Raised when an iterative construction exceeds its step cap."""
    pass


class NotApplicable(StrataError):
    """Raised when an operation's precondition on the algebra is not met."""
    pass


class PresentationError(StrataError):
    """Base class for errors found in quiver presentation files."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QuiverSyntaxError(PresentationError):
    """Raised when a line of quiver presentation can not be parsed."""
    pass


class QuiverTypeError(PresentationError):
    """Raised when a word in relation does not compose or its terms are not
    parallel paths."""
    pass
