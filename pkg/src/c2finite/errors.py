"""Exception hierarchy shared across the package."""


class C2Error(Exception):
    """Base class for failures specific to this package."""


class CertificationError(C2Error):
    """A computed recurrence could not be certified on the requested horizon."""


class PatternNotFound(C2Error):
    """No eventually periodic pattern fits within the search bounds."""


class ExtractionError(C2Error):
    """The linear-algebra step of recurrence extraction failed."""


class DomainMismatch(C2Error, ValueError):
    """Operands live over different coefficient domains."""


class BoundExceeded(C2Error):
    """A search or memo bound was exhausted before an answer was found."""
