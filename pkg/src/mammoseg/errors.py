"""Exception types shared across the package.

Every error raised by the library derives from MammosegError so callers
(CLI, HTTP service) can map failures to exit codes / status codes in one
place.
"""


class MammosegError(Exception):
    """Base class for all library errors."""


# --- PGM codec ---------------------------------------------------------

class BadMagic(MammosegError):
    """Input is not a binary PGM (magic is not 'P5')."""


class BadHeader(MammosegError):
    """PGM header is malformed (non-numeric / zero dims, maxval out of range)."""


class TruncatedRaster(MammosegError):
    """Fewer raster bytes than width * height."""


# --- imaging -----------------------------------------------------------

class EvenWindow(MammosegError):
    """Median filter window must be an odd positive integer."""


class EmptyHistogram(MammosegError):
    """Histogram has no counts; no threshold can be chosen."""


# --- watershed ---------------------------------------------------------

class NoMarkers(MammosegError):
    """Watershed called with an empty marker map."""


class EmptyDomain(MammosegError):
    """Marker search domain contains no foreground pixels."""


# --- measurement -------------------------------------------------------

class EmptyComponent(MammosegError):
    """Diameter requested for a component with no pixels."""


# --- classification ----------------------------------------------------

class NegativeDiameter(MammosegError):
    """Diameter must be >= 0."""


class NonFinite(MammosegError):
    """Diameter must be a finite number."""


class NonPositiveDiameter(MammosegError):
    """Size category is only defined for diameters > 0."""


# --- reporting ---------------------------------------------------------

class ParseError(MammosegError):
    """Report document failed to parse; `field` holds the offending path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# --- service / pipeline ------------------------------------------------

class ValidationError(MammosegError):
    """Invalid request payload; `field` names the offending field when known."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class PrerequisiteMissing(MammosegError):
    """A pipeline step was requested before its required input stage exists."""


class InvalidParams(MammosegError):
    """A pipeline step received parameters outside its accepted range."""


class InvalidCalibration(MammosegError):
    """cm-per-pixel factor must be strictly positive and finite."""


class MissingLine(MammosegError):
    """Manual measurement requested without line endpoints."""


class NoReportYet(MammosegError):
    """Report fetch with generate=false but no report has been generated."""
