"""Exception hierarchy shared across the package.

Everything raised on bad data or bad parameters derives from MqError so
callers (and the CLI) can distinguish usage problems from I/O problems.
"""


class MqError(Exception):
    """Base class for all data and computation errors."""


class FormatError(MqError):
    """A file does not conform to its declared format."""


class ParseError(FormatError):
    """A token inside an otherwise well-formed file failed to parse."""


class EmptyInputError(FormatError):
    """A file or cloud contained no data at all."""


class ParameterError(MqError, ValueError):
    """An argument is outside its documented range."""


class UnsupportedDimensionError(ParameterError):
    """A simplex dimension beyond the supported maximum was requested."""


class SizeError(MqError, ValueError):
    """A size precondition (counts, subsample bounds) was violated."""


class ShapeError(MqError, ValueError):
    """Array shapes are inconsistent (mixed image sizes, mixed ambient dims)."""


class DegenerateInputError(MqError):
    """The input is degenerate for the requested computation (duplicates, zero extent)."""


class IntegrityError(MqError):
    """An internal structural invariant was violated (e.g. a filtration missing faces)."""
