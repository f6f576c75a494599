class SatPolyError(Exception):
    """Base class for all library errors."""


class ParseError(SatPolyError):
    """Malformed input file or literal."""


class BoundExceeded(SatPolyError):
    """An enumeration-bounded operation was called outside its size limit."""
