"""
Exception hierarchy
Every error raised on purpose by cvnn_cost derives from CvnnError
"""


class CvnnError(Exception):
    """Base class for cvnn_cost errors"""


class InvalidSpecError(CvnnError, ValueError):
    """An architecture spec or run configuration violates its validity rules"""


class NotApplicableError(CvnnError):
    """The requested architecture/mode/regime combination has no defined cost"""


class LedgerError(CvnnError):
    """Multiplication counter misuse: no active phase, negative diff or overflow"""


class DimensionError(CvnnError, ValueError):
    """Vector or matrix dimensions disagree with the network spec"""


class NonFiniteError(CvnnError, ArithmeticError):
    """A loss or difference quotient came out NaN or infinite"""


class TableError(CvnnError, ValueError):
    """The use-case table file is malformed"""
