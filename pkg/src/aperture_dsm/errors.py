"""Exception hierarchy.

Numeric failures (degenerate data, insufficient truncation) derive from
``ArithmeticError``; everything caused by bad inputs or files derives from
``ValueError`` so callers can catch broadly.
"""


class ApertureDSMError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ApertureDSMError, ValueError):
    """Argument outside the domain of a special function or kernel."""


class SingularityError(DomainError):
    """Evaluation point coincides with a source (log singularity of H0)."""


class AntennaIndexError(ApertureDSMError, IndexError):
    """Transmitter or receiver index outside 1..M / 1..N."""


class ContractViolation(ApertureDSMError, ValueError):
    """Physical precondition violated (e.g. permittivity below background)."""


class DegenerateDataError(ApertureDSMError, ArithmeticError):
    """A data vector entering a normalized inner product has zero norm."""


class TruncationError(ApertureDSMError, ArithmeticError):
    """Bessel series truncated below the order needed for its arguments."""


class StructureHypothesisError(ApertureDSMError, ValueError):
    """Configuration outside the hypotheses of the series representation."""


class DatasetFormatError(ApertureDSMError, ValueError):
    """Generic problem with a dataset, map or config file."""


class MalformedHeaderError(DatasetFormatError):
    pass


class RowCountError(DatasetFormatError):
    pass


class MaskConsistencyError(DatasetFormatError):
    """Measured row inside the forbidden bistatic zone."""


class ImportMappingError(DatasetFormatError):
    """Column mapping incomplete, ambiguous or out of range for the file."""


class AngleSnapError(DatasetFormatError):
    """Antenna angle further than the snapping tolerance from any ring slot."""


class DuplicateRowError(DatasetFormatError):
    pass
