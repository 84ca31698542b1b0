"""Exception types shared across the package."""


class DeltessError(Exception):
    """Base class for all package errors."""


class UnsupportedDimensionError(DeltessError):
    """The exact geometric pipeline only handles d = 2."""


class InvalidConfigurationError(DeltessError):
    """Point configuration violates its invariants (duplicates, out of window)."""


class UnboundedCellError(DeltessError):
    """Operation requires a bounded Voronoi cell."""


class InvalidInputError(DeltessError):
    """Operation precondition on its arguments failed."""


class UnsupportedProcessError(DeltessError):
    """Operation only defined for a specific process family."""


class InvalidSpecError(DeltessError):
    """Process specification has invalid parameters."""


class RejectedSpecError(InvalidSpecError):
    """Process specification rejected (e.g. unstable interaction table)."""


class InvalidLawError(DeltessError):
    """Conductance law produced or would produce invalid values."""


class InvalidCombinationError(DeltessError):
    """Requested quantity is incompatible with the supplied law."""


class BoundaryContaminationError(DeltessError):
    """Rooted statistics requested at a point that is not interior-valid."""


class InvalidParameterError(DeltessError):
    """Scalar parameter outside its admissible range."""


class LocalityViolationError(DeltessError):
    """Window does not cover the locality radius required by the operation."""


class ConfigError(DeltessError):
    """Experiment configuration file could not be parsed or validated."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column else "") + f": {message}"
        super().__init__(message)


class SchemaError(DeltessError):
    """CSV input does not carry the columns a plot kind requires."""

    def __init__(self, message, missing=()):
        self.missing = tuple(missing)
        if self.missing:
            message = f"{message} (missing columns: {', '.join(self.missing)})"
        super().__init__(message)
