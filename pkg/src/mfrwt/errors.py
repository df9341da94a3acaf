"""Exception types. Every error carries a stable machine-readable ``code``."""


class MfrwtError(Exception):
    """Base class; ``code`` is reported verbatim by the CLI error JSON."""

    code = "INTERNAL"
    exit_status = 3

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class ValidationError(MfrwtError, ValueError):
    code = "INVALID_ARGUMENT"
    exit_status = 2


class GridError(ValidationError):
    code = "GRID_INVALID"


class GridMismatchError(ValidationError):
    code = "GRID_MISMATCH"


class FieldError(ValidationError):
    code = "FIELD_INVALID"


class OrderError(ValidationError):
    code = "ORDER_INVALID"


class OrderMismatchError(ValidationError):
    code = "ORDER_MISMATCH"


class ScaleError(ValidationError):
    code = "SCALE_INVALID"


class GeneratorError(ValidationError):
    code = "GENERATOR_INVALID"


class ParameterError(ValidationError):
    code = "PARAM_INVALID"


class RegionError(ValidationError):
    code = "REGION_INVALID"


class ConfigError(ValidationError):
    code = "CONFIG_INVALID"


class TailMassError(MfrwtError):
    code = "TAIL_MASS"


class AdmissibilityError(MfrwtError):
    code = "NOT_ADMISSIBLE"


class ConvergenceError(MfrwtError):
    code = "NOT_CONVERGED"


class RatioUndefinedError(MfrwtError):
    code = "RATIO_UNDEFINED"


class OutputError(MfrwtError):
    code = "IO_ERROR"
    exit_status = 4


ERROR_CODES = {
    cls.code: cls
    for cls in (
        MfrwtError,
        ValidationError,
        GridError,
        GridMismatchError,
        FieldError,
        OrderError,
        OrderMismatchError,
        ScaleError,
        GeneratorError,
        ParameterError,
        RegionError,
        ConfigError,
        TailMassError,
        AdmissibilityError,
        ConvergenceError,
        RatioUndefinedError,
        OutputError,
    )
}
