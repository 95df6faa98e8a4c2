"""Error hierarchy shared by the library and the CLI.

Every error carries a machine-readable ``code`` (written into JSON reports) and the
process ``exit_code`` the CLI uses when the error escapes a command.
"""

from __future__ import annotations

from typing import Any


class ZygmundError(Exception):
    """Base class for all library errors."""

    code = "error"
    exit_code = 2

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self)}


class UsageError(ZygmundError):
    code = "usage"
    exit_code = 1


class ParameterError(ZygmundError, ValueError):
    code = "parameter"
    exit_code = 1


class DomainError(ZygmundError, ValueError):
    code = "domain"


class InputError(ZygmundError):
    code = "input"
    exit_code = 1


class IngestionError(InputError):
    code = "ingestion"


class ShapeError(ZygmundError):
    code = "shape"


class GridError(ZygmundError):
    code = "grid"


class ScaleError(ZygmundError):
    code = "scale"


class ConfigurationError(ZygmundError):
    code = "configuration"


class NumericError(ZygmundError):
    code = "numeric"


class ZeroAdmissibilityError(NumericError):
    code = "zero_admissibility"


class AnisotropyError(NumericError):
    code = "anisotropy"


class DivisionError(NumericError):
    code = "division"


class DegenerateSignalError(NumericError):
    code = "degenerate_signal"
