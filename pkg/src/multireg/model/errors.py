"""Exception hierarchy shared by every multireg module."""

from dataclasses import dataclass
from enum import StrEnum


class MultiregError(Exception):
    """Base class; the CLI turns these into exit status 1."""


class InputError(MultiregError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            msg = f"line {line}, column {column}: {msg}"
        super().__init__(msg)


class RingViolationKind(StrEnum):
    ZERO_DEGREE = "zero-degree-variable"
    NON_POINTED = "non-pointed-degrees"
    NON_POINTED_C = "non-pointed-configuration"
    EMPTY_IDEAL = "empty-irrelevant-ideal"
    UNKNOWN_VARIABLE = "unknown-variable"
    RANK_MISMATCH = "rank-mismatch"


@dataclass(frozen=True)
class RingViolation:
    kind: RingViolationKind
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class RingValidationError(MultiregError):
    def __init__(self, violations: list[RingViolation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))

    @property
    def kinds(self) -> set[RingViolationKind]:
        return {v.kind for v in self.violations}


class NotPointedError(MultiregError):
    def __init__(self, msg: str, certificate):
        self.certificate = certificate
        super().__init__(msg)


class RegionMismatchError(MultiregError):
    pass


class CoarseningError(MultiregError):
    pass


class SizeCapError(MultiregError):
    pass


class PreconditionError(MultiregError):
    pass
