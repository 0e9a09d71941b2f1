from enum import StrEnum


class Verdict(StrEnum):
    """Answer of a certification procedure.

    For free modules ``NO`` means a nonvanishing degree was found; for
    modules known only through a resolution type it means "not certified".
    """

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.YES if value else cls.NO

    @classmethod
    def all_of(cls, verdicts) -> "Verdict":
        seen_unknown = False
        for verdict in verdicts:
            if verdict is cls.NO:
                return cls.NO
            if verdict is cls.UNKNOWN:
                seen_unknown = True
        return cls.UNKNOWN if seen_unknown else cls.YES


class Feasibility(StrEnum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


EXACT = "exact"
DECLARED = "declared"


def window_marker(level: int) -> str:
    return f"window:{level}"


def merge_exactness(*markers: str) -> str:
    """Combine exactness markers; any window marker wins, keeping the lowest level."""
    windows = [m for m in markers if m.startswith("window:")]
    if not windows:
        return DECLARED if DECLARED in markers else EXACT
    return min(windows, key=lambda m: int(m.split(":", 1)[1]))
