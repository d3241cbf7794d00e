"""Three-state verdicts for sign tests near a numerical wall."""
from __future__ import annotations

import enum
from typing import Iterable


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"

    def __bool__(self) -> bool:
        return self is Verdict.TRUE

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE

    @classmethod
    def positive(cls, value: float, scale: float, tol: float) -> "Verdict":
        """Sign of ``value`` relative to a band of half-width ``tol * scale``."""
        band = tol * max(scale, 1e-300)
        if value > band:
            return cls.TRUE
        if value < -band:
            return cls.FALSE
        return cls.INDETERMINATE


def all_of(verdicts: Iterable[Verdict]) -> Verdict:
    out = Verdict.TRUE
    for v in verdicts:
        if v is Verdict.FALSE:
            return Verdict.FALSE
        if v is Verdict.INDETERMINATE:
            out = Verdict.INDETERMINATE
    return out
