from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Violation:
    """First failing instance of a law: its name and the offending tuple.

    Law checkers return ``None`` when every instance holds.
    """

    law: str
    witness: Any

    def __str__(self) -> str:
        return f"{self.law} fails at {self.witness!r}"
