from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification routine; truthy iff ``ok``."""

    ok: bool
    detail: str = ""
    witness: Any = field(default=None)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        d: dict = {"ok": self.ok}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = self.witness
        return d
