"""
Structured results of every checker. A checker never raises for an identity that
fails: it records a Failure with the witnesses that break it, and the report
passes iff there are no failures.
"""
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from hopfmorita.util import model_to_dict


class Scope(BaseModel):
    """What a report's claims are verified against."""

    truncation: Optional[int] = None
    window: Optional[int] = None

    def describe(self) -> str:
        parts = []
        if self.truncation is not None:
            parts.append(f"verified to order {self.truncation}")
        if self.window is not None:
            parts.append(f"on the mode window |k| <= {self.window}")
        return ", ".join(parts) or "exhaustive"


class Failure(BaseModel):
    identity: str
    witness: Dict[str, str] = {}
    detail: str = ""


class CheckReport(BaseModel):
    name: str
    passed: bool = True
    failures: List[Failure] = []
    scope: Scope = Scope()
    notes: List[str] = []
    data: Dict[str, Any] = {}

    def fail(self, identity: str, detail: str = "", **witness):
        self.failures.append(
            Failure(
                identity=identity,
                witness={k: str(v) for k, v in witness.items()},
                detail=detail,
            )
        )
        self.passed = False

    def merge(self, other: "CheckReport", prefix: Optional[str] = None):
        """Folds the failures and notes of another report into this one."""
        for f in other.failures:
            identity = f"{prefix}: {f.identity}" if prefix else f.identity
            self.failures.append(Failure(identity=identity, witness=f.witness, detail=f.detail))
        self.notes.extend(other.notes)
        self.passed = self.passed and other.passed

    def failed_identities(self) -> List[str]:
        return [f.identity for f in self.failures]

    def to_json(self) -> str:
        return dumps(model_to_dict(self))


def dumps(data: Any) -> str:
    """Deterministic json: sorted keys, fixed indentation."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
