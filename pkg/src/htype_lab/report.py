"""Named pass/fail checks and canonical JSON output."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List

from .exactlin import Matrix, Subspace, scalar_str


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}  {self.detail}".rstrip()


def all_passed(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)


def failures(checks: Iterable[Check]) -> List[Check]:
    return [c for c in checks if not c.passed]


def jsonable(obj: Any) -> Any:
    """Convert rationals, matrices and subspaces to plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return scalar_str(obj) if isinstance(obj, Fraction) else obj
    if isinstance(obj, Matrix):
        return obj.to_json()
    if isinstance(obj, Subspace):
        return obj.to_json()
    if isinstance(obj, Check):
        return obj.to_json()
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
