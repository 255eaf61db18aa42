"""Result type shared by all testers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

from .model import Incidence, PermutationAssignment, Side


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, needed: Optional[int] = None):
        msg = f"search space exceeds budget {budget}"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)
        self.budget = budget
        self.needed = needed


@dataclass
class Verdict:
    planar: bool
    perms: Optional[PermutationAssignment] = None
    sides: Optional[Mapping[Incidence, Side]] = None
    # rotation system of the witness wheel reduction, clockwise
    embedding: Optional[Dict[str, List[str]]] = None
    algorithm: str = ""
    detail: str = ""
    stats: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.planar
