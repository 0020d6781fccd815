from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of one identity or oracle check.

    ``lhs`` and ``rhs`` are canonical text renderings; ``equal`` is derived
    from them so a report can never claim agreement its sides contradict.
    """

    suite: str
    params: dict[str, Any]
    lhs: str
    rhs: str
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    equal: bool = field(init=False)

    def __post_init__(self):
        self.lhs = str(self.lhs)
        self.rhs = str(self.rhs)
        self.equal = self.lhs == self.rhs

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    def __bool__(self) -> bool:
        return self.equal


@contextmanager
def timed():
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - start
