"""Parameter record and provenance attached to every constructed instance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..numeric import to_json


@dataclass
class ReductionCertificate:
    source: str
    target: Any
    params: dict
    vertex_origin: list = field(default_factory=list)
    edge_origin: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, dict):
                return {str(k): conv(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [conv(v) for v in x]
            if isinstance(x, (str, bool)) or x is None:
                return x
            return to_json(x)

        return {
            "source": self.source,
            "params": conv(self.params),
            "vertex_origin": conv(self.vertex_origin),
            "edge_origin": conv(self.edge_origin),
            "extra": conv(self.extra),
        }
