"""Flat-file store of reference values with provenance and tolerances."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable

from ._io import atomic_write, to_json

__all__ = ["GoldenEntry", "GoldenStore", "canonical_key"]

PROVENANCE = ("derived", "published", "trivial")


def canonical_key(op: str, **params) -> str:
    """``op(k1=v1,k2=v2)`` with sorted keys and ``repr`` of float values."""
    parts = []
    for k in sorted(params):
        v = params[k]
        if isinstance(v, float):
            v = repr(v)
        elif isinstance(v, (tuple, list)):
            v = "(" + ",".join(repr(float(x)) if isinstance(x, float) else str(x) for x in v) + ")"
        parts.append(f"{k}={v}")
    return f"{op}({','.join(parts)})"


@dataclass(frozen=True)
class GoldenEntry:
    value: object
    provenance: str
    oracle: str
    tolerance: float

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"provenance must be one of {PROVENANCE}, got {self.provenance!r}")
        if not self.oracle:
            raise ValueError("oracle description required")
        if not (self.tolerance >= 0):
            raise ValueError("tolerance must be non-negative")


class GoldenStore:
    """Mapping from canonical keys to :class:`GoldenEntry`."""

    def __init__(self, entries: dict | None = None):
        self.entries: dict[str, GoldenEntry] = dict(entries or {})

    @classmethod
    def load(cls, path) -> "GoldenStore":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls({k: GoldenEntry(**v) for k, v in raw.items()})

    def save(self, path) -> None:
        atomic_write(path, to_json({k: asdict(self.entries[k]) for k in sorted(self.entries)}))

    def put(self, key: str, value, provenance: str, oracle: str, tolerance: float) -> None:
        self.entries[key] = GoldenEntry(value, provenance, oracle, float(tolerance))

    def __getitem__(self, key: str) -> GoldenEntry:
        return self.entries[key]

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self):
        return self.entries.keys()

    def matching(self, prefix: str) -> dict[str, GoldenEntry]:
        return {k: v for k, v in self.entries.items() if k.startswith(prefix)}

    def check(self, key: str, value: float, relative: bool = False) -> bool:
        """Whether ``value`` matches the stored value within its tolerance."""
        e = self.entries[key]
        ref = float(e.value)
        diff = abs(float(value) - ref)
        if relative:
            diff /= max(abs(ref), math.ulp(1.0))
        return diff <= e.tolerance

    def rederive(self, key: str, fn: Callable[[], float], relative: bool = False) -> bool:
        """Recompute an entry with ``fn`` and compare."""
        return self.check(key, fn(), relative)
