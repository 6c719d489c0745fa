"""Resource caps and quantifier bounds.

Every cap can be overridden from the environment with a ``KSPACE_`` prefix,
e.g. ``KSPACE_MAX_RING_SIZE=64``, or from a ``k=v,...`` string as accepted by
the ``--caps`` CLI flag.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_PREFIX = "KSPACE_"


@dataclass(frozen=True)
class Caps:
    max_ring_size: int = 256
    max_closed_sets: int = 2**18
    # element subsets up to this size are quantified over exhaustively
    max_subset_size: int = 3
    # power-set quantifications are exhaustive up to this many points
    sample_threshold: int = 6
    sample_count: int = 256
    sample_seed: int = 0
    fip_bound: int = 4
    max_function_space: int = 2**16

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name != "sample_seed" and value <= 0:
                raise ValueError(f"cap {f.name} must be positive, got {value}")

    def replace(self, **changes) -> Caps:
        return dataclasses.replace(self, **changes)

    def with_overrides(self, text: str | None) -> Caps:
        """Apply a ``k=v,k=v`` override string."""
        if not text:
            return self
        changes = {}
        names = {f.name for f in dataclasses.fields(self)}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in names:
                raise ValueError(f"unknown cap override {item!r}; known caps: {', '.join(sorted(names))}")
            changes[key] = int(value)
        return self.replace(**changes)

    @classmethod
    def from_env(cls, environ=None) -> Caps:
        environ = os.environ if environ is None else environ
        changes = {}
        for f in dataclasses.fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in environ:
                changes[f.name] = int(environ[key])
        return cls(**changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_CAPS = Caps()


def resolve(caps: Caps | None) -> Caps:
    return DEFAULT_CAPS if caps is None else caps
