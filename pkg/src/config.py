"""Engine-wide settings shared by the CLI and the test suite."""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class EngineConfig:
    # Highest derivative order any jet slot may reach.
    max_order: int = 16
    # Degree bound for concrete polynomial inputs in the oracle.
    degree_bound: int = 12
    seed: int = 0
    trials: int = 50
    # Random points per variety branch when rewriting cannot decide membership.
    sample_points: int = 3
    max_branches: int = 64

    def with_overrides(self, **changes) -> "EngineConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)


DEFAULT_CONFIG = EngineConfig()
