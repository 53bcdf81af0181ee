"""Settings for the table and sweep scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace


@dataclass(frozen=True)
class SweepConfig:
    """Which contexts and cycle words a sweep visits.

    ``contexts`` entries use the same syntax as the CLI (``F3``, a file path,
    or an inline nested list).
    """

    contexts: tuple[str, ...] = ("F2", "[[1,1],[1,0]]", "F3")
    max_period: int = 3
    depth: int = 4
    seed: int = 0
    random_samples: int = 0
    max_random_dim: int = 6
    verify: bool = True

    def __post_init__(self):
        if self.max_period < 1:
            raise ValueError("max_period must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.max_random_dim < 1:
            raise ValueError("max_random_dim must be >= 1")

    def with_overrides(self, **changes) -> SweepConfig:
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class KTheoryTableConfig:
    full_range: tuple[int, int] = (2, 9)
    products: tuple[tuple[str, str], ...] = field(
        default=(("[[1,1],[1,0]]", "[[1,1],[1,0]]"), ("F2", "[[0,1],[1,0]]"), ("[[0,1],[1,0]]", "[[0,1],[1,0]]"))
    )
    show_kernel_inclusion: bool = True
