"""Central numerical tolerances used across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    absolute: float = 1e-9
    relative: float = 1e-7
    # Orthonormality / rank decisions in the small dense linear algebra.
    orthonormality: float = 1e-12
    gram_rank: float = 1e-12
    # Inequality checkers.
    slack: float = 1e-8
    predicate: float = 1e-9
    # Sphere optimizer stopping criterion (projected gradient norm).
    sphere_gradient: float = 1e-10


DEFAULT_TOLERANCES = Tolerances()
