"""Closed-form degrees of standard identities guaranteed for derived operations."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict


@dataclass(frozen=True)
class BoundResult:
    theorem: str  # "fg" (generator filtration), "fd" (finite-dimensional g) or "rc"
    inputs: Dict[str, int] = field(default_factory=dict)
    p: int | None = None
    d: int = 0

    def as_dict(self):
        return {"theorem": self.theorem, "inputs": dict(self.inputs), "p": self.p, "d": self.d}


def bound_fg(n: int, m: int) -> BoundResult:
    """d = 1 + (n^(p+1) - 1)/(n - 1) with the smallest admissible p = m + 1.

    Needs n > 1 derivations; a single derivation spans a one-dimensional Lie
    algebra, use :func:`bound_fd` with dim_g = 1 instead.
    """
    if n <= 1:
        raise ValueError("bound_fg needs n > 1 derivations; use bound_fd for n = 1")
    if m < 0:
        raise ValueError("order must be non-negative")
    p = m + 1
    d = 1 + (n ** (p + 1) - 1) // (n - 1)
    return BoundResult("fg", {"n": n, "m": m}, p, d)


def bound_fd(dim_g: int, m: int) -> BoundResult:
    """d = 1 + C(dim_g + p, dim_g) for the smallest integer p > m (dim_g + 1) / dim_g."""
    if dim_g < 1:
        raise ValueError("dim_g must be >= 1")
    if m < 0:
        raise ValueError("order must be non-negative")
    p = m * (dim_g + 1) // dim_g + 1
    d = 1 + comb(dim_g + p, dim_g)
    return BoundResult("fd", {"dim_g": dim_g, "m": m}, p, d)


def bound_rc(n: int) -> BoundResult:
    """Degree 9n(n+1)/2 - 1 for the Rankin-Cohen bracket [-,-]_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return BoundResult("rc", {"n": n}, None, 9 * n * (n + 1) // 2 - 1)
