"""Shared domain types: directions, points in the unit hypercube, boxes.

Everything here is immutable and purely functional, so all of it is safe
to use from any number of threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence


class DimensionError(ValueError):
    """A point, direction or box has the wrong number of coordinates."""


class DirectionError(ValueError):
    """A direction entry is not exactly -1 or +1."""


class Notion(str, Enum):
    """Which way the conditional orthant probability is required to move."""

    INCREASING = "I"
    DECREASING = "D"


Point = tuple[float, ...]


def as_point(coords: Sequence[float], dim: int | None = None) -> Point:
    """Validate coordinates as a point of the closed unit hypercube."""
    pt = tuple(float(c) for c in coords)
    if len(pt) < 2:
        raise DimensionError(f"need at least 2 coordinates, got {len(pt)}")
    if dim is not None and len(pt) != dim:
        raise DimensionError(f"expected {dim} coordinates, got {len(pt)}")
    for c in pt:
        if not 0.0 <= c <= 1.0:
            raise ValueError(f"coordinate {c!r} outside [0, 1]")
    return pt


@dataclass(frozen=True)
class Direction:
    """A sign vector with its partition into negative and positive axes.

    ``neg_idx`` / ``pos_idx`` are 0-based internally; reports render them
    1-based.  Pure directions (all signs equal) are valid values; the
    checker decides how they are routed.
    """

    signs: tuple[int, ...]
    neg_idx: tuple[int, ...]
    pos_idx: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def is_pure(self) -> bool:
        return not self.neg_idx or not self.pos_idx

    def token(self) -> str:
        return ",".join("+" if s > 0 else "-" for s in self.signs)

    def pretty(self) -> str:
        return "(" + self.token() + ")"


def make_direction(signs: Iterable[int | float]) -> Direction:
    """Build a Direction from a sequence of +1 / -1 entries."""
    vals = []
    for s in signs:
        if s != 1 and s != -1:
            raise DirectionError(f"direction entry {s!r} is not +1 or -1")
        vals.append(int(s))
    if len(vals) < 2:
        raise DimensionError(f"direction needs at least 2 entries, got {len(vals)}")
    sv = tuple(vals)
    neg = tuple(i for i, s in enumerate(sv) if s < 0)
    pos = tuple(i for i, s in enumerate(sv) if s > 0)
    return Direction(signs=sv, neg_idx=neg, pos_idx=pos)


def direction_from_token(token: str) -> Direction:
    """Parse a comma-separated sign token such as ``"+,-,+"``."""
    parts = [p.strip() for p in token.split(",")]
    signs = []
    for p in parts:
        if p == "+":
            signs.append(1)
        elif p == "-":
            signs.append(-1)
        else:
            raise DirectionError(f"bad direction token {p!r}, expected '+' or '-'")
    return make_direction(signs)


def all_directions(dim: int) -> list[Direction]:
    """Every sign vector of the given dimension, all-positive first."""
    if dim < 2:
        raise DimensionError(f"dimension must be >= 2, got {dim}")
    return [make_direction(sv) for sv in itertools.product((1, -1), repeat=dim)]


def join_direction(d: Direction, v: Sequence[float], vp: Sequence[float]) -> Point:
    """Intersection point of two directional events.

    Componentwise max on the positive axes, min on the negative axes;
    commutative, associative and idempotent for a fixed direction.
    """
    if len(v) != d.dim or len(vp) != d.dim:
        raise DimensionError(
            f"points of length {len(v)}/{len(vp)} do not match direction of dim {d.dim}"
        )
    return tuple(
        max(a, b) if s > 0 else min(a, b) for s, a, b in zip(d.signs, v, vp)
    )


@dataclass(frozen=True)
class Box:
    """An axis-aligned box inside the unit hypercube."""

    lower: Point
    upper: Point

    def __post_init__(self) -> None:
        lo = as_point(self.lower)
        hi = as_point(self.upper)
        if len(lo) != len(hi):
            raise DimensionError("box corners have different dimensions")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError("box lower corner exceeds upper corner")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)


def box_volume(fn: Callable[[Point], float], box: Box) -> float:
    """Alternating-sign sum of ``fn`` over the 2^n vertices of ``box``.

    Sign of a vertex is (-1)**(number of lower coordinates chosen), so
    for a distribution function this is the mass assigned to the box.
    """
    total = 0.0
    for choice in itertools.product((0, 1), repeat=box.dim):
        vertex = tuple(
            box.lower[i] if c == 0 else box.upper[i] for i, c in enumerate(choice)
        )
        sign = -1.0 if sum(1 for c in choice if c == 0) % 2 else 1.0
        total += sign * fn(vertex)
    return total


def frechet_lower(u: Sequence[float]) -> float:
    """Pointwise lower bound max(0, sum(u) - n + 1) for any copula value."""
    return max(0.0, sum(u) - len(tuple(u)) + 1.0)


def frechet_upper(u: Sequence[float]) -> float:
    """Pointwise upper bound min(u) for any copula value."""
    return min(u)
