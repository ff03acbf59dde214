"""The model flat ``A = R^n / R(1,...,1)`` with rational coordinates.

Vectors are stored in the sum-zero representative.  The inner product is
``<x, y> = 2 * sum(x_i * y_i)``, the normalization under which hyperplanes
``alpha = 0`` and ``alpha = 1`` of a root ``alpha`` are at distance 1 (for
``n = 2`` it makes ``s -> s[(1, 0)]`` an isometry of ``R`` onto ``A``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple


@dataclass(frozen=True)
class FlatVector:
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        mean = sum(coords) / len(coords)
        if mean:
            coords = tuple(c - mean for c in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, n: int = 3) -> "FlatVector":
        return cls((0,) * n)

    @classmethod
    def from_src(cls, a, b) -> "FlatVector":
        """The vector with simple-root coordinates ``(a, b)``."""
        a, b = Fraction(a), Fraction(b)
        # v1 - v2 = a, v2 - v3 = b, sum zero
        v3 = -(a + 2 * b) / 3
        return cls((v3 + a + b, v3 + b, v3))

    @classmethod
    def basis_class(cls, i: int, n: int = 3) -> "FlatVector":
        """Class of the canonical basis vector ``e_i`` (1-indexed)."""
        return cls(tuple(1 if k == i - 1 else 0 for k in range(n)))

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: "FlatVector") -> "FlatVector":
        return FlatVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FlatVector") -> "FlatVector":
        return FlatVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FlatVector":
        return FlatVector(tuple(-a for a in self.coords))

    def __mul__(self, s) -> "FlatVector":
        s = Fraction(s)
        return FlatVector(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def roots(self) -> Tuple[Fraction, Fraction, Fraction]:
        """``(v1 - v2, v2 - v3, v3 - v1)``."""
        v1, v2, v3 = self.coords
        return (v1 - v2, v2 - v3, v3 - v1)

    def root(self, k: int) -> Fraction:
        return self.roots()[k - 1]

    def src(self) -> Tuple[Fraction, Fraction]:
        """Simple-root coordinates ``(alpha_1, alpha_2)``."""
        r = self.roots()
        return (r[0], r[1])

    def weyl_type(self) -> "FlatVector":
        """Representative in the closed model chamber (coordinates decreasing)."""
        return FlatVector(tuple(sorted(self.coords, reverse=True)))

    def norm_sq(self) -> Fraction:
        return 2 * sum(c * c for c in self.coords)

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def opposite_type(self) -> "FlatVector":
        """Type of ``-v``: the opposition involution on the closed chamber."""
        return (-self).weyl_type()

    def singularity(self) -> str:
        """``zero``, ``regular``, ``singular-1`` (type of a point) or ``singular-2`` (type of a line)."""
        if self.is_zero():
            return "zero"
        w = self.weyl_type().coords
        if len(w) != 3:
            return "regular"
        if w[0] == w[1]:
            return "singular-2"
        if w[1] == w[2]:
            return "singular-1"
        return "regular"

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def src_vector(a, b) -> FlatVector:
    return FlatVector.from_src(a, b)
