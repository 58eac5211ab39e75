"""Constraint systems describing half-open polyhedral cones.

A system over ``R^dim`` holds three row lists: equations ``e.x = 0``,
non-strict rows ``a.x <= 0`` and strict rows ``a.x < 0``.  Rows are stored
primitive; zero equations and zero non-strict rows are dropped, a zero strict
row marks the whole system empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import MalformedInputError
from .linalg import dot, primitive


@dataclass(frozen=True)
class ConstraintSystem:
    dim: int
    equations: tuple = ()
    nonstrict: tuple = ()
    strict: tuple = ()
    empty: bool = field(default=False)

    @classmethod
    def build(
        cls,
        dim: int,
        equations: Iterable[Sequence[int]] = (),
        nonstrict: Iterable[Sequence[int]] = (),
        strict: Iterable[Sequence[int]] = (),
    ) -> "ConstraintSystem":
        """Validate and normalize raw rows."""
        eqs, le, lt = [], [], []
        empty = False
        for bucket, rows in ((eqs, equations), (le, nonstrict), (lt, strict)):
            for r in rows:
                r = tuple(int(x) for x in r)
                if len(r) != dim:
                    raise MalformedInputError(
                        f"row of length {len(r)} in a system of dimension {dim}"
                    )
                if not any(r):
                    if bucket is lt:
                        empty = True
                    continue
                bucket.append(primitive(r))
        return cls(dim, tuple(eqs), tuple(le), tuple(lt), empty)

    @classmethod
    def full_space(cls, dim: int) -> "ConstraintSystem":
        return cls(dim)

    def closure(self) -> "ConstraintSystem":
        """The closed system: strict rows relaxed to non-strict ones."""
        return ConstraintSystem(self.dim, self.equations, self.nonstrict + self.strict, (), False)

    def meet(self, other: "ConstraintSystem") -> "ConstraintSystem":
        """Row-wise concatenation (point-set intersection)."""
        if self.dim != other.dim:
            raise MalformedInputError("dimension mismatch in intersection")
        return ConstraintSystem(
            self.dim,
            self.equations + other.equations,
            self.nonstrict + other.nonstrict,
            self.strict + other.strict,
            self.empty or other.empty,
        )

    def contains(self, x: Sequence[int]) -> bool:
        """Exact membership test for a point given by integer or rational entries."""
        if self.empty:
            return False
        for e in self.equations:
            if dot(e, x) != 0:
                return False
        for a in self.nonstrict:
            if dot(a, x) > 0:
                return False
        for a in self.strict:
            if dot(a, x) >= 0:
                return False
        return True

    @property
    def num_rows(self) -> int:
        return len(self.equations) + len(self.nonstrict) + len(self.strict)
