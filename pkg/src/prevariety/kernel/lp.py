"""Feasibility, implied equations, dimension and redundancy via exact LP."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import EmptyRegionError, MalformedInputError
from .linalg import dot, echelon, primitive, rank, reduce_modulo
from .simplex import strict_witness
from .system import ConstraintSystem


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _check_rows(sys: ConstraintSystem) -> None:
    n = sys.dim
    for rows in (sys.equations, sys.nonstrict, sys.strict):
        for r in rows:
            if len(r) != n:
                raise MalformedInputError(
                    f"row of length {len(r)} in a system of dimension {n}"
                )


def lp_feasible(
    sys: ConstraintSystem, hints: Iterable[Sequence[int]] = ()
) -> FeasibilityVerdict:
    """Decide whether the half-open region of ``sys`` is nonempty.

    ``hints`` are candidate points tried by direct evaluation before any LP
    is set up.  The returned witness always re-verifies exactly.
    """
    _check_rows(sys)
    if sys.empty:
        return FeasibilityVerdict(False)
    for h in hints:
        if h is not None and sys.contains(h):
            return FeasibilityVerdict(True, tuple(h))
    w = strict_witness(sys.dim, sys.equations, sys.nonstrict, sys.strict)
    if w is None:
        return FeasibilityVerdict(False)
    if not sys.contains(w):
        raise AssertionError(f"simplex witness {w} fails exact re-evaluation")
    return FeasibilityVerdict(True, w)


def is_feasible(sys: ConstraintSystem) -> bool:
    return lp_feasible(sys).feasible


def interior_point(sys: ConstraintSystem) -> tuple[tuple, list[int]]:
    """Relative interior point of the closure and the implied row indices.

    Works on the closure (strict rows relaxed).  Returns ``(point, implied)``
    where ``implied`` indexes ``sys.nonstrict + sys.strict``.
    """
    closed = sys.closure()
    rows = closed.nonstrict
    n = sys.dim
    point = [0] * n
    known = [False] * len(rows)
    implied: list[int] = []
    for i, a in enumerate(rows):
        if known[i]:
            continue
        if dot(a, point) < 0:
            known[i] = True
            continue
        probe = ConstraintSystem(n, closed.equations, rows[:i] + rows[i + 1 :], (a,))
        w = strict_witness(n, probe.equations, probe.nonstrict, probe.strict)
        if w is None:
            implied.append(i)
            continue
        # any positive combination of closure points stays in the closure
        point = [p + q for p, q in zip(point, w)]
        for j in range(i, len(rows)):
            if not known[j] and dot(rows[j], point) < 0:
                known[j] = True
    return primitive(point), implied


def implied_equations(sys: ConstraintSystem) -> list[int]:
    """Indices of rows of ``nonstrict + strict`` that hold with equality on the closure."""
    _check_rows(sys)
    if sys.empty:
        raise EmptyRegionError("implied equations of an empty system")
    return interior_point(sys)[1]


def dimension(sys: ConstraintSystem) -> int:
    """Dimension of the region; ``-1`` when empty."""
    _check_rows(sys)
    if sys.empty or not lp_feasible(sys).feasible:
        return -1
    rows = sys.nonstrict + sys.strict
    implied = implied_equations(sys)
    return sys.dim - rank(list(sys.equations) + [rows[i] for i in implied], sys.dim)


def _implied_nonstrict(n, eqs, le, lt, point) -> list[int]:
    """Indices of ``le`` rows tight on the whole region; ``point`` lies in it."""
    point = list(point)
    implied = []
    for i, a in enumerate(le):
        if dot(a, point) < 0:
            continue
        w = strict_witness(n, eqs, le[:i] + le[i + 1 :], lt + [a])
        if w is None:
            implied.append(i)
        else:
            # the region is a convex cone, so sums of its points stay inside
            point = [p + q for p, q in zip(point, w)]
    return implied


def remove_redundant(sys: ConstraintSystem) -> ConstraintSystem:
    """Equivalent system with no deletable inequality.

    Inequalities tight on the whole region become equations.  The remaining
    rows are reduced modulo the equation span and deduplicated, then each
    survivor is tested by LP against the others with its sense flipped.
    """
    _check_rows(sys)
    if sys.empty:
        raise EmptyRegionError("redundancy removal on an empty system")
    n = sys.dim
    w = strict_witness(n, sys.equations, sys.nonstrict, sys.strict)
    if w is None:
        raise EmptyRegionError("redundancy removal on an empty system")
    le = list(sys.nonstrict)
    tight = set(_implied_nonstrict(n, sys.equations, le, list(sys.strict), w))
    basis, pivots = echelon(list(sys.equations) + [le[i] for i in tight], n)
    eqs = tuple(tuple(b) for b in basis)
    strict: dict[tuple, None] = {}
    for a in sys.strict:
        strict[reduce_modulo(a, basis, pivots)] = None
    nonstrict: dict[tuple, None] = {}
    for i, a in enumerate(le):
        if i in tight:
            continue
        r = reduce_modulo(a, basis, pivots)
        if any(r) and r not in strict:
            nonstrict[r] = None
    le = list(nonstrict)
    lt = list(strict)
    i = 0
    while i < len(le):
        a = le[i]
        rest = le[:i] + le[i + 1 :]
        if strict_witness(n, eqs, rest, lt + [tuple(-x for x in a)]) is None:
            le = rest
        else:
            i += 1
    i = 0
    while i < len(lt):
        a = lt[i]
        rest = lt[:i] + lt[i + 1 :]
        if strict_witness(n, eqs, le + [tuple(-x for x in a)], rest) is None:
            lt = rest
        else:
            i += 1
    return ConstraintSystem(n, eqs, tuple(le), tuple(lt), False)
