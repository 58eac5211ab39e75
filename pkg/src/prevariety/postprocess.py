"""From emitted cones to rays, maximal cones and oracle comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .cones import ClosedCone, Fan, describe_closed
from .enumeration import EnumerationStats
from .errors import OracleTooLargeError
from .kernel.linalg import dot, is_zero
from .kernel.lp import lp_feasible
from .kernel.system import ConstraintSystem
from .newton import NewtonPolytope

ORACLE_LIMIT = 10**6


@dataclass
class PrevarietyResult:
    cones: list  # ClosedCone, deduplicated, sorted by key
    rays: list
    maximal_by_dim: dict | None = None
    stats: EnumerationStats = field(default_factory=EnumerationStats)
    meta: dict = field(default_factory=dict)


def dedupe_closures(bodies: Iterable) -> list[ClosedCone]:
    """Canonical closed cones of the given systems or cones, one per point set."""
    seen = {}
    for b in bodies:
        body = getattr(b, "body", b)
        c = describe_closed(body)
        seen.setdefault(c.key, c)
    return [seen[k] for k in sorted(seen)]


def collect_rays(closures: Sequence[ClosedCone]) -> tuple[list[tuple], list[ClosedCone]]:
    """Sorted distinct rays of the pointed closures, plus the non-pointed ones."""
    rays, lineal = set(), []
    for c in closures:
        if c.pointed:
            rays.update(c.rays)
        else:
            lineal.append(c)
    return sorted(rays), lineal


def maximal_cones(closures: Sequence[ClosedCone]) -> tuple[list[ClosedCone], dict[int, int]]:
    """Closures not contained in another, and their count per dimension."""
    keep = [
        c for c in closures
        if not any(
            d.key != c.key and d.dimension >= c.dimension and c.is_subset_of(d)
            for d in closures
        )
    ]
    counts: dict[int, int] = {}
    for c in keep:
        counts[c.dimension] = counts.get(c.dimension, 0) + 1
    return sorted(keep, key=lambda c: c.key), dict(sorted(counts.items()))


def oracle_refine_closed(fans: Sequence[Fan]) -> list[ClosedCone]:
    """Brute-force common refinement of the closed fans, deduplicated per level."""
    if prod(len(f) for f in fans) > ORACLE_LIMIT:
        raise OracleTooLargeError(f"oracle limited to {ORACLE_LIMIT} cone combinations")
    level = {}
    for cone in fans[0]:
        body = cone.body.closure()
        level.setdefault(describe_closed(body).key, body)
    for fan in fans[1:]:
        nxt = {}
        for body in level.values():
            for d in fan:
                meet = body.meet(d.body.closure())
                if not lp_feasible(meet).feasible:
                    continue
                nxt.setdefault(describe_closed(meet).key, meet)
        level = nxt
    return dedupe_closures(level.values())


def verify_pretropism(w: Sequence[int], polytopes: Sequence[NewtonPolytope]) -> bool:
    """True iff the minimum of <w, .> is attained twice on every polytope."""
    if is_zero(w):
        raise ValueError("a pretropism must be nonzero")
    for p in polytopes:
        vals = sorted(dot(w, v) for v in p.vertices)
        if len(vals) < 2 or vals[0] != vals[1]:
            return False
    return True


def closure_system(c: ClosedCone) -> ConstraintSystem:
    return ConstraintSystem.build(c.ambient, c.equations, c.facets, ())
