"""Half-open cones and the disjoint decomposition of tropical hypersurfaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateFanError, EmptyRegionError
from .kernel.ddm import extreme_rays
from .kernel.linalg import dot, echelon, kernel_basis, reduce_modulo
from .kernel.lp import lp_feasible, remove_redundant
from .kernel.system import ConstraintSystem
from .newton import NewtonPolytope


@dataclass(frozen=True)
class HalfOpenCone:
    """A constraint system plus provenance and an optional LP witness.

    ``origins`` lists the ``(fan, cone)`` pairs whose intersection this cone
    is; a vertex cone has no origins.  ``witness is None`` means the cone has
    not been shown nonempty (or is known empty when ``empty`` is set).
    """

    body: ConstraintSystem
    origins: tuple = ()
    witness: tuple | None = None
    empty: bool = False

    @property
    def dim(self) -> int:
        return self.body.dim

    def contains(self, x: Sequence[int]) -> bool:
        return self.body.contains(x)

    def is_empty(self) -> bool:
        if self.empty:
            return True
        if self.witness is not None:
            return False
        return not lp_feasible(self.body).feasible


@dataclass(frozen=True)
class Fan:
    polytope_index: int
    cones: tuple

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __getitem__(self, j):
        return self.cones[j]


def vertex_cone(p: NewtonPolytope, v: int) -> HalfOpenCone:
    """Half-open normal cone of vertex ``v`` (minimizing convention).

    Each edge to a neighbour ``u`` yields the row ``v - u``: non-strict for an
    incoming edge, strict for an outgoing one.
    """
    vert = p.vertices[v]
    le, lt = [], []
    for u, incoming in p.incident(v):
        row = tuple(a - b for a, b in zip(vert, p.vertices[u]))
        (le if incoming else lt).append(row)
    return HalfOpenCone(ConstraintSystem.build(p.dim, (), le, lt))


def create_half_open_cones(c: HalfOpenCone) -> list[HalfOpenCone]:
    """Split the boundary of ``c`` into disjoint half-open cones.

    Unrolled form of the recursion: the first non-strict row becomes an
    equation for the emitted piece and strict for the remainder.
    """
    out = []
    body = c.body
    eqs, le, lt = body.equations, body.nonstrict, body.strict
    while le:
        a, le = le[0], le[1:]
        piece = ConstraintSystem(body.dim, eqs + (a,), le, lt)
        verdict = lp_feasible(piece)
        if verdict.feasible:
            out.append(HalfOpenCone(piece, c.origins, verdict.witness))
        lt = lt + (a,)
    return out


def hypersurface_fan(p: NewtonPolytope, index: int = 0) -> Fan:
    """Disjoint half-open cones covering the tropical hypersurface of ``p``.

    Vertices are visited by increasing height ``<r, v>``.
    """
    if not p.edges:
        raise DegenerateFanError(
            f"polytope {index} has a single vertex; its tropical hypersurface is empty"
        )
    heights = p.heights()
    cones = []
    for v in sorted(range(len(p.vertices)), key=heights.__getitem__):
        cones.extend(create_half_open_cones(vertex_cone(p, v)))
    cones = tuple(
        HalfOpenCone(c.body, ((index, j),), c.witness) for j, c in enumerate(cones)
    )
    return Fan(index, cones)


def intersect(a: HalfOpenCone, b: HalfOpenCone, reduce: bool = False) -> HalfOpenCone:
    """Intersection with an emptiness verdict.

    With ``reduce`` the body of a nonempty result is made irredundant, which
    callers request only for cones that will be intersected further.
    """
    body = a.body.meet(b.body)
    origins = tuple(sorted(set(a.origins) | set(b.origins)))
    verdict = lp_feasible(body, (a.witness, b.witness))
    if not verdict.feasible:
        return HalfOpenCone(body, origins, None, True)
    if reduce:
        body = remove_redundant(body)
    return HalfOpenCone(body, origins, verdict.witness)


@dataclass(frozen=True)
class ClosedCone:
    """Canonical description of a closed cone.

    ``equations`` is the reduced echelon basis of the orthogonal complement of
    the cone's span, ``facets`` the primitive facet normals reduced modulo
    those equations, sorted.  Equal point sets give equal ``key``.
    """

    ambient: int
    dimension: int
    equations: tuple
    facets: tuple
    rays: tuple
    lineality: tuple

    @property
    def key(self) -> tuple:
        return (self.equations, self.facets)

    def contains(self, x: Sequence[int]) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(
            dot(f, x) <= 0 for f in self.facets
        )

    def is_subset_of(self, other: "ClosedCone") -> bool:
        for l in self.lineality:
            if not other.contains(l) or not other.contains(tuple(-x for x in l)):
                return False
        return all(other.contains(r) for r in self.rays)

    @property
    def pointed(self) -> bool:
        return not self.lineality


def describe_closed(sys: ConstraintSystem) -> ClosedCone:
    """Canonical form, rays and lineality of the closure of ``sys``."""
    closed = sys.closure()
    n = sys.dim
    lineality, rays = extreme_rays(closed)
    gens = list(lineality) + list(rays)
    if gens:
        eq_basis, pivots = echelon(kernel_basis(gens, n), n)
    else:
        eq_basis, pivots = echelon([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], n)
    dim = n - len(eq_basis)
    # facets: rows whose tight ray set is maximal among non-implied rows
    tight = []
    for a in closed.nonstrict:
        mask = 0
        strictly_neg = False
        for k, r in enumerate(rays):
            v = dot(a, r)
            if v == 0:
                mask |= 1 << k
            elif v < 0:
                strictly_neg = True
        if strictly_neg:
            tight.append((mask, a))
    facets = set()
    for mask, a in tight:
        if any(m != mask and (m & mask) == mask for m, _ in tight):
            continue
        facets.add(reduce_modulo(a, eq_basis, pivots))
    return ClosedCone(
        n,
        dim,
        tuple(tuple(b) for b in eq_basis),
        tuple(sorted(facets)),
        tuple(rays),
        tuple(lineality),
    )


def closure_key(c: HalfOpenCone | ConstraintSystem) -> tuple:
    body = c.body if isinstance(c, HalfOpenCone) else c
    if body.empty:
        raise EmptyRegionError("closure key of an empty cone")
    return describe_closed(body).key
