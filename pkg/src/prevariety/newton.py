"""Newton polytopes: vertices, edge graph and a generic edge orientation."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DegenerateOrientationError
from .kernel.linalg import dot
from .kernel.simplex import strict_witness
from .systems import Support

ORIENTATION_BOUND = 2**16
ORIENTATION_RETRIES = 64


@dataclass(frozen=True)
class NewtonPolytope:
    dim: int
    vertices: tuple
    edges: tuple  # directed (u, v) index pairs with <r,u> < <r,v>
    orientation_vector: tuple
    seed: object = None

    def heights(self) -> list[int]:
        return [dot(self.orientation_vector, v) for v in self.vertices]

    def incident(self, v: int) -> list[tuple[int, bool]]:
        """Neighbours of vertex ``v`` as ``(u, incoming)`` in edge-list order."""
        out = []
        for a, b in self.edges:
            if b == v:
                out.append((a, True))
            elif a == v:
                out.append((b, False))
        return out


def _diff(p, q):
    return tuple(x - y for x, y in zip(p, q))


def compute_vertices(s: Support) -> list[tuple]:
    """Points of ``s`` that are vertices of its convex hull, in sorted order.

    ``p`` is a vertex iff some ``w`` has ``<w,p> < <w,q>`` for every other
    point ``q``: the LP dual of ``p`` not being a convex combination of the
    others.
    """
    pts = sorted(set(s.points))
    if len(pts) <= 2:
        return pts
    out = []
    for p in pts:
        rows = [_diff(p, q) for q in pts if q != p]
        if strict_witness(s.dim, (), (), rows) is not None:
            out.append(p)
    return out


def compute_edges(vertices) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, spanning edges of the hull.

    ``{u, v}`` is an edge iff some ``w`` is minimized exactly on ``u`` and
    ``v``, i.e. the edge's normal cone is ``(n-1)``-dimensional.
    """
    verts = [tuple(v) for v in vertices]
    if len(verts) < 2:
        return []
    n = len(verts[0])
    if len(verts) == 2:
        return [(0, 1)]
    edges = []
    for i in range(len(verts)):
        u = verts[i]
        others_u = {k: _diff(u, verts[k]) for k in range(len(verts)) if k != i}
        for j in range(i + 1, len(verts)):
            eq = (_diff(u, verts[j]),)
            strict = [r for k, r in others_u.items() if k != j]
            if strict_witness(n, eq, (), strict) is not None:
                edges.append((i, j))
    return edges


def orient(vertices, edges, seed=0, r=None) -> NewtonPolytope:
    """Direct every edge towards the endpoint with larger ``<r, .>``.

    Unless ``r`` is given it is drawn with entries uniform in
    ``[-2^16, 2^16]`` from ``random.Random(seed)`` and redrawn while two
    vertices share a height.
    """
    verts = tuple(tuple(v) for v in vertices)
    n = len(verts[0]) if verts else 0
    if r is not None:
        r = tuple(r)
        h = [dot(r, v) for v in verts]
        if len(set(h)) != len(h):
            raise DegenerateOrientationError(f"{r} gives two vertices the same height")
    else:
        rng = random.Random(seed)
        for _ in range(ORIENTATION_RETRIES):
            r = tuple(rng.randint(-ORIENTATION_BOUND, ORIENTATION_BOUND) for _ in range(n))
            h = [dot(r, v) for v in verts]
            if len(set(h)) == len(h):
                break
        else:
            raise DegenerateOrientationError(
                f"no injective orientation after {ORIENTATION_RETRIES} draws"
            )
    directed = []
    for a, b in edges:
        directed.append((a, b) if h[a] < h[b] else (b, a))
    return NewtonPolytope(n, verts, tuple(directed), r, seed)


def newton_polytope(s: Support, seed=0) -> NewtonPolytope:
    verts = compute_vertices(s)
    return orient(verts, compute_edges(verts), seed)
