import itertools
import random

import numpy as np
import pytest

from prevariety import newton
from prevariety.errors import DegenerateOrientationError
from prevariety.kernel import dot
from prevariety.newton import compute_edges, compute_vertices, newton_polytope, orient
from prevariety.systems import Support

from oracles import affine_rank, brute_vertices

CUBE = [p for p in itertools.product((0, 1), repeat=3)]


def random_support(rng, dim=3, npts=10, hi=4):
    pts = set()
    while len(pts) < npts:
        pts.add(tuple(rng.randint(0, hi) for _ in range(dim)))
    return Support(dim, tuple(sorted(pts)))


def full_dim_supports(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = random_support(rng, npts=rng.randint(4, 10))
        if affine_rank(s.points) == 3:
            out.append(s)
    return out


def test_square_drops_center():
    s = Support(2, ((0, 0), (2, 0), (0, 2), (2, 2), (1, 1)))
    assert compute_vertices(s) == [(0, 0), (0, 2), (2, 0), (2, 2)]


def test_simplex_keeps_all():
    pts = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    assert set(compute_vertices(Support(4, pts))) == set(pts)


@pytest.mark.parametrize("k", range(50))
def test_vertices_match_triple_oracle(k):
    s = full_dim_supports(50, 11)[k]
    assert set(compute_vertices(s)) == brute_vertices(s.points)


def test_vertices_ignore_point_order():
    rng = random.Random(3)
    for s in full_dim_supports(10, 12):
        pts = list(s.points)
        rng.shuffle(pts)
        assert compute_vertices(Support(3, tuple(pts))) == compute_vertices(s)


def test_square_edges():
    verts = [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sorted(compute_edges(verts)) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_segment_edge():
    assert compute_edges([(0, 0, 0), (1, 1, 1)]) == [(0, 1)]


def _oracle_edges(verts):
    """Pairs whose common supporting planes have normals of rank 2."""
    planes = []
    for a, b, c in itertools.combinations(verts, 3):
        nrm = np.cross(np.subtract(b, a), np.subtract(c, a))
        if not nrm.any():
            continue
        vals = [int(np.dot(nrm, q)) for q in verts]
        base = int(np.dot(nrm, a))
        if min(vals) == base or max(vals) == base:
            planes.append((nrm, base))
    out = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        through = [n for n, b in planes if np.dot(n, verts[i]) == b and np.dot(n, verts[j]) == b]
        if through and np.linalg.matrix_rank(np.array(through, dtype=float)) == 2:
            out.append((i, j))
    return out


def test_cube_has_twelve_edges():
    edges = compute_edges(CUBE)
    assert len(edges) == 12
    assert sorted(edges) == _oracle_edges(CUBE)
    for i, j in edges:
        assert sum(a != b for a, b in zip(CUBE[i], CUBE[j])) == 1


@pytest.mark.parametrize("k", range(20))
def test_edges_match_plane_oracle(k):
    s = full_dim_supports(20, 13)[k]
    verts = compute_vertices(s)
    assert sorted(compute_edges(verts)) == _oracle_edges(verts)


def test_figure_cube_orientation():
    # labels 1..8 of the figure are the heights' order under r = (2, 4, -1)
    p = orient(CUBE, compute_edges(CUBE), r=(2, 4, -1))
    labels = {(0, 0, 1): 1, (0, 0, 0): 2, (1, 0, 1): 3, (1, 0, 0): 4,
              (0, 1, 1): 5, (0, 1, 0): 6, (1, 1, 1): 7, (1, 1, 0): 8}
    arrows = {((1, 0, 1), (1, 1, 1)), ((1, 1, 1), (1, 1, 0)), ((0, 1, 1), (1, 1, 1)),
              ((1, 0, 1), (1, 0, 0)), ((0, 0, 1), (0, 0, 0)), ((0, 0, 1), (0, 1, 1)),
              ((0, 0, 1), (1, 0, 1)), ((0, 1, 1), (0, 1, 0)), ((0, 1, 0), (1, 1, 0)),
              ((1, 0, 0), (1, 1, 0)), ((0, 0, 0), (0, 1, 0)), ((0, 0, 0), (1, 0, 0))}
    got = {(p.vertices[u], p.vertices[v]) for u, v in p.edges}
    assert got == arrows
    h = p.heights()
    assert sorted(range(8), key=h.__getitem__) == sorted(range(8), key=lambda i: labels[p.vertices[i]])
    sink = max(range(8), key=h.__getitem__)
    assert p.vertices[sink] == (1, 1, 0)
    assert all(incoming for _, incoming in p.incident(sink))


def test_segment_points_up():
    p = newton_polytope(Support(2, ((0, 1), (1, 0))), seed=5)
    (u, v), = p.edges
    assert dot(p.orientation_vector, p.vertices[u]) < dot(p.orientation_vector, p.vertices[v])


def _sinks(nodes, edges):
    has_out = {u for u, v in edges if u in nodes and v in nodes}
    return [x for x in nodes if x not in has_out]


def _facets(verts):
    faces = set()
    for a, b, c in itertools.combinations(verts, 3):
        nrm = np.cross(np.subtract(b, a), np.subtract(c, a))
        if not nrm.any():
            continue
        vals = [int(np.dot(nrm, q)) for q in verts]
        base = int(np.dot(nrm, a))
        if min(vals) == base or max(vals) == base:
            faces.add(frozenset(i for i, x in enumerate(vals) if x == base))
    return faces


@pytest.mark.parametrize("k", range(20))
def test_orientation_is_unique_sink(k):
    s = full_dim_supports(20, 14)[k]
    p = newton_polytope(s, seed=k)
    h = p.heights()
    assert len(set(h)) == len(h)
    assert all(h[u] < h[v] for u, v in p.edges)
    everything = set(range(len(p.vertices)))
    assert _sinks(everything, p.edges) == [max(everything, key=h.__getitem__)]
    assert len(_sinks(everything, [(v, u) for u, v in p.edges])) == 1
    for face in _facets(list(p.vertices)):
        assert len(_sinks(face, p.edges)) == 1


def test_orientation_is_seeded():
    s = full_dim_supports(1, 15)[0]
    assert newton_polytope(s, seed=4) == newton_polytope(s, seed=4)
    assert newton_polytope(s, seed=4).orientation_vector != newton_polytope(s, seed=5).orientation_vector
    r = newton_polytope(s, seed=4).orientation_vector
    assert all(abs(x) <= 2**16 for x in r)


def test_orientation_retry_budget(monkeypatch):
    monkeypatch.setattr(newton, "ORIENTATION_BOUND", 0)
    with pytest.raises(DegenerateOrientationError):
        orient(CUBE, compute_edges(CUBE), seed=1)
