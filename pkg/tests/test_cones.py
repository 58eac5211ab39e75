import random

import pytest

from prevariety.cones import (
    HalfOpenCone,
    closure_key,
    create_half_open_cones,
    describe_closed,
    hypersurface_fan,
    intersect,
    vertex_cone,
)
from prevariety.errors import DegenerateFanError, EmptyRegionError
from prevariety.kernel import ConstraintSystem, dimension, lp_feasible
from prevariety.newton import newton_polytope, orient
from prevariety.systems import Support, gen_cyclic, gen_nbody

from helpers import closure_point, fans_of

S = ConstraintSystem.build


def cone(dim, eq=(), le=(), lt=()):
    return HalfOpenCone(S(dim, eq, le, lt))


def square():
    return newton_polytope(Support(2, ((0, 0), (0, 1), (1, 0), (1, 1))), seed=3)


def test_segment_vertex_cones():
    p = orient([(0,), (1,)], [(0, 1)], r=(1,))
    a, b = vertex_cone(p, 0), vertex_cone(p, 1)
    assert b.body.nonstrict == ((1,),) and b.body.strict == ()
    assert a.body.strict == ((-1,),) and a.body.nonstrict == ()
    for w in range(-5, 6):
        assert a.contains((w,)) + b.contains((w,)) == 1


def test_square_vertex_cones_partition_plane():
    p = square()
    cones = [vertex_cone(p, v) for v in range(4)]
    assert sum(c.contains((0, 0)) for c in cones) == 1
    for x in range(-6, 7):
        for y in range(-6, 7):
            assert sum(c.contains((x, y)) for c in cones) == 1


def test_all_strict_cone_has_no_boundary_pieces():
    assert create_half_open_cones(cone(2, lt=[(1, 0), (0, 1)])) == []


def test_one_nonstrict_row_gives_one_piece():
    (piece,) = create_half_open_cones(cone(2, le=[(1, 0)], lt=[(0, 1)]))
    assert piece.body.equations == ((1, 0),)
    assert piece.body.strict == ((0, 1),)
    assert piece.contains((0, -3)) and not piece.contains((-1, -3))


@pytest.mark.parametrize("i", range(5))
def test_cyclic5_pieces_match_incoming_edges(i):
    p = newton_polytope(gen_cyclic(5).supports[i], seed=i)
    total = 0
    for v in range(len(p.vertices)):
        pieces = create_half_open_cones(vertex_cone(p, v))
        incoming = sum(inc for _, inc in p.incident(v))
        assert len(pieces) == incoming
        total += len(pieces)
    assert total <= len(p.edges)


def _boundary_check(c, pieces, rng, dim, count=300):
    for _ in range(count):
        x = tuple(rng.randint(-3, 3) for _ in range(dim))
        hits = sum(q.contains(x) for q in pieces)
        on_boundary = c.contains(x) and any(
            sum(a * b for a, b in zip(row, x)) == 0 for row in c.body.nonstrict
        )
        assert hits == (1 if on_boundary else 0)


@pytest.mark.parametrize("seed", range(10))
def test_pieces_partition_the_boundary(seed):
    rng = random.Random(seed)
    pts = set()
    while len(pts) < 6:
        pts.add(tuple(rng.randint(0, 3) for _ in range(3)))
    p = newton_polytope(Support(3, tuple(sorted(pts))), seed=seed)
    for v in range(len(p.vertices)):
        c = vertex_cone(p, v)
        _boundary_check(c, create_half_open_cones(c), rng, 3)


def test_binomial_fan_is_a_line():
    p = newton_polytope(Support(2, ((0, 1), (1, 0))))
    (c,) = hypersurface_fan(p)
    closed = describe_closed(c.body)
    assert closed.dimension == 1 and not closed.pointed
    assert closed.equations == ((1, -1),)
    assert c.contains((4, 4)) and c.contains((-2, -2)) and not c.contains((1, 0))


def test_square_fan_is_four_half_lines():
    fan = hypersurface_fan(square())
    assert len(fan) == 4
    keys = {closure_key(c) for c in fan}
    expected = {
        closure_key(S(2, [(1, 0)], [(0, 1)])),
        closure_key(S(2, [(1, 0)], [(0, -1)])),
        closure_key(S(2, [(0, 1)], [(1, 0)])),
        closure_key(S(2, [(0, 1)], [(-1, 0)])),
    }
    assert keys == expected


def test_cyclic8_first_fan_has_28_cones():
    p = newton_polytope(gen_cyclic(8).supports[0])
    assert len(p.edges) == 28
    assert len(hypersurface_fan(p)) == 28


def test_single_point_polytope_is_degenerate():
    p = newton_polytope(Support(2, ((1, 1),)))
    with pytest.raises(DegenerateFanError):
        hypersurface_fan(p)


def test_fan_cones_are_nonempty_with_witness():
    _, fans = fans_of(gen_cyclic(5))
    for f in fans:
        for j, c in enumerate(f):
            assert c.witness is not None and c.contains(c.witness)
            assert c.origins == ((f.polytope_index, j),)


@pytest.mark.parametrize("name", ["cyclic-8", "nbody-4"])
def test_partition_properties(name):
    system = gen_cyclic(8) if name == "cyclic-8" else gen_nbody(4)
    polys, fans = fans_of(system)
    rng = random.Random(name)
    for p, fan in zip(polys, fans):
        vcones = [vertex_cone(p, v) for v in range(len(p.vertices))]
        for _ in range(200):
            w = tuple(rng.randint(-3, 3) for _ in range(p.dim))
            assert sum(c.contains(w) for c in vcones) == 1
        for _ in range(40):
            w = closure_point(fan[rng.randrange(len(fan))], rng)
            assert sum(c.contains(w) for c in fan) == 1


def test_intersect_examples():
    assert intersect(cone(1, le=[(-1,)]), cone(1, lt=[(1,)])).empty
    both = intersect(cone(1, le=[(1,)]), cone(1, le=[(-1,)]), reduce=True)
    assert not both.empty
    assert both.body.equations == ((1,),) and both.body.nonstrict == ()


def _random_cone(rng, dim=3):
    while True:
        kinds = {"eq": [], "le": [], "lt": []}
        for _ in range(rng.randint(1, 4)):
            kinds[rng.choice(["le", "le", "lt", "eq"])].append(tuple(rng.randint(-3, 3) for _ in range(dim)))
        c = HalfOpenCone(S(dim, kinds["eq"], kinds["le"], kinds["lt"]))
        v = lp_feasible(c.body)
        if v.feasible:
            return HalfOpenCone(c.body, (), v.witness)


@pytest.mark.parametrize("seed", range(20))
def test_intersection_membership_and_symmetry(seed):
    rng = random.Random(seed)
    a, b = _random_cone(rng), _random_cone(rng)
    ab, ba = intersect(a, b), intersect(b, a, reduce=True)
    assert ab.empty == ba.empty
    for _ in range(500):
        x = tuple(rng.randint(-4, 4) for _ in range(3))
        assert ab.contains(x) == (a.contains(x) and b.contains(x)) == ba.contains(x)
    if not ab.empty:
        assert closure_key(ab) == closure_key(ba)
        assert dimension(ab.body) <= min(dimension(a.body), dimension(b.body))


def test_closure_key_examples():
    assert closure_key(S(1, strict=[(1,)])) == closure_key(S(1, nonstrict=[(2,)], strict=[(1,)]))
    assert closure_key(S(1, strict=[(1,)])) == closure_key(S(1, nonstrict=[(1,)]))
    a = S(2, equations=[(1, 0)], nonstrict=[(0, 1)])
    b = S(2, nonstrict=[(0, 1), (1, 0), (-1, 0)])
    assert closure_key(a) == closure_key(b)


def test_closure_key_rejects_empty():
    with pytest.raises(EmptyRegionError):
        closure_key(S(2, strict=[(0, 0)]))


def scale(row, k):
    return tuple(k * x for x in row)


def test_closure_key_is_canonical_under_rewriting():
    rng = random.Random(99)
    for _ in range(100):
        c = _random_cone(rng)
        body = c.body
        # add row combinations that are already implied, scale and shuffle rows
        extra = []
        if len(body.nonstrict) >= 2:
            extra.append(tuple(x + y for x, y in zip(body.nonstrict[0], body.nonstrict[1])))
        le = [scale(r, rng.randint(1, 4)) for r in body.nonstrict] + extra
        lt = [scale(r, rng.randint(1, 4)) for r in body.strict]
        eq = [scale(r, rng.choice((-2, -1, 1, 3))) for r in body.equations]
        rng.shuffle(le)
        rng.shuffle(lt)
        rng.shuffle(eq)
        assert closure_key(S(3, eq, le, lt)) == closure_key(body)


def test_closed_cone_subset():
    half = describe_closed(S(2, nonstrict=[(0, 1)]))
    ray = describe_closed(S(2, equations=[(1, 0)], nonstrict=[(0, 1)]))
    assert ray.is_subset_of(half) and not half.is_subset_of(ray)
