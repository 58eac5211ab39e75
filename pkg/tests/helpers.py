"""Shared fixtures: small fans, cone samplers and seeded random systems."""

from __future__ import annotations

import random

from prevariety.cones import hypersurface_fan
from prevariety.kernel import extreme_rays
from prevariety.newton import newton_polytope
from prevariety.scheduler import victim_order
from prevariety.systems import PolynomialSystem, Support


def fans_of(system, seed=0):
    polys = [newton_polytope(s, seed=seed + i) for i, s in enumerate(system.supports)]
    return polys, [hypersurface_fan(p, i) for i, p in enumerate(polys)]


def closure_point(cone, rng, zero_prob=0.3):
    """Random integer point of the closure of ``cone``."""
    lin, rays = extreme_rays(cone.body.closure())
    x = [0] * cone.dim
    for r in rays:
        c = 0 if rng.random() < zero_prob else rng.randint(1, 5)
        x = [a + c * b for a, b in zip(x, r)]
    for l in lin:
        c = rng.randint(-5, 5)
        x = [a + c * b for a, b in zip(x, l)]
    return tuple(x)


def random_system(seed, dim=3, npolys=3, max_terms=4, hi=3) -> PolynomialSystem:
    """Seeded random system whose polytopes all have at least one edge."""
    rng = random.Random(seed)
    supports = []
    for _ in range(npolys):
        k = rng.randint(2, max_terms)
        pts = set()
        while len(pts) < k:
            pts.add(tuple(rng.randint(0, hi) for _ in range(dim)))
        supports.append(Support(dim, tuple(sorted(pts))))
    return PolynomialSystem(dim, tuple(f"x{i}" for i in range(dim)), tuple(supports), f"random-{seed}")


def check_trace(trace, workers):
    """Count policy violations in a recorded trace."""
    bad = 0
    seen = set()
    for ev in trace.events:
        if ev["action"] == "pop":
            bad += ev["depth"] != max(ev["nonempty"])
        elif ev["action"] == "steal":
            order = victim_order(ev["worker"], workers)
            probed = list(ev["probed"])
            bad += ev["depth"] != min(ev["nonempty"])
            bad += probed != order[: len(probed)] or ev["victim"] != order[len(probed)]
        else:
            continue
        bad += ev["tid"] in seen
        seen.add(ev["tid"])
    return bad, seen
