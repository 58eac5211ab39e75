"""Double description method for closed polyhedral cones.

Constraints are inserted one at a time.  Lineality is split off first: while
a lineality generator is not orthogonal to the new row, it is used to
project everything onto the row's hyperplane and becomes a ray.  Otherwise a
standard DD step runs, with adjacency decided combinatorially from the zero
sets of the current rays (bitmasks over the rows inserted so far).
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from ..errors import MalformedInputError
from .linalg import dot, kernel_basis, rank
from .system import ConstraintSystem


def _prim(v: list[int]) -> tuple[int, ...]:
    g = gcd(*v)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _matvec(basis: Sequence[Sequence[int]], y: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for coef, b in zip(y, basis):
        if coef:
            for j, bj in enumerate(b):
                if bj:
                    out[j] += coef * bj
    return _prim(out)


def cone_generators(
    k: int, rows: Sequence[Sequence[int]]
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Generators of ``{y in R^k : r.y <= 0 for r in rows}``.

    Returns ``(lineality, rays)`` with primitive rays.
    """
    order = sorted(range(len(rows)), key=lambda i: sum(1 for x in rows[i] if x == 0))
    lin: list[list[int]] = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    seen = 0  # bitmask of inserted rows
    for bit, idx in enumerate(order):
        a = rows[idx]
        mask = 1 << bit
        vals = [dot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v), -1)
        if piv >= 0:
            l0 = lin.pop(piv)
            v0 = vals.pop(piv)
            if v0 > 0:
                l0 = [-x for x in l0]
                v0 = -v0
            # v0 < 0: project along l0 onto a.y = 0
            new_lin = []
            for l, v in zip(lin, vals):
                if v:
                    l = list(_prim([-v0 * x + v * y for x, y in zip(l, l0)]))
                new_lin.append(l)
            lin = new_lin
            new_rays = []
            for r in rays:
                v = dot(a, r)
                if v:
                    r = _prim([-v0 * x + v * y for x, y in zip(r, l0)])
                new_rays.append(r)
            rays = new_rays
            zeros = [z | mask for z in zeros]
            rays.append(_prim(l0))
            zeros.append(seen)
            seen |= mask
            continue
        seen |= mask
        pos, neg, keep_r, keep_z = [], [], [], []
        for i, (r, z) in enumerate(zip(rays, zeros)):
            v = dot(a, r)
            if v > 0:
                pos.append((i, v))
            else:
                keep_r.append(r)
                keep_z.append(z | mask if v == 0 else z)
                if v < 0:
                    neg.append((i, v))
        if not pos:
            rays, zeros = keep_r, keep_z
            continue
        need = k - len(lin) - 2
        nz = len(zeros)
        for ip, vp in pos:
            zp = zeros[ip]
            rp = rays[ip]
            for iN, vn in neg:
                common = zp & zeros[iN]
                if need > 0 and bin(common).count("1") < need:
                    continue
                adjacent = True
                for j in range(nz):
                    if j != ip and j != iN and (zeros[j] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                rn = rays[iN]
                keep_r.append(_prim([vp * x - vn * y for x, y in zip(rn, rp)]))
                keep_z.append(common | mask)
        rays, zeros = keep_r, keep_z
    return [tuple(l) for l in lin], rays


def extreme_rays(sys: ConstraintSystem) -> tuple[list[tuple], list[tuple]]:
    """Lineality basis and primitive extreme rays of a closed system."""
    if sys.strict:
        raise MalformedInputError("extreme_rays operates on closed systems only")
    n = sys.dim
    if sys.equations:
        basis = kernel_basis(sys.equations, n)
    else:
        basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    k = len(basis)
    if k == 0:
        return [], []
    rows = []
    for a in sys.nonstrict:
        r = _prim([dot(a, b) for b in basis])
        if any(r):
            rows.append(r)
    lin, rays = cone_generators(k, rows)
    lineality = [_matvec(basis, l, n) for l in lin]
    out_rays = sorted({_matvec(basis, r, n) for r in rays})
    return lineality, out_rays


def pointed_rank(lineality: Sequence[Sequence[int]], rays: Sequence[Sequence[int]], n: int) -> int:
    return rank(list(lineality) + list(rays), n)
