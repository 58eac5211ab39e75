"""Integer vector helpers and fraction-free elimination.

Vectors are plain tuples of Python ints.  Every routine here is exact.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

IntVector = tuple  # tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries (positive scaling only)."""
    g = gcd(*v) if v else 0
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def scale_free(v: Sequence[int]) -> IntVector:
    """Primitive representative with the first nonzero entry positive."""
    v = primitive(v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def echelon(rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced echelon form.

    Returns ``(basis, pivots)``: primitive integer rows with positive pivot
    entries, zeros above and below each pivot, sorted by pivot column.  For a
    fixed row space the result is unique.
    """
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        piv = None
        for k, r in enumerate(work):
            if r[col]:
                piv = k
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        if prow[col] < 0:
            prow = [-x for x in prow]
        p = prow[col]
        new_work = []
        for r in work:
            c = r[col]
            if c:
                r = [p * x - c * y for x, y in zip(r, prow)]
                if not any(r):
                    continue
                g = gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
            new_work.append(r)
        work = new_work
        for i, b in enumerate(basis):
            c = b[col]
            if c:
                b = [p * x - c * y for x, y in zip(b, prow)]
                g = gcd(*b)
                basis[i] = [x // g for x in b] if g > 1 else b
        g = gcd(*prow)
        basis.append([x // g for x in prow] if g > 1 else prow)
        pivots.append(col)
        if not work:
            break
    return basis, pivots


def rank(rows: Iterable[Sequence[int]], ncols: int) -> int:
    """Rank by fraction-free forward elimination."""
    work = [list(r) for r in rows if any(r)]
    rk = 0
    for col in range(ncols):
        piv = None
        for k, r in enumerate(work):
            if r[col]:
                piv = k
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        p = prow[col]
        nxt = []
        for r in work:
            c = r[col]
            if c:
                r = [p * x - c * y for x, y in zip(r, prow)]
                if not any(r):
                    continue
                g = gcd(*r)
                if g > 1:
                    r = [x // g for x in r]
            nxt.append(r)
        work = nxt
        rk += 1
        if not work:
            break
    return rk


def kernel_basis(rows: Iterable[Sequence[int]], ncols: int) -> list[IntVector]:
    """Integer basis of ``{x : r.x = 0 for every row r}``."""
    basis, pivots = echelon(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        # x_f = L (lcm-ish common scale), pivots solved from their rows
        scale = 1
        for b, p in zip(basis, pivots):
            if b[f]:
                scale = scale * b[p] // gcd(scale, b[p])
        v = [0] * ncols
        v[f] = scale
        for b, p in zip(basis, pivots):
            if b[f]:
                v[p] = -b[f] * scale // b[p]
        out.append(primitive(v))
    return out


def reduce_modulo(row: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int]) -> IntVector:
    """Canonical primitive representative of ``row + span(basis)``.

    ``basis``/``pivots`` must come from :func:`echelon`.  Zero pivot entries
    are forced by positive rescaling, so rows differing by a positive multiple
    modulo the span reduce to the same vector.
    """
    r = list(row)
    for b, p in zip(basis, pivots):
        c = r[p]
        if c:
            bp = b[p]
            r = [bp * x - c * y for x, y in zip(r, b)]
    return primitive(r)
