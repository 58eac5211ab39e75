"""Exact simplex for strict feasibility of homogeneous systems.

The region ``{E x = 0, A x <= 0, A' x < 0}`` is nonempty iff the closed cone
``{E x = 0, A x <= 0, A' x + t <= 0, t >= 0}`` contains a point with
``t > 0``.  We maximize ``t`` with Bland's rule.  Because every right-hand
side is zero, a basic solution is always the origin and only the sign
pattern of the dictionary matters for the ratio test: the cone is nonempty
exactly when some entering column is unbounded, i.e. the bound ``t <= 1``
would be the only blocking row.  The unbounded column itself is the witness
direction.

Dictionary rows are kept as primitive integer vectors.  A row's positive
scale is irrelevant for constraint rows; rows of basic free variables carry
an explicit denominator so the witness can be read off exactly.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def _pivot_row(prow: list[int], c: int) -> tuple[list[int], int, int]:
    """Row expressing the entering variable; returns (row, sign, |pivot|)."""
    p = prow[c]
    if p > 0:
        row = [-x for x in prow]
        row[c] = 1
        return row, 1, p
    row = list(prow)
    row[c] = -1
    return row, -1, -p


def _substitute(row: list[int], prow: list[int], c: int, s: int) -> list[int]:
    p = prow[c]
    a = row[c]
    if s > 0:
        new = [p * x - a * y for x, y in zip(row, prow)]
        new[c] = a
    else:
        new = [a * y - p * x for x, y in zip(row, prow)]
        new[c] = -a
    g = gcd(*new)
    if g > 1:
        new = [x // g for x in new]
    return new


def strict_witness(
    dim: int,
    equations: Sequence[Sequence[int]],
    nonstrict: Sequence[Sequence[int]],
    strict: Sequence[Sequence[int]],
) -> tuple[int, ...] | None:
    """Return an integer point of the half-open region, or ``None`` if empty.

    Rows are assumed nonzero and of length ``dim``.
    """
    if not strict:
        return (0,) * dim
    d = dim
    # columns: 0..d-1 -> x_j (free), d -> t ; var ids: x_j=j, t=d, slack k=d+1+k
    cols = list(range(d + 1))
    rows: list[list[int]] = []
    rvar: list[int] = []
    k = d + 1
    neq = len(equations)
    for a in equations:
        r = [-x for x in a]
        r.append(0)
        rows.append(r)
        rvar.append(k)
        k += 1
    for a in nonstrict:
        r = [-x for x in a]
        r.append(0)
        rows.append(r)
        rvar.append(k)
        k += 1
    for a in strict:
        r = [-x for x in a]
        r.append(-1)
        rows.append(r)
        rvar.append(k)
        k += 1
    obj = [0] * d + [1]
    # free rows: (coefficients, denominator, x index)
    free_rows: list[list] = []

    def pivot(r: int, c: int) -> tuple[list[int], int]:
        nonlocal obj
        prow = rows[r]
        newrow, s, ap = _pivot_row(prow, c)
        for i, row in enumerate(rows):
            if i != r and row[c]:
                rows[i] = _substitute(row, prow, c, s)
        for fr in free_rows:
            row = fr[0]
            if row[c]:
                new = _substitute_raw(row, prow, c, s)
                den = fr[1] * ap
                g = gcd(den, *new)
                if g > 1:
                    new = [x // g for x in new]
                    den //= g
                fr[0] = new
                fr[1] = den
        if obj[c]:
            obj = _substitute(obj, prow, c, s)
        return newrow, ap

    def drop_column(c: int) -> None:
        for row in rows:
            del row[c]
        for fr in free_rows:
            del fr[0][c]
        del obj[c]
        del cols[c]

    # equations: eliminate free variables, then drop the fixed slack column
    eq_rows = list(range(neq))
    for _ in eq_rows:
        row = rows[0]
        c = -1
        for j, cv in enumerate(cols):
            if cv < d and row[j]:
                c = j
                break
        if c < 0:
            # dependent equation; its free part vanished and t-coefficient is 0
            if any(row):
                raise AssertionError("equation row reduced to a non-free residue")
            del rows[0]
            del rvar[0]
            continue
        newrow, ap = pivot(0, c)
        xvar = cols[c]
        del rows[0]
        del rvar[0]
        free_rows.append([newrow, ap, xvar])
        drop_column(c)

    # remaining free variables: pivot into the basis on any row mentioning them
    j = 0
    while j < len(cols):
        cv = cols[j]
        if cv >= d:
            j += 1
            continue
        r = -1
        best = None
        for i, row in enumerate(rows):
            v = row[j]
            if v:
                av = v if v > 0 else -v
                if best is None or av < best:
                    best = av
                    r = i
                    if av == 1:
                        break
        if r < 0:
            # unconstrained direction; set this coordinate to zero
            drop_column(j)
            continue
        newrow, ap = pivot(r, j)
        cols[j] = rvar[r]
        free_rows.append([newrow, ap, cv])
        del rows[r]
        del rvar[r]
        j += 1

    # Bland's rule on the homogeneous dictionary
    while True:
        c = -1
        best = None
        for j, v in enumerate(obj):
            if v > 0:
                cv = cols[j]
                if best is None or cv < best:
                    best = cv
                    c = j
        if c < 0:
            return None
        r = -1
        best = None
        for i, row in enumerate(rows):
            if row[c] < 0:
                bv = rvar[i]
                if best is None or bv < best:
                    best = bv
                    r = i
        if r < 0:
            return _read_witness(dim, free_rows, c)
        newrow, _ = pivot(r, c)
        entering = cols[c]
        cols[c] = rvar[r]
        rows[r] = newrow
        rvar[r] = entering


def _substitute_raw(row: list[int], prow: list[int], c: int, s: int) -> list[int]:
    p = prow[c]
    a = row[c]
    if s > 0:
        new = [p * x - a * y for x, y in zip(row, prow)]
        new[c] = a
    else:
        new = [a * y - p * x for x, y in zip(row, prow)]
        new[c] = -a
    return new


def _read_witness(dim: int, free_rows: list[list], c: int) -> tuple[int, ...]:
    vals: list[tuple[int, int]] = []
    den = 1
    for row, dn, _ in free_rows:
        v = row[c]
        vals.append((v, dn))
        if v:
            den = den * dn // gcd(den, dn)
    x = [0] * dim
    for (v, dn), fr in zip(vals, free_rows):
        if v:
            x[fr[2]] = v * (den // dn)
    g = gcd(*x)
    if g > 1:
        x = [v // g for v in x]
    return tuple(x)
