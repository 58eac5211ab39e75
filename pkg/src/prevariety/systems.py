"""Benchmark polynomial systems and the plain-text system format.

Only supports matter for the prevariety, so a system is a list of exponent
vector sets.  Generators expand with exact integer coefficients first so that
cancelling monomials disappear from the support.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Support:
    dim: int
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("a support needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("support points must be distinct")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"exponent vector {p} does not have length {self.dim}")
            if any(e < 0 for e in p):
                raise ValueError(f"negative exponent in {p}")


@dataclass(frozen=True)
class PolynomialSystem:
    dim: int
    names: tuple
    supports: tuple
    label: str = ""

    def __len__(self) -> int:
        return len(self.supports)


def _system(names, polys, label) -> PolynomialSystem:
    n = len(names)
    supports = tuple(Support(n, tuple(sorted(p))) for p in polys)
    return PolynomialSystem(n, tuple(names), supports, label)


def gen_cyclic(n: int) -> PolynomialSystem:
    """Cyclic n-roots: n-1 cyclic elementary sums plus ``x0*...*x(n-1) - 1``."""
    if n < 2:
        raise ValueError("cyclic systems need n >= 2")
    polys = []
    for i in range(1, n):
        terms = set()
        for j in range(n):
            e = [0] * n
            for k in range(j, j + i):
                e[k % n] = 1
            terms.add(tuple(e))
        polys.append(terms)
    polys.append({(1,) * n, (0,) * n})
    return _system([f"x{i}" for i in range(n)], polys, f"cyclic-{n}")


# Laurent polynomials as {exponent tuple: int coefficient}


def _mul(f: dict, g: dict) -> dict:
    out: dict = defaultdict(int)
    for ef, cf in f.items():
        for eg, cg in g.items():
            out[tuple(a + b for a, b in zip(ef, eg))] += cf * cg
    return {e: c for e, c in out.items() if c}


def _add(f: dict, g: dict, sign: int = 1) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _albouy_chenciner(n: int, power: int, label: str) -> PolynomialSystem:
    if n < 3:
        raise ValueError(f"{label} systems need n >= 3")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    index = {p: k for k, p in enumerate(pairs)}
    m = len(pairs)
    one = (0,) * m

    def var(a: int, b: int, e: int) -> dict | None:
        """Monomial x_ab^e, or None for the vanishing x_aa."""
        if a == b:
            return None
        v = [0] * m
        v[index[(min(a, b), max(a, b))]] = e
        return {tuple(v): 1}

    def sq(a: int, b: int) -> dict:
        t = var(a, b, 2)
        return t if t is not None else {}

    def singular(a: int, b: int) -> dict:
        # (x_ab^-power - 1), defined as 0 when a == b
        t = var(a, b, -power)
        return {} if t is None else _add(t, {one: 1}, -1)

    polys = []
    for i, j in pairs:
        total: dict = {}
        for k in range(1, n + 1):
            first = _mul(singular(i, k), _add(_add(sq(j, k), sq(i, k), -1), sq(i, j), -1))
            second = _mul(singular(j, k), _add(_add(sq(i, k), sq(j, k), -1), sq(i, j), -1))
            total = _add(_add(total, first), second)
        clear = {one: 1}
        for k in range(1, n + 1):
            if k != i:
                clear = _mul(clear, var(i, k, power))
            if k != j:
                clear = _mul(clear, var(j, k, power))
        poly = _mul(total, clear)
        if any(e < 0 for ex in poly for e in ex):
            raise AssertionError("denominators were not cleared")
        polys.append(set(poly))
    names = [f"x{a}{b}" if n < 10 else f"x{a}_{b}" for a, b in pairs]
    return _system(names, polys, f"{label}-{n}")


def gen_nbody(n: int) -> PolynomialSystem:
    """Albouy-Chenciner equations of the equal-mass n-body problem."""
    return _albouy_chenciner(n, 3, "nbody")


def gen_nvortex(n: int) -> PolynomialSystem:
    """Albouy-Chenciner equations of the n-vortex problem."""
    return _albouy_chenciner(n, 2, "nvortex")


def gen_minors() -> PolynomialSystem:
    """All 4x4 minors of a generic 5x5 matrix (25 polynomials, 25 variables)."""
    names = [f"x{r}{c}" for r in range(1, 6) for c in range(1, 6)]
    polys = []
    for rows in itertools.combinations(range(5), 4):
        for cols in itertools.combinations(range(5), 4):
            terms = set()
            for perm in itertools.permutations(cols):
                e = [0] * 25
                for r, c in zip(rows, perm):
                    e[5 * r + c] = 1
                terms.add(tuple(e))
            polys.append(terms)
    return _system(names, polys, "minors-4x4-of-5x5")


GENERATORS = {
    "cyclic": gen_cyclic,
    "nbody": gen_nbody,
    "nvortex": gen_nvortex,
    "minors": lambda n=None: gen_minors(),
}


# text format

_HEADER = re.compile(r"^variables\s*:\s*(.*)$")
_POLY = re.compile(r"^poly\s*:\s*(.*)$")
_VECTOR = re.compile(r"\(([^()]*)\)")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def _parse_vectors(body: str, n: int, lineno: int) -> set:
    pts = set()
    stripped = _VECTOR.sub("", body)
    if stripped.strip():
        raise ParseError(f"unexpected text {stripped.strip()!r}", lineno)
    for m in _VECTOR.finditer(body):
        items = [s.strip() for s in m.group(1).split(",")]
        if len(items) != n:
            raise ParseError(f"exponent vector of arity {len(items)}, expected {n}", lineno)
        try:
            vec = tuple(int(s) for s in items)
        except ValueError:
            raise ParseError(f"non-integer exponent in ({m.group(1)})", lineno) from None
        if any(e < 0 for e in vec):
            raise ParseError(f"negative exponent in ({m.group(1)})", lineno)
        pts.add(vec)
    return pts


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _parse_symbolic(body: str, names: list, lineno: int) -> set:
    index = {name: k for k, name in enumerate(names)}
    n = len(names)
    tokens = []
    pos = 0
    body = body.strip()
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if m is None:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif sym in "+-*^":
            tokens.append((sym, sym))
        elif sym == "−":
            tokens.append(("-", "-"))
        else:
            raise ParseError(f"unexpected character {sym!r}", lineno)
    terms: dict = defaultdict(int)
    i = 0

    def expect_factor(i):
        if i >= len(tokens):
            raise ParseError("expression ends unexpectedly", lineno)
        kind, val = tokens[i]
        if kind == "num":
            return i + 1, val, None
        if kind == "var":
            if val not in index:
                raise ParseError(f"unknown variable {val!r}", lineno)
            power = 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "num":
                    raise ParseError("exponent must be a nonnegative integer", lineno)
                power = tokens[i + 2][1]
                i += 2
            return i + 1, 1, (index[val], power)
        raise ParseError(f"unexpected token {val!r}", lineno)

    if not tokens:
        raise ParseError("empty polynomial", lineno)
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] in "+-":
            if tokens[i][0] == "-":
                sign = -sign
            i += 1
        coef = sign
        exps = [0] * n
        i, c, v = expect_factor(i)
        coef *= c
        if v:
            exps[v[0]] += v[1]
        while i < len(tokens) and tokens[i][0] == "*":
            i, c, v = expect_factor(i + 1)
            coef *= c
            if v:
                exps[v[0]] += v[1]
        if i < len(tokens) and tokens[i][0] not in "+-":
            raise ParseError(f"unexpected token {tokens[i][1]!r}", lineno)
        terms[tuple(exps)] += coef
    pts = {e for e, c in terms.items() if c}
    if not pts:
        raise ParseError("polynomial cancels to zero", lineno)
    return pts


def parse_system(text: str, label: str = "input") -> PolynomialSystem:
    """Parse the version-1 system format.

    Lines: optional ``#`` comments, one ``variables:`` header (a count or a
    list of names), then ``poly:`` lines with either exponent vectors
    ``(e1,...,en) ...`` or a symbolic expression in the named variables.
    """
    names = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if m:
            if names is not None:
                raise ParseError("duplicate variables header", lineno)
            spec = m.group(1).split()
            if len(spec) == 1 and spec[0].isdigit():
                names = [f"x{i}" for i in range(int(spec[0]))]
            else:
                for name in spec:
                    if not _NAME.match(name):
                        raise ParseError(f"bad variable name {name!r}", lineno)
                names = spec
            if not names:
                raise ParseError("no variables declared", lineno)
            continue
        m = _POLY.match(line)
        if not m:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        if names is None:
            raise ParseError("poly line before variables header", lineno)
        body = m.group(1)
        if "(" in body:
            pts = _parse_vectors(body, len(names), lineno)
        else:
            pts = _parse_symbolic(body, names, lineno)
        if not pts:
            raise ParseError("empty support", lineno)
        polys.append(pts)
    if names is None:
        raise ParseError("missing variables header")
    if not polys:
        raise ParseError("no polynomials")
    return _system(names, polys, label)


def format_system(system: PolynomialSystem) -> str:
    """Render ``system`` in the vector form of the text format."""
    lines = [f"# {system.label}"] if system.label else []
    lines.append("variables: " + " ".join(system.names))
    for s in system.supports:
        lines.append("poly: " + " ".join("(" + ",".join(map(str, p)) + ")" for p in s.points))
    return "\n".join(lines) + "\n"
