"""Command-line driver: build fans, fill relation tables, enumerate, serialize."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import IO, Sequence

from .cones import hypersurface_fan
from .enumeration import EnumerationStats, enumerate_dynamic, enumerate_static, init_relation_tables
from .errors import DegenerateFanError, PrevarietyError
from .kernel.system import ConstraintSystem
from .newton import newton_polytope
from .postprocess import PrevarietyResult, collect_rays, dedupe_closures, maximal_cones
from .scheduler import ConeSink, Trace
from .systems import GENERATORS, PolynomialSystem, parse_system

FORMAT_TAG = "PREVARIETY v1"


class InputError(PrevarietyError):
    """Bad flags, unreadable input or a degenerate system (exit code 1)."""


@dataclass
class RunConfig:
    input: str | None = None
    system: str | None = None
    n: int | None = None
    algorithm: str = "dynamic"
    iterative: bool = True
    tables: bool = True
    workers: int = 1
    seed: int = 0
    output: str | None = None
    trace: str | None = None
    stats: bool = False
    want_rays: bool = False
    want_maximal: bool = False

    def __post_init__(self):
        if (self.input is None) == (self.system is None):
            raise InputError("give exactly one of --input and --system")
        if self.system is not None and self.n is None:
            raise InputError("--system needs --n")
        if self.algorithm not in ("static", "dynamic"):
            raise InputError(f"unknown algorithm {self.algorithm!r}")
        if self.workers < 1:
            raise InputError("--workers must be at least 1")
        if self.algorithm == "static":
            self.tables = False
            self.iterative = False
        if not self.iterative:
            self.workers = 1


# -- text document -----------------------------------------------------------

def _vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _vecs(rows: Sequence[Sequence[int]]) -> str:
    return "{" + ";".join(_vec(r) for r in rows) + "}"


@dataclass
class Document:
    """The serialized view of a result; parsing and printing are inverses."""

    header: dict
    cones: list  # (dim, equations, inequalities)
    rays: list
    maximal: dict | None = None

    def render(self) -> str:
        out = [FORMAT_TAG]
        for k in ("system", "n", "fans", "seed", "workers"):
            out.append(f"{k}: {self.header.get(k, '')}".rstrip())
        for dim, eq, ineq in self.cones:
            out.append(f"CONE dim={dim} eq={_vecs(eq)} ineq={_vecs(ineq)}")
        out.append(f"RAYS count={len(self.rays)}")
        out.extend(f"RAY {_vec(r)}" for r in self.rays)
        if self.maximal is not None:
            out.extend(f"MAXIMAL dim={d} count={c}" for d, c in sorted(self.maximal.items()))
        return "\n".join(out) + "\n"


def document_of(result: PrevarietyResult) -> Document:
    m = result.meta
    header = {
        "system": m.get("system", ""),
        "n": m.get("n", ""),
        "fans": " ".join(str(s) for s in m.get("fan_sizes", ())),
        "seed": m.get("seed", ""),
        "workers": m.get("workers", ""),
    }
    cones = [(c.dimension, c.equations, c.facets) for c in result.cones]
    return Document(header, cones, list(result.rays), result.maximal_by_dim)


def serialize(result: PrevarietyResult, path: str | None = None, stream: IO[str] | None = None) -> str:
    text = document_of(result).render()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    if stream is not None:
        stream.write(text)
    return text


_VEC = re.compile(r"\(([^()]*)\)")
_CONE = re.compile(r"CONE dim=(-?\d+) eq=\{(.*?)\} ineq=\{(.*?)\}$")


def _parse_vecs(s: str) -> tuple:
    return tuple(tuple(int(x) for x in m.group(1).split(",")) for m in _VEC.finditer(s))


def parse_document(text: str) -> Document:
    lines = text.splitlines()
    if not lines or lines[0] != FORMAT_TAG:
        raise ValueError("not a prevariety result file")
    header, cones, rays, maximal = {}, [], [], None
    expected = None
    for line in lines[1:]:
        if line.startswith("CONE "):
            m = _CONE.match(line)
            if not m:
                raise ValueError(f"bad cone line {line!r}")
            cones.append((int(m.group(1)), _parse_vecs(m.group(2)), _parse_vecs(m.group(3))))
        elif line.startswith("RAYS count="):
            expected = int(line.split("=", 1)[1])
        elif line.startswith("RAY "):
            rays.append(_parse_vecs(line)[0])
        elif line.startswith("MAXIMAL "):
            d, c = re.match(r"MAXIMAL dim=(-?\d+) count=(\d+)$", line).groups()
            maximal = maximal or {}
            maximal[int(d)] = int(c)
        elif ":" in line:
            k, v = line.split(":", 1)
            header[k] = v.strip()
        elif line:
            raise ValueError(f"unrecognized line {line!r}")
    if expected is None or expected != len(rays):
        raise ValueError("ray count does not match the RAY lines")
    return Document(header, cones, rays, maximal)


# -- pipeline ----------------------------------------------------------------

def _cone_json(cone) -> str:
    b = cone.body
    return json.dumps([b.equations, b.nonstrict, b.strict])


def _read_stream(fh: IO[str], dim: int):
    fh.seek(0)
    for line in fh:
        eq, le, lt = json.loads(line)
        yield ConstraintSystem(dim, tuple(map(tuple, eq)), tuple(map(tuple, le)), tuple(map(tuple, lt)))


def load_system(cfg: RunConfig) -> PolynomialSystem:
    if cfg.input is not None:
        try:
            with open(cfg.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {cfg.input}: {exc.strerror}") from exc
        return parse_system(text, label=os.path.basename(cfg.input))
    if cfg.system not in GENERATORS:
        raise InputError(f"unknown system {cfg.system!r}")
    return GENERATORS[cfg.system](cfg.n)


def run(cfg: RunConfig, system: PolynomialSystem | None = None) -> PrevarietyResult:
    """Run all three stages and return the deduplicated result."""
    if system is None:
        system = load_system(cfg)
    times = {}
    t0 = time.perf_counter()
    polys = [newton_polytope(s, seed=cfg.seed + i) for i, s in enumerate(system.supports)]
    fans = [hypersurface_fan(p, i) for i, p in enumerate(polys)]
    times["fans"] = time.perf_counter() - t0

    trace = Trace() if cfg.trace else None
    with tempfile.TemporaryFile("w+") as tmp:
        sink = ConeSink(stream=tmp, keep=False, format_cone=_cone_json)
        t0 = time.perf_counter()
        if cfg.algorithm == "static":
            times["tables"] = 0.0
            stats = enumerate_static(fans, sink)
        else:
            tables = init_relation_tables(fans, cfg.workers) if cfg.tables else None
            times["tables"] = time.perf_counter() - t0
            t0 = time.perf_counter()
            stats = enumerate_dynamic(
                fans, sink,
                mode="iterative" if cfg.iterative else "recursive",
                table_pruning=cfg.tables, tables=tables,
                workers=cfg.workers, trace=trace,
            )
        times["enumerate"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        closures = dedupe_closures(_read_stream(tmp, system.dim))
    rays, lineal = collect_rays(closures)
    maximal = maximal_cones(closures)[1] if cfg.want_maximal else None
    times["postprocess"] = time.perf_counter() - t0

    if trace is not None:
        with open(cfg.trace, "w") as fh:
            trace.dump(fh)
    meta = {
        "system": system.label,
        "n": system.dim,
        "fan_sizes": [len(f) for f in fans],
        "seed": cfg.seed,
        "orientations": [p.orientation_vector for p in polys],
        "workers": cfg.workers,
        "lineality_cones": len(lineal),
        "times": times,
    }
    return PrevarietyResult(closures, rays, maximal, stats, meta)


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _on_off(s: str) -> bool:
    if s not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return s == "on"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="prevariety", description="Tropical prevariety of a polynomial system.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--system", choices=sorted(GENERATORS))
    p.add_argument("--n", type=int)
    p.add_argument("--algorithm", choices=("static", "dynamic"), default="dynamic")
    p.add_argument("--iterative", type=_on_off, default=True, metavar="{on,off}")
    p.add_argument("--tables", type=_on_off, default=True, metavar="{on,off}")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--rays", action="store_true", help="print the ray count and rays")
    p.add_argument("--maximal", action="store_true", help="count maximal cones by dimension")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--trace", metavar="PATH")
    return p


def _config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    return RunConfig(
        input=a.input, system=a.system, n=a.n, algorithm=a.algorithm,
        iterative=a.iterative, tables=a.tables, workers=a.workers, seed=a.seed,
        output=a.output, trace=a.trace, stats=a.stats,
        want_rays=a.rays, want_maximal=a.maximal,
    )


def _report(result: PrevarietyResult, cfg: RunConfig, out: IO[str]) -> None:
    if cfg.want_rays:
        out.write(f"rays: {len(result.rays)}\n")
        for r in result.rays:
            out.write(f"  {_vec(r)}\n")
    if cfg.want_maximal:
        for d, c in result.maximal_by_dim.items():
            out.write(f"maximal dim={d}: {c}\n")
    if cfg.stats:
        s: EnumerationStats = result.stats
        for name in s.__dataclass_fields__:
            out.write(f"{name}: {getattr(s, name)}\n")
        out.write(f"candidates_examined: {s.candidates_examined}\n")
        out.write(f"closures: {len(result.cones)}\n")
        for stage, t in result.meta["times"].items():
            out.write(f"time_{stage}: {t:.3f}\n")


def main(argv: Sequence[str] | None = None) -> int:
    out, err = sys.stdout, sys.stderr
    try:
        cfg = _config(argv)
        system = load_system(cfg)
    except (InputError, ValueError) as exc:
        err.write(f"prevariety: {exc}\n")
        return 1
    try:
        result = run(cfg, system)
    except DegenerateFanError as exc:
        err.write(f"prevariety: degenerate system: {exc}\n")
        return 1
    except Exception as exc:
        err.write(f"prevariety: internal error: {exc!r}\n")
        return 2
    try:
        if cfg.output:
            serialize(result, cfg.output)
        else:
            serialize(result, stream=out)
        _report(result, cfg, out)
    except OSError as exc:
        err.write(f"prevariety: cannot write output: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
