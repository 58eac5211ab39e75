"""Refinement-tree enumeration: static order, greedy dynamic order, relation tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cones import Fan, HalfOpenCone, intersect
from .kernel.system import ConstraintSystem

Sink = Callable[[HalfOpenCone], None]


@dataclass(frozen=True)
class TableLayout:
    """Bit offsets of each fan's block, fixed when the fans are loaded."""

    sizes: tuple
    offsets: tuple
    total: int
    masks: tuple

    @classmethod
    def for_sizes(cls, sizes: Sequence[int]) -> "TableLayout":
        offsets, masks, pos = [], [], 0
        for s in sizes:
            offsets.append(pos)
            masks.append(((1 << s) - 1) << pos)
            pos += s
        return cls(tuple(sizes), tuple(offsets), pos, tuple(masks))

    @classmethod
    def for_fans(cls, fans: Sequence[Fan]) -> "TableLayout":
        return cls.for_sizes([len(f) for f in fans])

    def index(self, fan: int, cone: int) -> int:
        return self.offsets[fan] + cone


@dataclass(frozen=True)
class RelationTable:
    """One bit per cone of every fan; 0 means certainly disjoint.

    Bit ``k`` of ``bits`` is the ``k``-th cone in layout order, so the
    string form reads left to right from bit 0.
    """

    layout: TableLayout
    bits: int

    @classmethod
    def ones(cls, layout: TableLayout) -> "RelationTable":
        return cls(layout, (1 << layout.total) - 1)

    @classmethod
    def from_string(cls, s: str, layout: TableLayout | None = None) -> "RelationTable":
        s = s.strip()
        if layout is None:
            layout = TableLayout.for_sizes([len(s)])
        if len(s) != layout.total:
            raise ValueError(f"{len(s)} bits for a layout of {layout.total}")
        bits = 0
        for k, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << k
            elif ch != "0":
                raise ValueError(f"bad bit {ch!r}")
        return cls(layout, bits)

    def to_string(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(self.layout.total))

    def bit(self, fan: int, cone: int) -> bool:
        return bool(self.bits >> self.layout.index(fan, cone) & 1)

    def popcount(self, fan: int) -> int:
        return (self.bits & self.layout.masks[fan]).bit_count()

    def block(self, fan: int) -> int:
        return (self.bits & self.layout.masks[fan]) >> self.layout.offsets[fan]


def and_tables(a: RelationTable, b: RelationTable) -> RelationTable:
    if a.layout != b.layout:
        raise AssertionError("relation tables with different layouts")
    return RelationTable(a.layout, a.bits & b.bits)


@dataclass(frozen=True)
class Task:
    """An intermediate cone awaiting intersection with the unused fans."""

    cone: HalfOpenCone
    table: RelationTable | None
    used: frozenset
    tid: int = 0

    @property
    def depth(self) -> int:
        return len(self.used)


@dataclass
class EnumerationStats:
    intersections_attempted: int = 0
    intersections_nonempty: int = 0
    pruned_by_table: int = 0
    output_cones: int = 0
    tasks_executed: int = 0
    tasks_enqueued: int = 0

    def merge(self, other: "EnumerationStats") -> "EnumerationStats":
        for name in self.__dataclass_fields__:
            setattr(self, name, getattr(self, name) + getattr(other, name))
        return self

    @property
    def candidates_examined(self) -> int:
        return self.intersections_attempted + self.pruned_by_table


@dataclass
class Tables:
    """Relation tables of all fan cones plus the all-ones root table."""

    layout: TableLayout
    per_cone: list  # per_cone[fan][cone] -> RelationTable
    root: RelationTable
    pair_tests: int = 0

    def of(self, fan: int, cone: int) -> RelationTable:
        return self.per_cone[fan][cone]


def table_jobs(fans: Sequence[Fan]) -> list[tuple[int, int, int, int]]:
    """One job per unordered cross-fan cone pair ``(i, a, j, b)`` with ``i < j``."""
    jobs = []
    for i in range(len(fans)):
        for j in range(i + 1, len(fans)):
            for a in range(len(fans[i])):
                for b in range(len(fans[j])):
                    jobs.append((i, a, j, b))
    return jobs


def pair_job(fans: Sequence[Fan], job: tuple[int, int, int, int]) -> bool:
    i, a, j, b = job
    return not intersect(fans[i][a], fans[j][b]).empty


def assemble_tables(fans: Sequence[Fan], results: Iterable[tuple[tuple, bool]]) -> Tables:
    """Write pair verdicts into per-cone bit arrays (single writer)."""
    layout = TableLayout.for_fans(fans)
    bits = [[0] * len(f) for f in fans]
    count = 0
    for (i, a, j, b), hit in results:
        count += 1
        if hit:
            bits[i][a] |= 1 << layout.index(j, b)
            bits[j][b] |= 1 << layout.index(i, a)
    per_cone = [[RelationTable(layout, x) for x in row] for row in bits]
    return Tables(layout, per_cone, RelationTable.ones(layout), count)


def init_relation_tables(fans: Sequence[Fan], workers: int = 1) -> Tables:
    """Relation tables for every fan cone; own-fan blocks stay zero."""
    from .scheduler import run_table_stage

    return run_table_stage(fans, workers)


def choose_first_fan(fans: Sequence) -> int:
    """Index of the fan with fewest cones, lowest index on ties."""
    sizes = [len(f) for f in fans]
    return min(range(len(sizes)), key=lambda i: (sizes[i], i))


def choose_next_fan(t: Task, fans: Sequence[Fan] | None = None) -> int:
    """Unused fan with fewest possibly-meeting cones, lowest index on ties.

    Without a table (pruning off) the unused fan with fewest cones is taken.
    """
    best, best_i = None, -1
    if t.table is not None:
        nfans = len(t.table.layout.sizes)
        for i in range(nfans):
            if i in t.used:
                continue
            c = t.table.popcount(i)
            if best is None or c < best:
                best, best_i = c, i
        return best_i
    for i in range(len(fans)):
        if i in t.used:
            continue
        c = len(fans[i])
        if best is None or c < best:
            best, best_i = c, i
    return best_i


@dataclass
class Enumerator:
    """Shared, read-only context for expanding tasks."""

    fans: Sequence[Fan]
    tables: Tables | None = None
    stats: EnumerationStats = field(default_factory=EnumerationStats)

    @property
    def nfans(self) -> int:
        return len(self.fans)

    def root_tasks(self) -> list[Task]:
        first = choose_first_fan(self.fans)
        out = []
        for j, cone in enumerate(self.fans[first]):
            table = None
            if self.tables is not None:
                table = and_tables(self.tables.root, self.tables.of(first, j))
            out.append(Task(cone, table, frozenset((first,))))
        return out

    def expand(self, t: Task, i: int, sink: Sink, stats: EnumerationStats | None = None) -> list[Task]:
        """Intersect ``t.cone`` with the cones of fan ``i`` the table allows."""
        stats = self.stats if stats is None else stats
        stats.tasks_executed += 1
        fan = self.fans[i]
        last = len(t.used) + 1 == self.nfans
        used = t.used | {i}
        children = []
        if t.table is not None:
            block = t.table.block(i)
            stats.pruned_by_table += len(fan) - block.bit_count()
        else:
            block = -1
        for j, d in enumerate(fan):
            if not block >> j & 1:
                continue
            stats.intersections_attempted += 1
            c = intersect(t.cone, d, reduce=not last)
            if c.empty:
                continue
            stats.intersections_nonempty += 1
            if last:
                stats.output_cones += 1
                sink(c)
            else:
                table = None
                if t.table is not None:
                    table = and_tables(t.table, self.tables.of(i, j))
                children.append(Task(c, table, used))
        return children

    def step(self, t: Task, sink: Sink, stats: EnumerationStats | None = None) -> list[Task]:
        return self.expand(t, choose_next_fan(t, self.fans), sink, stats)


def _single_fan(fans: Sequence[Fan], sink: Sink, stats: EnumerationStats) -> EnumerationStats:
    for c in fans[0]:
        stats.output_cones += 1
        sink(c)
    return stats


def enumerate_static(fans: Sequence[Fan], sink: Sink) -> EnumerationStats:
    """Depth-first refinement in input fan order, no relation tables."""
    stats = EnumerationStats()
    n = len(fans)
    if n == 1:
        return _single_fan(fans, sink, stats)

    def rec(c: HalfOpenCone, i: int) -> None:
        last = i == n - 1
        for d in fans[i]:
            stats.intersections_attempted += 1
            e = intersect(c, d, reduce=not last)
            if e.empty:
                continue
            stats.intersections_nonempty += 1
            if last:
                stats.output_cones += 1
                sink(e)
            else:
                rec(e, i + 1)

    for c in fans[0]:
        rec(c, 1)
    return stats


def enumerate_dynamic(
    fans: Sequence[Fan],
    sink: Sink,
    mode: str = "recursive",
    table_pruning: bool = True,
    tables: Tables | None = None,
    workers: int = 1,
    trace=None,
) -> EnumerationStats:
    """Greedy dynamic enumeration, recursive or queue driven."""
    if table_pruning and tables is None:
        tables = init_relation_tables(fans, workers)
    if not table_pruning:
        tables = None
    if len(fans) == 1:
        return _single_fan(fans, sink, EnumerationStats())
    en = Enumerator(fans, tables)
    if mode == "iterative":
        from .scheduler import run_enumeration_stage

        return run_enumeration_stage(en, workers, sink, trace=trace)
    if mode != "recursive":
        raise ValueError(f"unknown mode {mode!r}")

    def rec(t: Task) -> None:
        for child in en.step(t, sink):
            rec(child)

    for t in en.root_tasks():
        rec(t)
    return en.stats


def replay_intersection(fans: Sequence[Fan], origins: Sequence[tuple[int, int]]) -> ConstraintSystem:
    """Recompute the N-fold intersection named by ``origins`` from scratch."""
    body = ConstraintSystem.full_space(fans[0].cones[0].dim)
    for i, j in origins:
        body = body.meet(fans[i][j].body)
    return body
