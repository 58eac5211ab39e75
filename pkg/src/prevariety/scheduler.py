"""Work-stealing execution of the iterative dynamic enumeration.

Every worker owns a queue split into subqueues indexed by task depth.  The
owner always works on its deepest task, so finished cones reach the sink
early; a thief takes the shallowest task of the first victim that has work,
scanning ``i+1, ..., W, 1, ..., i-1``.  Termination uses a counter of tasks
that are queued or running: zero means every queue is empty and no worker
can produce more work.
"""

from __future__ import annotations

import itertools
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import IO, Callable, Sequence

from .cones import Fan, HalfOpenCone
from .enumeration import (
    EnumerationStats,
    Enumerator,
    Task,
    Tables,
    assemble_tables,
    pair_job,
    table_jobs,
)


class ConeSink:
    """Serialized collector for emitted cones, optionally streaming to a file."""

    def __init__(self, stream: IO[str] | None = None, keep: bool = True,
                 format_cone: Callable[[HalfOpenCone], str] | None = None):
        self._lock = threading.Lock()
        self.cones: list[HalfOpenCone] = []
        self.count = 0
        self._stream = stream
        self._keep = keep
        self._format = format_cone

    def __call__(self, cone: HalfOpenCone) -> None:
        with self._lock:
            self.count += 1
            if self._keep:
                self.cones.append(cone)
            if self._stream is not None:
                self._stream.write(self._format(cone) + "\n")


class Trace:
    """Event log: worker, action, depth, timestamp plus policy evidence."""

    def __init__(self):
        self._lock = threading.Lock()
        self.events: list[dict] = []
        self._t0 = time.perf_counter()

    def record(self, worker: int, action: str, depth: int, **extra) -> None:
        ev = {"worker": worker, "action": action, "depth": depth,
              "time": time.perf_counter() - self._t0, **extra}
        with self._lock:
            self.events.append(ev)

    def dump(self, fh: IO[str]) -> None:
        for ev in self.events:
            extra = " ".join(
                f"{k}={_fmt(v)}" for k, v in ev.items()
                if k not in ("worker", "action", "depth", "time")
            )
            fh.write(f"{ev['worker']} {ev['action']} {ev['depth']} {ev['time']:.6f} {extra}".rstrip() + "\n")


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v)) or "-"
    return str(v)


class DepthQueue:
    """Subqueues ``1..N-1``; owner pops deepest, thieves take shallowest."""

    def __init__(self, owner: int, max_depth: int):
        self.owner = owner
        self.max_depth = max_depth
        self.subqueues = [deque() for _ in range(max_depth + 1)]  # index 0 unused
        self.lock = threading.Lock()
        self.size = 0

    def push(self, task: Task) -> None:
        with self.lock:
            self.subqueues[task.depth].append(task)
            self.size += 1

    def nonempty_depths(self) -> list[int]:
        return [d for d in range(1, self.max_depth + 1) if self.subqueues[d]]

    def pop_local(self, trace: Trace | None = None) -> Task | None:
        with self.lock:
            for d in range(self.max_depth, 0, -1):
                q = self.subqueues[d]
                if q:
                    if trace is not None:
                        snap = self.nonempty_depths()
                    task = q.pop()
                    self.size -= 1
                    if trace is not None:
                        trace.record(self.owner, "pop", d, tid=task.tid, nonempty=snap)
                    return task
        return None

    def steal_one(self) -> tuple[Task, list[int]] | None:
        with self.lock:
            for d in range(1, self.max_depth + 1):
                q = self.subqueues[d]
                if q:
                    snap = self.nonempty_depths()
                    task = q.popleft()
                    self.size -= 1
                    return task, snap
        return None

    def __len__(self) -> int:
        return self.size


def victim_order(thief: int, workers: int) -> list[int]:
    """Victims for 1-based ``thief``: ``i+1, ..., W, 1, ..., i-1``."""
    return [((thief - 1 + k) % workers) + 1 for k in range(1, workers)]


@dataclass
class WorkerPool:
    workers: int
    max_depth: int
    trace: Trace | None = None
    queues: list = field(init=False)
    in_flight: int = field(init=False, default=0)

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("need at least one worker")
        # queues[i - 1] belongs to worker i (1-based ids as in the steal order)
        self.queues = [DepthQueue(i, self.max_depth) for i in range(1, self.workers + 1)]
        self._count_lock = threading.Lock()
        self._ids = itertools.count(1)
        self.enqueued = 0
        self.executed = 0
        self.failure: BaseException | None = None

    def new_id(self) -> int:
        with self._count_lock:
            return next(self._ids)

    def enqueue(self, worker: int, task: Task) -> None:
        with self._count_lock:
            self.in_flight += 1
            self.enqueued += 1
        self.queues[worker - 1].push(task)

    def finished(self) -> None:
        with self._count_lock:
            self.in_flight -= 1
            self.executed += 1

    def idle(self) -> bool:
        with self._count_lock:
            return self.in_flight == 0

    def pop_local(self, worker: int) -> Task | None:
        return self.queues[worker - 1].pop_local(self.trace)

    def steal(self, thief: int) -> Task | None:
        probed = []
        for victim in victim_order(thief, self.workers):
            got = self.queues[victim - 1].steal_one()
            if got is not None:
                task, snap = got
                if self.trace is not None:
                    self.trace.record(thief, "steal", task.depth, tid=task.tid,
                                      victim=victim, probed=probed, nonempty=snap)
                return task
            probed.append(victim)
        return None


def run_table_stage(fans: Sequence[Fan], workers: int = 1) -> Tables:
    """Fill relation tables from a shared job queue of cone-pair tests.

    Workers only compute verdicts; the bits are written afterwards by one
    writer, so no table word is ever shared between threads.
    """
    jobs = table_jobs(fans)
    if workers <= 1 or len(jobs) < 2:
        return assemble_tables(fans, ((job, pair_job(fans, job)) for job in jobs))
    pending = deque(jobs)
    lock = threading.Lock()
    results: list[list] = [[] for _ in range(workers)]
    errors: list[BaseException] = []

    def work(k: int) -> None:
        out = results[k]
        try:
            while True:
                with lock:
                    if not pending or errors:
                        return
                    job = pending.popleft()
                out.append((job, pair_job(fans, job)))
        except BaseException as exc:  # surfaced by the caller
            with lock:
                errors.append(exc)

    threads = [threading.Thread(target=work, args=(k,), daemon=True) for k in range(workers)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    if errors:
        raise RuntimeError("relation table stage aborted") from errors[0]
    return assemble_tables(fans, itertools.chain.from_iterable(results))


def run_enumeration_stage(
    en: Enumerator,
    workers: int,
    sink: Callable[[HalfOpenCone], None],
    trace: Trace | None = None,
) -> EnumerationStats:
    """Drain the refinement tree with ``workers`` work-stealing workers."""
    pool = WorkerPool(workers, max(1, en.nfans - 1), trace)
    for k, t in enumerate(en.root_tasks()):
        t = Task(t.cone, t.table, t.used, pool.new_id())
        pool.enqueue(k % workers + 1, t)
    stats = [EnumerationStats() for _ in range(workers)]
    wake = threading.Event()

    def work(worker: int) -> None:
        local = stats[worker - 1]
        try:
            while pool.failure is None:
                task = pool.pop_local(worker)
                if task is None:
                    task = pool.steal(worker)
                if task is None:
                    if pool.idle():
                        wake.set()
                        return
                    wake.wait(0.001)
                    continue
                def emit(cone, _d=task.depth + 1):
                    if trace is not None:
                        trace.record(worker, "emit", _d)
                    sink(cone)

                children = en.step(task, emit, local)
                for child in reversed(children):
                    child = Task(child.cone, child.table, child.used, pool.new_id())
                    pool.enqueue(worker, child)
                pool.finished()
        except BaseException as exc:
            pool.failure = exc

    if workers == 1:
        work(1)
    else:
        threads = [threading.Thread(target=work, args=(w,), daemon=True)
                   for w in range(1, workers + 1)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
    if pool.failure is not None:
        raise RuntimeError(f"enumeration aborted: {pool.failure!r}") from pool.failure
    if pool.enqueued != pool.executed:
        raise AssertionError(f"{pool.enqueued} tasks enqueued but {pool.executed} executed")
    total = EnumerationStats()
    for s in stats:
        total.merge(s)
    total.tasks_enqueued = pool.enqueued
    return total
