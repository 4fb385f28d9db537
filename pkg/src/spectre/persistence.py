"""0- and 1-dimensional persistence of graph filtrations via union-find.

A single sweep over the edges (sorted by filtration value, ties in canonical
``(min, max)`` order) yields a :class:`MergeTrace`. PH pairs use the elder rule
on top of it; the descriptor module re-runs the sweep with its own survival
order, so both rules share one kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._backend import kernels
from .filtration import EDGE, VERTEX, FiltrationValues
from .graph import ColoredGraph

INF = math.inf


class PersistencePair(NamedTuple):
    birth: float
    death: float  # math.inf for features that never die


@dataclass(frozen=True)
class MergeEvent:
    time: float
    edge: tuple[int, int]
    survivor: int
    dying: int
    group: int


@dataclass(frozen=True)
class CycleEvent:
    time: float
    edge: tuple[int, int]
    representative: int
    group: int


@dataclass(frozen=True)
class MergeTrace:
    """Ordered union events of one sweep.

    ``snapshots[k, v]`` is the union-find root of ``v`` once every edge of
    group ``k`` (the ``k``-th distinct critical value) has been inserted;
    component membership at an event is read from its group's snapshot.
    """

    n: int
    merges: tuple[MergeEvent, ...]
    cycles: tuple[CycleEvent, ...]
    group_times: tuple[float, ...]
    snapshots: np.ndarray

    def members(self, group: int, vertex: int) -> list[int]:
        labels = self.snapshots[group]
        return np.flatnonzero(labels == labels[vertex]).tolist()

    def final_members(self, vertex: int) -> list[int]:
        if not self.group_times:
            return [vertex]
        return self.members(len(self.group_times) - 1, vertex)

    @property
    def num_groups(self) -> int:
        return len(self.group_times)


def edge_order(edges: Sequence[tuple[int, int]], values: Sequence[float]) -> np.ndarray:
    """Processing order: by value, ties by canonical edge order (edges are pre-sorted)."""
    return np.argsort(np.asarray(values, dtype=np.float64), kind="stable")


def sweep(g: ColoredGraph, edge_values: Sequence[float], rank: Sequence[int],
          want_snapshots: bool = False) -> MergeTrace:
    """Run the union-find kernel; on a merge the representative with larger ``rank`` dies."""
    order = edge_order(g.edges, edge_values)
    vals = np.asarray(edge_values, dtype=np.float64)[order]
    ed = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)[order]
    merged, dying, survivor, group, snaps = kernels.sweep(
        g.n, ed[:, 0], ed[:, 1], vals, np.asarray(rank, dtype=np.int64), want_snapshots)
    merges, cycles, times = [], [], []
    for i in range(len(order)):
        t = float(vals[i])
        k = int(group[i])
        if k == len(times):
            times.append(t)
        e = (int(ed[i, 0]), int(ed[i, 1]))
        if merged[i]:
            merges.append(MergeEvent(t, e, int(survivor[i]), int(dying[i]), k))
        else:
            cycles.append(CycleEvent(t, e, int(survivor[i]), k))
    if not want_snapshots:
        snaps = np.zeros((0, g.n), dtype=np.int64)
    return MergeTrace(g.n, tuple(merges), tuple(cycles), tuple(times), snaps)


def rank_from_keys(keys: Sequence) -> list[int]:
    """Position of each vertex in ascending key order (lower rank survives)."""
    order = sorted(range(len(keys)), key=lambda v: keys[v])
    rank = [0] * len(keys)
    for pos, v in enumerate(order):
        rank[v] = pos
    return rank


@dataclass(frozen=True)
class PHDiagram:
    dim0: tuple[PersistencePair, ...]
    dim1: tuple[PersistencePair, ...]
    kind: str


def _births_and_values(values: FiltrationValues, kind: str):
    if kind == VERTEX:
        return list(values.vertex), list(values.edge_max)
    if kind == EDGE:
        return [0.0] * len(values.vertex), list(values.edge)
    raise ValueError(f"unknown filtration kind {kind!r}")


def _elder_trace(g: ColoredGraph, values: FiltrationValues, kind: str, want_snapshots=False):
    births, evals = _births_and_values(values, kind)
    # elder rule: the younger component dies; equal births -> larger index dies
    rank = rank_from_keys([(b, v) for v, b in enumerate(births)])
    return births, sweep(g, evals, rank, want_snapshots)


def compute_ph0(g: ColoredGraph, values: FiltrationValues, kind: str):
    """One ``(birth, death)`` pair per vertex, plus the merge trace."""
    births, trace = _elder_trace(g, values, kind)
    death = [INF] * g.n
    for ev in trace.merges:
        death[ev.dying] = ev.time
    pairs = tuple(sorted(PersistencePair(births[v], death[v]) for v in range(g.n)))
    return pairs, trace


def compute_ph1(g: ColoredGraph, values: FiltrationValues, kind: str):
    """``(t, inf)`` per cycle-closing edge, plus the cycle events."""
    _, trace = _elder_trace(g, values, kind)
    pairs = tuple(sorted(PersistencePair(ev.time, INF) for ev in trace.cycles))
    return pairs, trace.cycles


def compute_ph(g: ColoredGraph, values: FiltrationValues, kind: str) -> PHDiagram:
    dim0, trace = compute_ph0(g, values, kind)
    dim1 = tuple(sorted(PersistencePair(ev.time, INF) for ev in trace.cycles))
    return PHDiagram(dim0, dim1, kind)


def pairs_to_json(pairs) -> list:
    return [[p.birth, "inf" if math.isinf(p.death) else p.death] for p in sorted(pairs)]
