"""Filtration functions realized on a graph: color-based and structural (degree / Forman)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

from .graph import ColoredGraph

VERTEX = "vertex"
EDGE = "edge"


class FiltrationError(ValueError):
    """Raised for incomplete or invalid filtration specifications."""


def pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ColorFiltrationSpec:
    """A pair ``(f_v, f_e)`` on a color set; ``f_e`` keys are unordered color pairs."""

    f_v: Mapping[str, float]
    f_e: Mapping[tuple[str, str], float]

    def __post_init__(self):
        f_e = {}
        for key, val in dict(self.f_e).items():
            a, b = key
            k = pair_key(a, b)
            val = float(val)
            if k in f_e and f_e[k] != val:
                raise FiltrationError(f"f_e given twice for {k} with different values")
            if not val > 0.0:
                raise FiltrationError(f"f_e{k} = {val} is not strictly positive")
            f_e[k] = val
        object.__setattr__(self, "f_v", {c: float(v) for c, v in dict(self.f_v).items()})
        object.__setattr__(self, "f_e", f_e)

    def vertex_value(self, color: str) -> float:
        try:
            return self.f_v[color]
        except KeyError:
            raise FiltrationError(f"f_v has no value for color {color!r}") from None

    def edge_value(self, a: str, b: str) -> float:
        try:
            return self.f_e[pair_key(a, b)]
        except KeyError:
            raise FiltrationError(f"f_e has no value for pair {a}|{b}") from None

    @property
    def colors(self) -> tuple[str, ...]:
        return tuple(sorted(self.f_v))

    def is_injective(self) -> bool:
        fv = list(self.f_v.values())
        fe = list(self.f_e.values())
        return len(set(fv)) == len(fv) and len(set(fe)) == len(fe)

    def to_dict(self) -> dict:
        return {
            "f_v": {c: self.f_v[c] for c in sorted(self.f_v)},
            "f_e": {f"{a}|{b}": self.f_e[(a, b)] for a, b in sorted(self.f_e)},
        }

    @classmethod
    def from_dict(cls, doc) -> "ColorFiltrationSpec":
        if not isinstance(doc, dict) or "f_v" not in doc or "f_e" not in doc:
            raise FiltrationError("filtration document needs 'f_v' and 'f_e' objects")
        if not isinstance(doc["f_v"], dict) or not isinstance(doc["f_e"], dict):
            raise FiltrationError("'f_v' and 'f_e' must be JSON objects")
        f_e = {}
        for key, val in doc["f_e"].items():
            parts = key.split("|")
            if len(parts) != 2:
                raise FiltrationError(f"f_e key {key!r} is not 'a|b'")
            f_e[tuple(parts)] = val
        try:
            return cls(dict(doc["f_v"]), f_e)
        except (TypeError, ValueError) as exc:
            raise FiltrationError(str(exc)) from None


def parse_filtration(data: bytes | str) -> ColorFiltrationSpec:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FiltrationError(f"malformed JSON: {exc}") from None
    return ColorFiltrationSpec.from_dict(doc)


def load_filtration(path) -> ColorFiltrationSpec:
    with open(path, "rb") as fh:
        return parse_filtration(fh.read())


@dataclass(frozen=True)
class FiltrationValues:
    """Per-vertex and per-edge filtration values for one graph.

    ``edge_max[i]`` and ``edge[i]`` refer to ``g.edges[i]``. Under the edge
    filtration every vertex is present from time 0.
    """

    vertex: tuple[float, ...]
    edge_max: tuple[float, ...]
    edge: tuple[float, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def vertex_birth_edge(self) -> tuple[float, ...]:
        return (0.0,) * len(self.vertex)


def induce(spec: ColorFiltrationSpec, g: ColoredGraph) -> FiltrationValues:
    """Realize ``(f_v, f_e)`` on ``g``: vertex values by color, edges by max / color pair."""
    fv = tuple(spec.vertex_value(c) for c in g.colors)
    fmax = tuple(max(fv[u], fv[w]) for u, w in g.edges)
    fe = tuple(spec.edge_value(g.colors[u], g.colors[w]) for u, w in g.edges)
    return FiltrationValues(fv, fmax, fe, {"source": "color"})


def forman_ricci_edge_values(g: ColoredGraph) -> dict[tuple[int, int], float]:
    """Augmented Forman-Ricci curvature ``4 - deg u - deg w + 3 |N(u) & N(w)|`` per edge."""
    nb = g.neighbors
    return {
        (u, w): float(4 - len(nb[u]) - len(nb[w]) + 3 * len(nb[u] & nb[w]))
        for u, w in g.edges
    }


def positivity_shift(values) -> float:
    """Offset ``1 - min`` that makes all values >= 1 when some value is <= 0, else 0."""
    values = list(values)
    if not values:
        return 0.0
    lo = min(values)
    return 1.0 - lo if lo <= 0.0 else 0.0


def degree_filtration(g: ColoredGraph, edge_shift: float | None = None) -> FiltrationValues:
    """Vertex values = degree; edge values = Forman-Ricci curvature, shifted positive.

    ``edge_shift=None`` picks the shift from this graph alone; harnesses
    comparing several graphs pass one shared shift.
    """
    fv = tuple(float(d) for d in g.degrees)
    fmax = tuple(max(fv[u], fv[w]) for u, w in g.edges)
    raw = forman_ricci_edge_values(g)
    raw_vals = [raw[e] for e in g.edges]
    shift = positivity_shift(raw_vals) if edge_shift is None else float(edge_shift)
    fe = tuple(v + shift for v in raw_vals)
    if any(v <= 0.0 for v in fe):
        raise FiltrationError(f"edge shift {shift} leaves non-positive edge values")
    return FiltrationValues(fv, fmax, fe, {"source": "degree-forman", "edge_shift": shift})


def timeline(values: FiltrationValues, kind: str) -> list[float]:
    """Sorted distinct critical values; the edge timeline starts at 0."""
    if kind == VERTEX:
        return sorted(set(values.vertex))
    if kind == EDGE:
        return sorted({0.0, *values.edge})
    raise ValueError(f"unknown filtration kind {kind!r}")


def subgraph_vertices_at(g: ColoredGraph, values: FiltrationValues, kind: str, t: float) -> list[int]:
    if kind == EDGE:
        return list(range(g.n)) if t >= 0.0 else []
    return [v for v in range(g.n) if values.vertex[v] <= t]


def subgraph_at(g: ColoredGraph, values: FiltrationValues, kind: str, t: float) -> ColoredGraph:
    """The filtration stage at time ``t``.

    Under the edge kind all vertices are kept. Under the vertex kind the
    retained vertices are relabeled ``0..k-1`` in ascending original order.
    """
    if kind == EDGE:
        if t < 0.0:
            return ColoredGraph(0, (), (), g.color_set)
        keep = [e for e, fe in zip(g.edges, values.edge) if fe <= t]
        return ColoredGraph.build(g.n, keep, g.colors, g.color_set)
    if kind != VERTEX:
        raise ValueError(f"unknown filtration kind {kind!r}")
    verts = subgraph_vertices_at(g, values, kind, t)
    index = {v: i for i, v in enumerate(verts)}
    keep = [(index[u], index[w]) for (u, w), fm in zip(g.edges, values.edge_max) if fm <= t]
    return ColoredGraph.build(len(verts), keep, [g.colors[v] for v in verts], g.color_set)


def filtration_sup_distance(f: ColorFiltrationSpec, g: ColorFiltrationSpec) -> tuple[float, float]:
    """``(||f_v - g_v||_inf, ||f_e - g_e||_inf)`` over the shared color set."""
    if set(f.f_v) != set(g.f_v) or set(f.f_e) != set(g.f_e):
        raise FiltrationError("filtrations are defined on different color sets")
    dv = max((abs(f.f_v[c] - g.f_v[c]) for c in f.f_v), default=0.0)
    de = max((abs(f.f_e[k] - g.f_e[k]) for k in f.f_e), default=0.0)
    return dv, de


def min_gap(values) -> float:
    """Smallest gap between distinct sorted values (inf for fewer than two)."""
    vals = sorted(values)
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else math.inf
