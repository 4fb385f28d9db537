"""Vertex-colored simple graphs: data model, JSON I/O, permutation, generation."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed or invalid graph input."""


@dataclass(frozen=True)
class ColoredGraph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored once as sorted ``(min, max)`` pairs in lexicographic
    order; ``colors[v]`` is the color name of vertex ``v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[str, ...]
    color_set: tuple[str, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if len(self.colors) != self.n:
            raise GraphError(f"expected {self.n} colors, got {len(self.colors)}")
        declared = set(self.color_set)
        if len(declared) != len(self.color_set):
            raise GraphError("color_set has repeated entries")
        for v, c in enumerate(self.colors):
            if c not in declared:
                raise GraphError(f"vertex {v}: color {c!r} not in color_set")
        seen = set()
        prev = None
        for u, w in self.edges:
            if not (0 <= u < self.n and 0 <= w < self.n):
                raise GraphError(f"edge ({u}, {w}) out of range for n={self.n}")
            if u == w:
                raise GraphError(f"self-loop at vertex {u}")
            if u > w:
                raise GraphError(f"edge ({u}, {w}) not in canonical (min, max) form")
            if (u, w) in seen:
                raise GraphError(f"duplicate edge ({u}, {w})")
            if prev is not None and (u, w) < prev:
                raise GraphError("edges not in canonical sorted order")
            seen.add((u, w))
            prev = (u, w)

    @classmethod
    def build(cls, n: int, edges: Iterable[Sequence[int]], colors: Sequence[str],
              color_set: Sequence[str] | None = None) -> "ColoredGraph":
        """Canonicalize edge pairs and construct; duplicates are rejected."""
        canon = []
        seen = set()
        for pair in edges:
            if len(pair) != 2:
                raise GraphError(f"edge {pair!r} is not a pair")
            u, w = int(pair[0]), int(pair[1])
            if u == w:
                raise GraphError(f"self-loop at vertex {u}")
            e = (min(u, w), max(u, w))
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        colors = tuple(colors)
        if color_set is None:
            color_set = sorted(set(colors))
        return cls(n, tuple(sorted(canon)), colors, tuple(color_set))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, w in self.edges:
            nbrs[u].add(w)
            nbrs[w].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.neighbors)

    def with_color_set(self, color_set: Sequence[str]) -> "ColoredGraph":
        """Same graph with a (super)set of declared colors."""
        return ColoredGraph(self.n, self.edges, self.colors, tuple(color_set))

    def edge_subgraph(self, keep: Iterable[tuple[int, int]]) -> "ColoredGraph":
        """All vertices, only the given edges."""
        return ColoredGraph.build(self.n, keep, self.colors, self.color_set)


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection on ``0..n-1``; ``perm[v]`` is the image of vertex ``v``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise GraphError("permutation is not a bijection on 0..n-1")

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.perm)
        for v, pv in enumerate(self.perm):
            inv[pv] = v
        return VertexPermutation(tuple(inv))

    @classmethod
    def random(cls, n: int, seed: int) -> "VertexPermutation":
        rng = np.random.default_rng(seed)
        return cls(tuple(int(x) for x in rng.permutation(n)))


def permute(g: ColoredGraph, p: VertexPermutation | Sequence[int]) -> ColoredGraph:
    """Relabel vertex ``v`` as ``p[v]``; the result is isomorphic to ``g`` via ``p``."""
    if not isinstance(p, VertexPermutation):
        p = VertexPermutation(tuple(int(x) for x in p))
    if len(p.perm) != g.n:
        raise GraphError(f"permutation length {len(p.perm)} != n={g.n}")
    colors = [""] * g.n
    for v, pv in enumerate(p.perm):
        colors[pv] = g.colors[v]
    edges = [(p.perm[u], p.perm[w]) for u, w in g.edges]
    return ColoredGraph.build(g.n, edges, colors, g.color_set)


def random_colored_graph(n: int, edge_prob: float, colors: Sequence[str], seed: int) -> ColoredGraph:
    """Erdos-Renyi graph with uniformly drawn vertex colors, deterministic in ``seed``."""
    if not colors:
        raise GraphError("color list is empty")
    if n < 1:
        raise GraphError("n must be at least 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    palette = list(colors)
    picks = rng.integers(0, len(palette), size=n)
    vcolors = [palette[int(i)] for i in picks]
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < edge_prob
    edges = list(zip(iu[mask].tolist(), ju[mask].tolist()))
    return ColoredGraph.build(n, edges, vcolors, tuple(dict.fromkeys(palette)))


def connected_components(g: ColoredGraph) -> list[list[int]]:
    """Vertex sets of the connected components, each ascending, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def betti1(g: ColoredGraph) -> int:
    """Number of independent cycles, |E| - |V| + #components."""
    return g.m - g.n + len(connected_components(g))


# --- JSON ------------------------------------------------------------------

def graph_to_dict(g: ColoredGraph) -> dict:
    return {
        "color_set": list(g.color_set),
        "vertices": [{"id": v, "color": c} for v, c in enumerate(g.colors)],
        "edges": [[u, w] for u, w in g.edges],
    }


def serialize_graph(g: ColoredGraph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":"))


def graph_from_dict(doc) -> ColoredGraph:
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    try:
        color_set = doc["color_set"]
        vertices = doc["vertices"]
        edges = doc.get("edges", [])
    except KeyError as exc:
        raise GraphError(f"missing key {exc}") from None
    if not isinstance(color_set, list) or not all(isinstance(c, str) for c in color_set):
        raise GraphError("color_set must be a list of strings")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphError("vertices and edges must be lists")
    n = len(vertices)
    colors: list[str | None] = [None] * n
    for item in vertices:
        try:
            vid, color = item["id"], item["color"]
        except (KeyError, TypeError):
            raise GraphError(f"bad vertex entry {item!r}") from None
        if not isinstance(vid, int) or isinstance(vid, bool) or not 0 <= vid < n:
            raise GraphError(f"vertex id {vid!r} out of range 0..{n - 1}")
        if colors[vid] is not None:
            raise GraphError(f"vertex id {vid} repeated")
        if color not in color_set:
            raise GraphError(f"vertex {vid}: color {color!r} not in color_set")
        colors[vid] = color
    for pair in edges:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
            raise GraphError(f"bad edge entry {pair!r}")
        if not all(0 <= x < n for x in pair):
            raise GraphError(f"edge {pair} references vertex out of range")
    return ColoredGraph.build(n, edges, colors, color_set)


def parse_graph(data: bytes | str) -> ColoredGraph:
    """Parse and validate a graph JSON document."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise GraphError(f"malformed JSON: {exc}") from None
    return graph_from_dict(doc)


def load_graph(path) -> ColoredGraph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def union_color_set(graphs: Iterable[ColoredGraph]) -> tuple[str, ...]:
    """Union of declared color sets, first-seen order."""
    out: dict[str, None] = {}
    for g in graphs:
        for c in g.color_set:
            out.setdefault(c, None)
    return tuple(out)
