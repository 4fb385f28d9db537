"""RePHINE, SpectRe and LS diagrams with canonical forms and tolerant equality.

Tuple layouts (all plain tuples of floats, ``rho`` a tuple of floats):

* ``PH``: ``(b, d)``
* ``RePHINE``: ``(b, d, alpha, gamma)``
* ``SpectRe``: ``(b, d, alpha, gamma, rho)``
* ``LS``: ``(b, d, rho)``

Infinite deaths are ``math.inf``. Provenance (vertex index or cycle edge) is
kept alongside each tuple but never takes part in comparison.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from ._backend import kernels
from .filtration import VERTEX, ColorFiltrationSpec, FiltrationValues, induce
from .graph import ColoredGraph
from .persistence import INF, compute_ph, rank_from_keys, sweep
from .spectral import FULL, Spectrum, SpectrumPolicy, spectrum_for_event

PH = "PH"
REPHINE = "RePHINE"
SPECTRE = "SpectRe"
LS = "LS"
KINDS = (PH, REPHINE, SPECTRE, LS)
ARITY = {PH: 2, REPHINE: 4, SPECTRE: 5, LS: 3}
JSON_DECIMALS = 10

GAMMA_SENTINEL = 0.0  # below every admissible edge value

FiltrationInput = Union[ColorFiltrationSpec, FiltrationValues]


class DescriptorError(ValueError):
    """Raised for incompatible or malformed diagrams."""


@dataclass(frozen=True)
class Diagram:
    kind: str
    dim0: tuple
    dim1: tuple
    origin0: tuple = field(default=(), compare=False)
    origin1: tuple = field(default=(), compare=False)
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DescriptorError(f"unknown diagram kind {self.kind!r}")

    @property
    def spectrum_mode(self) -> str | None:
        if self.kind not in (SPECTRE, LS):
            return None
        return self.meta.get("spectrum", {}).get("mode", FULL)

    def __len__(self):
        return len(self.dim0) + len(self.dim1)


def _values_for(g: ColoredGraph, f: FiltrationInput) -> FiltrationValues:
    if isinstance(f, FiltrationValues):
        if len(f.vertex) != g.n or len(f.edge) != g.m:
            raise DescriptorError("filtration values do not fit the graph")
        return f
    return induce(f, g)


def gamma_values(g: ColoredGraph, values: FiltrationValues) -> tuple[list[float], list[int]]:
    """Per-vertex minimum incident edge value; isolated vertices get the sentinel."""
    gamma = [INF] * g.n
    for (u, w), fe in zip(g.edges, values.edge):
        if fe < gamma[u]:
            gamma[u] = fe
        if fe < gamma[w]:
            gamma[w] = fe
    isolated = [v for v in range(g.n) if gamma[v] == INF]
    for v in isolated:
        gamma[v] = GAMMA_SENTINEL
    return gamma, isolated


def kill_rank(alpha: Sequence[float], gamma: Sequence[float],
              tiebreak: Sequence[int] | None = None) -> list[int]:
    """Survival order: greater alpha dies, then lower gamma, then smaller tiebreak.

    ``tiebreak`` defaults to the vertex index. A union-find representative
    is always the lowest-ranked member, so comparing representatives by
    rank reproduces the pairwise kill decision.
    """
    n = len(alpha)
    tb = list(range(n)) if tiebreak is None else list(tiebreak)
    return rank_from_keys([(alpha[v], -gamma[v], -tb[v]) for v in range(n)])


def _rephine_core(g, values, tiebreak, want_snapshots):
    alpha = list(values.vertex)
    gamma, isolated = gamma_values(g, values)
    trace = sweep(g, values.edge, kill_rank(alpha, gamma, tiebreak), want_snapshots)
    death = [INF] * g.n
    death_group = [-1] * g.n
    for ev in trace.merges:
        death[ev.dying] = ev.time
        death_group[ev.dying] = ev.group
    return alpha, gamma, isolated, trace, death, death_group


def compute_rephine(g: ColoredGraph, f: FiltrationInput,
                    tiebreak: Sequence[int] | None = None) -> Diagram:
    """RePHINE diagram under the edge filtration (vertices born at 0)."""
    values = _values_for(g, f)
    alpha, gamma, isolated, trace, death, _ = _rephine_core(g, values, tiebreak, False)
    dim0 = [(0.0, death[v], alpha[v], gamma[v]) for v in range(g.n)]
    dim1 = [(1.0, ev.time, 0.0, 0.0) for ev in trace.cycles]
    meta = {"gamma_sentinel": tuple(isolated)}
    return Diagram(REPHINE, tuple(dim0), tuple(dim1), tuple(range(g.n)),
                   tuple(ev.edge for ev in trace.cycles), meta)


def compute_spectre(g: ColoredGraph, f: FiltrationInput, policy: SpectrumPolicy | None = None,
                    tiebreak: Sequence[int] | None = None) -> Diagram:
    """SpectRe diagram: RePHINE tuples extended by the non-zero Laplacian spectrum.

    A vertex dying at ``t`` reads the spectrum of its component once every
    edge of value ``t`` is present; surviving vertices read their final
    component; a cycle reads the component of its edge at its own step.
    """
    policy = policy or SpectrumPolicy()
    values = _values_for(g, f)
    alpha, gamma, isolated, trace, death, death_group = _rephine_core(g, values, tiebreak, True)
    total = max(trace.num_groups, 1)
    last = total - 1
    cache: dict[tuple[int, int], Spectrum] = {}
    stages: dict[int, ColoredGraph] = {}

    def stage(group: int) -> ColoredGraph:
        # the filtration stage once every edge of this group is present
        if group not in stages:
            t = trace.group_times[group]
            stages[group] = g.edge_subgraph(e for e, fe in zip(g.edges, values.edge) if fe <= t)
        return stages[group]

    def rho_at(group: int, vertex: int) -> Spectrum:
        if trace.num_groups == 0:
            members = [vertex]
            key = (0, vertex)
            sub = g
        else:
            label = int(trace.snapshots[group, vertex])
            key = (group, label)
            if key in cache:
                return cache[key]
            members = trace.members(group, vertex)
            sub = stage(group)
        spec = spectrum_for_event(sub, members, policy, group, total)
        cache[key] = spec
        return spec

    dim0, dim1 = [], []
    skipped = 0
    power = 0
    for v in range(g.n):
        s = rho_at(death_group[v] if death_group[v] >= 0 else last, v)
        skipped += s.skipped
        power += s.method == "power"
        dim0.append((0.0, death[v], alpha[v], gamma[v], s.values))
    for ev in trace.cycles:
        s = rho_at(ev.group, ev.edge[0])
        skipped += s.skipped
        power += s.method == "power"
        dim1.append((1.0, ev.time, 0.0, 0.0, s.values))
    meta = {"gamma_sentinel": tuple(isolated), "spectrum": policy.describe(),
            "skipped": skipped, "power": power}
    return Diagram(SPECTRE, tuple(dim0), tuple(dim1), tuple(range(g.n)),
                   tuple(ev.edge for ev in trace.cycles), meta)


def project(d: Diagram, kind: str) -> Diagram:
    """Drop components: SpectRe to RePHINE (no rho) or LS (no alpha, gamma)."""
    if d.kind == kind:
        return d
    if d.kind != SPECTRE or kind not in (REPHINE, LS):
        raise DescriptorError(f"cannot project {d.kind} to {kind}")
    if kind == REPHINE:
        cut = lambda t: t[:4]  # noqa: E731
        meta = {k: v for k, v in d.meta.items() if k == "gamma_sentinel"}
    else:
        cut = lambda t: (t[0], t[1], t[4])  # noqa: E731
        meta = {k: v for k, v in d.meta.items() if k != "gamma_sentinel"}
    return Diagram(kind, tuple(cut(t) for t in d.dim0), tuple(cut(t) for t in d.dim1),
                   d.origin0, d.origin1, meta)


def compute_ls(g: ColoredGraph, f: FiltrationInput, policy: SpectrumPolicy | None = None) -> Diagram:
    return project(compute_spectre(g, f, policy), LS)


def compute_ph_diagram(g: ColoredGraph, f: FiltrationInput, kind: str = VERTEX) -> Diagram:
    """Ordinary persistence pairs as a ``PH`` diagram (vertex filtration by default)."""
    values = _values_for(g, f)
    ph = compute_ph(g, values, kind)
    return Diagram(PH, tuple(tuple(p) for p in ph.dim0), tuple(tuple(p) for p in ph.dim1),
                   meta={"filtration": kind})


def compute(kind: str, g: ColoredGraph, f: FiltrationInput,
            policy: SpectrumPolicy | None = None) -> Diagram:
    if kind == REPHINE:
        return compute_rephine(g, f)
    if kind == SPECTRE:
        return compute_spectre(g, f, policy)
    if kind == LS:
        return compute_ls(g, f, policy)
    if kind == PH:
        return compute_ph_diagram(g, f)
    raise DescriptorError(f"unknown diagram kind {kind!r}")


# --- canonical form ----------------------------------------------------------

def _canon_sort(tuples, origins):
    order = sorted(range(len(tuples)), key=lambda i: tuples[i])
    return tuple(tuples[i] for i in order), tuple(origins[i] for i in order) if origins else ()


def canonicalize(d: Diagram) -> Diagram:
    """Tuples in lexicographic order (rho compared elementwise, inf greatest)."""
    dim0, o0 = _canon_sort(d.dim0, d.origin0)
    dim1, o1 = _canon_sort(d.dim1, d.origin1)
    return replace(d, dim0=dim0, dim1=dim1, origin0=o0, origin1=o1)


def _rho_index(kind: str) -> int | None:
    return {SPECTRE: 4, LS: 2}.get(kind)


def _close(x: float, y: float, tol: float) -> bool:
    if math.isinf(x) or math.isinf(y):
        return x == y
    return abs(x - y) <= tol


def tuples_close(s, t, rho_at: int | None, tol: float) -> bool:
    for i, (x, y) in enumerate(zip(s, t)):
        if i == rho_at:
            if len(x) != len(y) or not all(_close(a, b, tol) for a, b in zip(x, y)):
                return False
        elif not _close(x, y, tol):
            return False
    return True


def _multiset_close(xs, ys, rho_at, tol) -> bool:
    if len(xs) != len(ys):
        return False
    xs, ys = sorted(xs), sorted(ys)
    if all(tuples_close(s, t, rho_at, tol) for s, t in zip(xs, ys)):
        return True
    # sorted order can interleave near-equal tuples; fall back to a matching
    allowed = np.array([[tuples_close(s, t, rho_at, tol) for t in ys] for s in xs], dtype=bool)
    size, _ = kernels.max_matching(allowed)
    return int(size) == len(xs)


def multiset_equal(a: Diagram, b: Diagram, tol: float = 1e-9) -> bool:
    """Equality as multisets, componentwise within ``tol``; provenance ignored."""
    if a.kind != b.kind:
        raise DescriptorError(f"cannot compare {a.kind} with {b.kind}")
    if a.spectrum_mode != b.spectrum_mode:
        raise DescriptorError(
            f"spectra computed under different modes ({a.spectrum_mode} vs {b.spectrum_mode})")
    rho_at = _rho_index(a.kind)
    return (_multiset_close(a.dim0, b.dim0, rho_at, tol)
            and _multiset_close(a.dim1, b.dim1, rho_at, tol))


# --- serialization -----------------------------------------------------------

def _num(x: float):
    if math.isinf(x):
        if x < 0:
            raise DescriptorError("negative infinity in diagram")
        return "inf"
    if x == 0.0:
        return 0
    if float(x).is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return float(x)


def _json_tuple(t, rho_at):
    out = []
    for i, x in enumerate(t):
        if i == rho_at:
            out.append([round(float(r), JSON_DECIMALS) + 0.0 for r in x])
        else:
            out.append(_num(x))
    return out


def _rounded_sorted(tuples, rho_at):
    rounded = []
    for t in tuples:
        if rho_at is None:
            rounded.append(tuple(t))
        else:
            rho = tuple(round(float(r), JSON_DECIMALS) + 0.0 for r in t[rho_at])
            rounded.append(tuple(rho if i == rho_at else x for i, x in enumerate(t)))
    return sorted(rounded)


def diagram_to_dict(d: Diagram) -> dict:
    rho_at = _rho_index(d.kind)
    doc = {
        "kind": d.kind,
        "dim0": [_json_tuple(t, rho_at) for t in _rounded_sorted(d.dim0, rho_at)],
        "dim1": [_json_tuple(t, rho_at) for t in _rounded_sorted(d.dim1, rho_at)],
    }
    mode = d.spectrum_mode
    if mode is not None and mode != FULL:
        doc["spectrum"] = d.meta["spectrum"]
    return doc


def diagram_to_json(d: Diagram) -> str:
    """Canonical compact JSON; equal diagrams give byte-identical output."""
    return json.dumps(diagram_to_dict(d), separators=(",", ":"))


def _parse_num(x):
    if x == "inf":
        return INF
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DescriptorError(f"bad number {x!r}")
    return float(x)


def diagram_from_dict(doc) -> Diagram:
    if not isinstance(doc, dict):
        raise DescriptorError("diagram document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DescriptorError(f"unknown diagram kind {kind!r}")
    rho_at = _rho_index(kind)
    dims = []
    for key in ("dim0", "dim1"):
        rows = doc.get(key, [])
        if not isinstance(rows, list):
            raise DescriptorError(f"{key} must be a list")
        parsed = []
        for row in rows:
            if not isinstance(row, list) or len(row) != ARITY[kind]:
                raise DescriptorError(f"{key} entry {row!r} does not have {ARITY[kind]} fields")
            t = []
            for i, x in enumerate(row):
                if i == rho_at:
                    if not isinstance(x, list):
                        raise DescriptorError(f"spectrum field {x!r} is not a list")
                    t.append(tuple(_parse_num(r) for r in x))
                else:
                    t.append(_parse_num(x))
            parsed.append(tuple(t))
        dims.append(tuple(parsed))
    meta = {}
    if "spectrum" in doc:
        meta["spectrum"] = dict(doc["spectrum"])
    elif rho_at is not None:
        meta["spectrum"] = {"mode": FULL}
    return Diagram(kind, dims[0], dims[1], meta=meta)


def parse_diagram(data: bytes | str) -> Diagram:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DescriptorError(f"malformed JSON: {exc}") from None
    return diagram_from_dict(doc)


def load_diagram(path) -> Diagram:
    with open(path, "rb") as fh:
        return parse_diagram(fh.read())


CSV_FIELDS = {
    PH: ["dim", "b", "d"],
    REPHINE: ["dim", "b", "d", "alpha", "gamma"],
    SPECTRE: ["dim", "b", "d", "alpha", "gamma", "rho"],
    LS: ["dim", "b", "d", "rho"],
}


def diagram_to_csv(d: Diagram) -> str:
    """One row per tuple; rho entries joined by ``;``."""
    doc = diagram_to_dict(d)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS[d.kind])
    for dim in (0, 1):
        for row in doc[f"dim{dim}"]:
            w.writerow([dim] + [";".join(repr(r) for r in x) if isinstance(x, list) else x
                                for x in row])
    return buf.getvalue()
