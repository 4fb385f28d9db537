"""Discrimination and stability harnesses plus the seeded verification suites."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import descriptors as D
from .filtration import (
    ColorFiltrationSpec,
    FiltrationError,
    degree_filtration,
    filtration_sup_distance,
    forman_ricci_edge_values,
    min_gap,
    positivity_shift,
)
from .graph import (
    ColoredGraph,
    VertexPermutation,
    graph_to_dict,
    permute,
    random_colored_graph,
)
from .metrics import d_B_R, d_B_SpecR, stability_bound
from .spectral import SpectrumPolicy, component_spectrum, delta1_nonzero_spectrum

DEGREE_FORMAN = "degree-forman"
PALETTE = ("red", "blue", "green")
EDGE_FLOOR = 1e-6
BOUND_SLACK = 1e-9


# --- discrimination ------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminationReport:
    descriptor: str
    corpus: str
    pairs: int
    separated: int
    accuracy: float
    verdicts: tuple[tuple[int, int, bool], ...]

    def separated_pairs(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j, s in self.verdicts if s}

    def to_csv(self, names: Sequence[str] | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pair_id", "graph_a", "graph_b", "descriptor", "separated"])
        for pid, (i, j, s) in enumerate(self.verdicts):
            a = names[i] if names else str(i)
            b = names[j] if names else str(j)
            w.writerow([pid, a, b, self.descriptor, int(s)])
        return buf.getvalue()

    def summary(self) -> dict:
        return {"descriptor": self.descriptor, "corpus": self.corpus, "pairs": self.pairs,
                "separated": self.separated, "accuracy": self.accuracy}


def corpus_filtrations(corpus: Sequence[ColoredGraph], filtration):
    """Filtration values per graph; degree+Forman uses one shift for the whole corpus."""
    if filtration == DEGREE_FORMAN:
        raw = [v for g in corpus for v in forman_ricci_edge_values(g).values()]
        shift = positivity_shift(raw)
        return [degree_filtration(g, edge_shift=shift) for g in corpus]
    if isinstance(filtration, ColorFiltrationSpec):
        return [filtration] * len(corpus)
    raise FiltrationError(f"unsupported filtration {filtration!r}")


def corpus_diagrams(corpus, kind, filtration, policy=None) -> list[D.Diagram]:
    fs = corpus_filtrations(corpus, filtration)
    return [D.compute(kind, g, f, policy) for g, f in zip(corpus, fs)]


def discriminate(corpus: Sequence[ColoredGraph], descriptor: str, filtration=DEGREE_FORMAN,
                 tol: float = 1e-9, policy: SpectrumPolicy | None = None,
                 name: str = "corpus", diagrams: Sequence[D.Diagram] | None = None
                 ) -> DiscriminationReport:
    """Which unordered pairs of the corpus have different diagrams."""
    if diagrams is None:
        diagrams = corpus_diagrams(corpus, descriptor, filtration, policy)
    verdicts = []
    for i, j in itertools.combinations(range(len(diagrams)), 2):
        verdicts.append((i, j, not D.multiset_equal(diagrams[i], diagrams[j], tol)))
    sep = sum(v[2] for v in verdicts)
    total = len(verdicts)
    return DiscriminationReport(descriptor, name, total, sep,
                                sep / total if total else 0.0, tuple(verdicts))


@dataclass(frozen=True)
class OrderingCheck:
    holds: bool
    witness: tuple | None  # (descriptor, i, j) separated by it but not by SpectRe
    reports: dict = field(compare=False, default_factory=dict)


def expressivity_ordering_check(corpus, filtration=DEGREE_FORMAN, tol: float = 1e-9
                                ) -> OrderingCheck:
    """Pairs separated by RePHINE or by LS must also be separated by SpectRe."""
    spectre = corpus_diagrams(corpus, D.SPECTRE, filtration)
    reports = {
        D.SPECTRE: discriminate(corpus, D.SPECTRE, diagrams=spectre, tol=tol),
        D.REPHINE: discriminate(corpus, D.REPHINE, diagrams=[D.project(d, D.REPHINE) for d in spectre],
                                tol=tol),
        D.LS: discriminate(corpus, D.LS, diagrams=[D.project(d, D.LS) for d in spectre], tol=tol),
    }
    # RePHINE and LS are recomputed independently as a cross-check on the projections
    fs = corpus_filtrations(corpus, filtration)
    for kind, fn in ((D.REPHINE, D.compute_rephine), (D.LS, D.compute_ls)):
        direct = discriminate(corpus, kind, diagrams=[fn(g, f) for g, f in zip(corpus, fs)], tol=tol)
        if direct.verdicts != reports[kind].verdicts:
            raise AssertionError(f"{kind}: direct and projected diagrams disagree")
    top = reports[D.SPECTRE].separated_pairs()
    for kind in (D.REPHINE, D.LS):
        extra = sorted(reports[kind].separated_pairs() - top)
        if extra:
            return OrderingCheck(False, (kind, *extra[0]), reports)
    return OrderingCheck(True, None, reports)


# --- random inputs -------------------------------------------------------------

def random_connected_graph(n: int, extra_prob: float, colors: Sequence[str], seed) -> ColoredGraph:
    """Random spanning tree plus independent extra edges."""
    rng = np.random.default_rng(seed)
    edges = set()
    order = rng.permutation(n)
    for k in range(1, n):
        a, b = int(order[k]), int(order[int(rng.integers(0, k))])
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.random() < extra_prob:
                edges.add((a, b))
    picks = rng.integers(0, len(colors), size=n)
    return ColoredGraph.build(n, sorted(edges), [colors[int(i)] for i in picks], list(colors))


def random_spec(colors: Sequence[str], rng: np.random.Generator, injective: bool = False
                ) -> ColorFiltrationSpec:
    """Color filtration with small integer values (ties likely) or distinct values."""
    cols = sorted(colors)
    pairs = [(a, b) for i, a in enumerate(cols) for b in cols[i:]]
    if injective:
        fv = rng.choice(np.arange(1, 4 * len(cols) + 1), size=len(cols), replace=False)
        fv = fv + rng.uniform(-0.25, 0.25, size=len(cols))
        fe = rng.choice(np.arange(1, 4 * len(pairs) + 1), size=len(pairs), replace=False)
        fe = fe + rng.uniform(-0.25, 0.25, size=len(pairs))
    else:
        fv = rng.integers(0, 4, size=len(cols)).astype(float)
        fe = rng.integers(1, 4, size=len(pairs)).astype(float)
    return ColorFiltrationSpec({c: float(x) for c, x in zip(cols, fv)},
                               {p: float(x) for p, x in zip(pairs, fe)})


def perturb(f: ColorFiltrationSpec, scale: float, rng: np.random.Generator,
            scale_e: float | None = None) -> ColorFiltrationSpec:
    """Add independent ``U(-scale, scale)`` noise; edge values are floored at 1e-6."""
    scale_e = scale if scale_e is None else scale_e
    fv = {c: v + float(rng.uniform(-scale, scale)) if scale > 0 else v
          for c, v in sorted(f.f_v.items())}
    fe = {}
    for k, v in sorted(f.f_e.items()):
        w = v + float(rng.uniform(-scale_e, scale_e)) if scale_e > 0 else v
        fe[k] = max(w, EDGE_FLOOR)
    return ColorFiltrationSpec(fv, fe)


# --- stability -----------------------------------------------------------------

@dataclass(frozen=True)
class StabilitySample:
    graph: ColoredGraph
    f: ColorFiltrationSpec
    g: ColorFiltrationSpec
    distance: float
    bound: float
    holds: bool
    local: bool

    def replay(self, seed=None) -> dict:
        return {"graph": graph_to_dict(self.graph),
                "filtrations": [self.f.to_dict(), self.g.to_dict()], "seed": seed}


def in_injectivity_cell(f: ColorFiltrationSpec, g: ColorFiltrationSpec) -> bool:
    """f injective and g within half the smallest gap of f, separately on f_v and f_e."""
    if not f.is_injective():
        return False
    dv, de = filtration_sup_distance(f, g)
    return dv < 0.5 * min_gap(f.f_v.values()) and de < 0.5 * min_gap(f.f_e.values())


def pair_stability(graph: ColoredGraph, f: ColorFiltrationSpec, g: ColorFiltrationSpec,
                   descriptor: str = D.REPHINE, policy: SpectrumPolicy | None = None
                   ) -> StabilitySample:
    """Descriptor distance between two filtrations of one graph against the stability bound."""
    dv, de = filtration_sup_distance(f, g)
    bound = stability_bound(dv, de)
    if descriptor == D.REPHINE:
        dist = d_B_R(D.compute_rephine(graph, f), D.compute_rephine(graph, g))
    elif descriptor == D.SPECTRE:
        dist = d_B_SpecR(D.compute_spectre(graph, f, policy), D.compute_spectre(graph, g, policy))
    else:
        raise ValueError(f"stability is defined for RePHINE and SpectRe, not {descriptor}")
    return StabilitySample(graph, f, g, dist, bound, dist <= bound + BOUND_SLACK,
                           in_injectivity_cell(f, g))


def stability_sample(graph: ColoredGraph, f: ColorFiltrationSpec, perturb_scale: float,
                     descriptor: str = D.REPHINE, seed=0,
                     policy: SpectrumPolicy | None = None) -> StabilitySample:
    """Perturb ``f`` by seeded bounded noise and evaluate :func:`pair_stability`.

    For SpectRe ``f`` must be injective; the locality flag then records
    whether the drawn ``g`` stayed in the injectivity cell of ``f``.
    """
    if descriptor == D.SPECTRE and not f.is_injective():
        raise ValueError("SpectRe locality run needs an injective filtration")
    g = perturb(f, perturb_scale, np.random.default_rng(seed))
    return pair_stability(graph, f, g, descriptor, policy)


def local_scale(f: ColorFiltrationSpec, fraction: float = 0.49) -> tuple[float, float]:
    """Per-part perturbation radii below half the smallest gap."""
    gv = min_gap(f.f_v.values())
    ge = min_gap(f.f_e.values())
    return (fraction * gv if math.isfinite(gv) else 1.0,
            fraction * ge if math.isfinite(ge) else 1.0)


# --- verification suites ---------------------------------------------------------

@dataclass
class SuiteResult:
    suite: str
    count: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"suite": self.suite, "count": self.count, "passed": self.passed,
                "failures": self.failures}


def _sample_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def _random_graph(rng: np.random.Generator, n_lo=3, n_hi=10) -> ColoredGraph:
    n = int(rng.integers(n_lo, n_hi + 1))
    p = float(rng.uniform(0.25, 0.6))
    return random_colored_graph(n, p, PALETTE, int(rng.integers(0, 2**31)))


def suite_laplacian_duality(count: int = 100, seed: int = 0, tol: float = 1e-8) -> SuiteResult:
    """Edge-Laplacian and graph-Laplacian non-zero spectra agree on connected graphs."""
    res = SuiteResult("laplacian_duality", count)
    for i in range(count):
        s = _sample_seed(seed, i)
        rng = np.random.default_rng(s)
        n = int(rng.integers(1, 13))
        g = random_connected_graph(n, float(rng.uniform(0.0, 0.6)), PALETTE, s)
        d0 = component_spectrum(list(range(g.n)), g.edges).values
        d1 = delta1_nonzero_spectrum(g).values
        ok = len(d0) == len(d1) and all(abs(a - b) <= tol for a, b in zip(d0, d1))
        if not ok:
            res.failures.append({"graph": graph_to_dict(g), "filtrations": [], "seed": s,
                                 "detail": {"delta0": list(d0), "delta1": list(d1)}})
    return res


def suite_metric_axioms(count: int = 200, seed: int = 0, graphs: int = 20,
                        tol: float = 1e-9) -> SuiteResult:
    """Identity, symmetry (exact) and triangle inequality for both diagram metrics."""
    res = SuiteResult("metric_axioms", count)
    rng = np.random.default_rng(seed)
    pool = [_random_graph(rng) for _ in range(graphs)]
    for i in range(count):
        s = _sample_seed(seed, i)
        r = np.random.default_rng(s)
        g = pool[i % graphs]
        specs = [random_spec(g.color_set, r, injective=bool(r.integers(0, 2))) for _ in range(3)]
        for kind, compute, dist in ((D.REPHINE, D.compute_rephine, d_B_R),
                                    (D.SPECTRE, D.compute_spectre, d_B_SpecR)):
            x, y, z = (compute(g, f) for f in specs)
            problems = []
            if dist(x, x) != 0.0:
                problems.append("identity")
            dxy, dyx = dist(x, y), dist(y, x)
            if dxy != dyx:
                problems.append("symmetry")
            if dxy < 0.0:
                problems.append("non-negativity")
            if dxy == 0.0 and D.diagram_to_json(x) != D.diagram_to_json(y):
                problems.append("separation")
            dxz, dyz = dist(x, z), dist(y, z)
            if not dxz <= dxy + dyz + tol:
                problems.append("triangle")
            if problems:
                res.failures.append({"graph": graph_to_dict(g),
                                     "filtrations": [f.to_dict() for f in specs], "seed": s,
                                     "detail": {"descriptor": kind, "violated": problems}})
    return res


def suite_stability(count: int = 500, seed: int = 0, descriptor: str = D.REPHINE) -> SuiteResult:
    """Global bound for RePHINE; for SpectRe, the bound inside the injectivity cell."""
    res = SuiteResult(f"stability-{descriptor}", count)
    for i in range(count):
        s = _sample_seed(seed, i)
        rng = np.random.default_rng(s)
        g = _random_graph(rng)
        if descriptor == D.SPECTRE:
            f = random_spec(g.color_set, rng, injective=True)
            sv, se = local_scale(f)
            gspec = perturb(f, sv, rng, se)
            sample = pair_stability(g, f, gspec, descriptor)
            bad = sample.local and not sample.holds
            if not sample.local:
                raise AssertionError("local perturbation left the injectivity cell")
        else:
            f = random_spec(g.color_set, rng, injective=False)
            scale = float(rng.choice([0.05, 0.5, 2.0]))
            sample = pair_stability(g, f, perturb(f, scale, rng), descriptor)
            bad = not sample.holds
        if bad:
            doc = sample.replay(s)
            doc["detail"] = {"distance": sample.distance, "bound": sample.bound}
            res.failures.append(doc)
    return res


def suite_isomorphism(count: int = 50, seed: int = 0, perms: int = 20) -> SuiteResult:
    """Canonical SpectRe JSON is byte-identical under random relabelings."""
    res = SuiteResult("isomorphism", count)
    for i in range(count):
        s = _sample_seed(seed, i)
        rng = np.random.default_rng(s)
        g = _random_graph(rng, 3, 12)
        f = random_spec(g.color_set, rng, injective=bool(rng.integers(0, 2)))
        ref = D.diagram_to_json(D.compute_spectre(g, f))
        for k in range(perms):
            p = VertexPermutation.random(g.n, _sample_seed(s, k))
            out = D.diagram_to_json(D.compute_spectre(permute(g, p), f))
            if out != ref:
                res.failures.append({"graph": graph_to_dict(g), "filtrations": [f.to_dict()],
                                     "seed": s, "detail": {"permutation": list(p.perm)}})
                break
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "laplacian_duality": suite_laplacian_duality,
    "metric_axioms": suite_metric_axioms,
    "stability": suite_stability,
    "isomorphism": suite_isomorphism,
}


def run_suite(name: str, count: int, seed: int, **kw) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](count=count, seed=seed, **kw)


def report_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
