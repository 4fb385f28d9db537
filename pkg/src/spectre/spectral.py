"""Graph Laplacian spectra: dense symmetric eigensolver, power method, scheduling policy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .graph import ColoredGraph, GraphError

FULL = "full"
PARTIAL = "partial"
SCHEDULED = "scheduled"


class ConvergenceError(RuntimeError):
    """An eigensolver hit its iteration cap."""

    def __init__(self, message: str, size: int, iterations: int):
        super().__init__(f"{message} (component size {size}, {iterations} iterations)")
        self.size = size
        self.iterations = iterations


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with how they were obtained.

    ``method`` is ``"exact"`` (full decomposition), ``"power"`` (largest
    eigenvalue only) or ``"skipped"`` (not evaluated under scheduling; the
    values are then empty).
    """

    values: tuple[float, ...]
    method: str = "exact"
    iterations: int = 0

    @property
    def skipped(self) -> bool:
        return self.method == "skipped"


@dataclass(frozen=True)
class SpectrumPolicy:
    """How spectra are computed along a filtration.

    ``full`` decomposes every component. ``partial`` replaces the spectrum of
    components with more than ``threshold`` vertices by the power-method
    estimate of the largest eigenvalue. ``scheduled`` evaluates only a
    ``fraction`` of the filtration steps (always the last one) using the
    ``inner`` mode and marks the rest as skipped.
    """

    mode: str = FULL
    threshold: int = 9
    fraction: float = 1.0 / 3.0
    inner: str = FULL
    tol: float = 1e-10
    max_iter: int = 20000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in (FULL, PARTIAL, SCHEDULED):
            raise ValueError(f"unknown spectrum mode {self.mode!r}")
        if self.inner not in (FULL, PARTIAL):
            raise ValueError(f"inner mode must be full or partial, got {self.inner!r}")
        if not 0.0 < self.fraction <= 1.0:
            raise ValueError("fraction must lie in (0, 1]")
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        if self.max_iter < 1 or not self.tol > 0.0:
            raise ValueError("max_iter must be >= 1 and tol > 0")

    def describe(self) -> dict:
        out = {"mode": self.mode}
        if self.mode == PARTIAL or (self.mode == SCHEDULED and self.inner == PARTIAL):
            out["threshold"] = self.threshold
        if self.mode == SCHEDULED:
            out["fraction"] = self.fraction
            out["inner"] = self.inner
        return out


# --- matrices ----------------------------------------------------------------

def laplacian_from_edges(order: Sequence[int], edges: Iterable[tuple[int, int]]) -> np.ndarray:
    """``D - A`` on the vertices ``order`` (rows in that order); other edges ignored."""
    index = {v: i for i, v in enumerate(order)}
    k = len(order)
    lap = np.zeros((k, k))
    for u, w in edges:
        i = index.get(u)
        j = index.get(w)
        if i is None or j is None:
            continue
        lap[i, j] -= 1.0
        lap[j, i] -= 1.0
        lap[i, i] += 1.0
        lap[j, j] += 1.0
    return lap


def laplacian(g: ColoredGraph, component: Iterable[int] | None = None) -> np.ndarray:
    """Graph Laplacian restricted to ``component`` in ascending vertex order."""
    verts = sorted(range(g.n) if component is None else set(component))
    if verts and (verts[0] < 0 or verts[-1] >= g.n):
        raise GraphError("component is not a subset of the vertex set")
    return laplacian_from_edges(verts, g.edges)


def incidence(order: Sequence[int], edges: Sequence[tuple[int, int]]) -> np.ndarray:
    """Oriented vertex-edge incidence (``-1`` at the smaller endpoint, ``+1`` at the larger)."""
    index = {v: i for i, v in enumerate(order)}
    b = np.zeros((len(order), len(edges)))
    for j, (u, w) in enumerate(edges):
        b[index[u], j] = -1.0
        b[index[w], j] = 1.0
    return b


def invariant_order(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[int]:
    """Order vertices by stable color-refinement class, then by index.

    Isomorphic components whose refinement is discrete get identical
    Laplacians under this order, which makes their computed spectra agree
    bit for bit regardless of the input labeling.
    """
    verts = sorted(vertices)
    vset = set(verts)
    nbrs: dict[int, list[int]] = {v: [] for v in verts}
    for u, w in edges:
        if u in vset and w in vset:
            nbrs[u].append(w)
            nbrs[w].append(u)
    color = {v: len(nbrs[v]) for v in verts}
    classes = len(set(color.values()))
    for _ in range(len(verts)):
        sig = {v: (color[v], tuple(sorted(color[w] for w in nbrs[v]))) for v in verts}
        labels = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: labels[sig[v]] for v in verts}
        if len(labels) == classes:
            color = new
            break
        color, classes = new, len(labels)
    return sorted(verts, key=lambda v: (color[v], v))


# --- solvers -----------------------------------------------------------------

def eigenvalues_full(m, tol: float = 1e-12, max_iter: int = 60) -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    Householder tridiagonalization followed by implicit-shift QL. ``tol`` is
    the relative asymmetry accepted on input; ``max_iter`` caps QL sweeps per
    eigenvalue.
    """
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n == 0:
        return Spectrum(())
    scale = float(np.max(np.abs(a))) or 1.0
    if float(np.max(np.abs(a - a.T))) > tol * scale:
        raise ValueError("matrix is not symmetric")
    d, e = kernels.householder_tridiagonal(a)
    w, ok = kernels.tridiagonal_eigenvalues(d, e, max_iter)
    if not ok:
        raise ConvergenceError("QL iteration did not converge", n, max_iter)
    return Spectrum(tuple(float(x) for x in w), "exact", 0)


@dataclass(frozen=True)
class PowerResult:
    value: float
    iterations: int
    converged: bool


def power_method(m, max_iter: int = 20000, tol: float = 1e-10, seed: int = 0) -> PowerResult:
    """Largest eigenvalue of a positive semidefinite matrix by power iteration.

    Stops once the Rayleigh-quotient residual ``||m x - lam x||`` drops to
    ``tol * |lam|``. The start vector is drawn from ``seed``. On hitting
    ``max_iter`` the last estimate is returned with ``converged=False``.
    """
    a = np.asarray(m, dtype=np.float64)
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = a @ x
        lam = float(x @ y)
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return PowerResult(0.0, it, True)
        if float(np.linalg.norm(y - lam * x)) <= tol * abs(lam):
            return PowerResult(lam, it, True)
        x = y / ny
    return PowerResult(lam, max_iter, False)


def scheduled_indices(total: int, fraction: float) -> list[int]:
    """Evenly spaced event indices covering ``ceil(total * fraction)`` events, last included."""
    if total <= 0:
        return []
    count = min(total, max(1, math.ceil(total * fraction - 1e-9)))
    return [(j + 1) * total // count - 1 for j in range(count)]


def component_spectrum(vertices: Sequence[int], edges: Iterable[tuple[int, int]],
                       mode: str = FULL, policy: SpectrumPolicy | None = None) -> Spectrum:
    """Non-zero Laplacian spectrum of a connected vertex set.

    The component is connected, so exactly one eigenvalue is zero; the
    smallest computed eigenvalue is dropped instead of thresholding.
    """
    policy = policy or SpectrumPolicy()
    if len(vertices) <= 1:
        return Spectrum(())
    edges = list(edges)
    order = invariant_order(vertices, edges)
    lap = laplacian_from_edges(order, edges)
    if mode == PARTIAL and len(order) > policy.threshold:
        res = power_method(lap, policy.max_iter, policy.tol, policy.seed)
        if not res.converged:
            raise ConvergenceError("power method did not converge", len(order), res.iterations)
        return Spectrum((res.value,), "power", res.iterations)
    full = eigenvalues_full(lap)
    return Spectrum(full.values[1:], "exact")


def spectrum_for_event(g: ColoredGraph, component: Iterable[int], policy: SpectrumPolicy,
                       event_index: int, total_events: int) -> Spectrum:
    """Spectrum of ``component`` in ``g`` at filtration step ``event_index`` under ``policy``."""
    comp = sorted(set(component))
    if comp and (comp[0] < 0 or comp[-1] >= g.n):
        raise GraphError("component is not a subset of the vertex set")
    mode = policy.mode
    if mode == SCHEDULED:
        if event_index not in scheduled_indices(total_events, policy.fraction):
            return Spectrum((), "skipped")
        mode = policy.inner
    return component_spectrum(comp, g.edges, mode, policy)


def delta1_nonzero_spectrum(g: ColoredGraph, component: Iterable[int] | None = None) -> Spectrum:
    """Non-zero eigenvalues of the edge Laplacian ``B^T B`` of a connected vertex set.

    Exactly ``beta_1 = |E| - |V| + 1`` eigenvalues are zero; that many of the
    smallest are removed.
    """
    verts = sorted(range(g.n) if component is None else set(component))
    vset = set(verts)
    edges = [e for e in g.edges if e[0] in vset and e[1] in vset]
    if not edges:
        return Spectrum(())
    b = incidence(verts, edges)
    full = eigenvalues_full(b.T @ b)
    zeros = len(edges) - len(verts) + 1
    return Spectrum(full.values[zeros:], "exact")
