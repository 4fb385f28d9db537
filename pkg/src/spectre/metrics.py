"""Tuple distances and the bijection bottleneck between equal-size diagrams."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .descriptors import LS, PH, REPHINE, SPECTRE, Diagram, canonicalize

INF = math.inf

RE_D = "rephine_d"
SPEC_DPRIME = "spectre_dprime"
SPEC_ONLY = "spec_only"
LS_D = "ls_d"
PH_D = "ph_d"


class MetricError(ValueError):
    """Incompatible diagrams (kind or cardinality)."""


def absdiff(x: float, y: float) -> float:
    """``|x - y|`` with ``|inf - inf| = 0`` and ``|inf - finite| = inf``."""
    if math.isinf(x) or math.isinf(y):
        return 0.0 if x == y else INF
    return abs(x - y)


def tuple_distance_d(a: Sequence[float], b: Sequence[float]) -> float:
    """``max(|db|, |dd|) + |dalpha| + |dgamma|`` on the first four fields."""
    return (max(absdiff(a[0], b[0]), absdiff(a[1], b[1]))
            + absdiff(a[2], b[2]) + absdiff(a[3], b[3]))


def spec_distance(r0: Sequence[float], r1: Sequence[float]) -> float:
    """l1 distance of ascending-sorted lists padded with trailing zeros."""
    x = sorted(r0)
    y = sorted(r1)
    k = max(len(x), len(y))
    x += [0.0] * (k - len(x))
    y += [0.0] * (k - len(y))
    total = 0.0
    for p, q in zip(x, y):
        total += abs(p - q)
    return total


def tuple_distance_dprime(a, b) -> float:
    return tuple_distance_d(a, b) + spec_distance(a[4], b[4])


def _ls_distance(a, b) -> float:
    return max(absdiff(a[0], b[0]), absdiff(a[1], b[1])) + spec_distance(a[2], b[2])


def _ph_distance(a, b) -> float:
    return max(absdiff(a[0], b[0]), absdiff(a[1], b[1]))


def _spec_only(a, b) -> float:
    return spec_distance(a[-1], b[-1])


DISTANCES: dict[str, Callable] = {
    RE_D: tuple_distance_d,
    SPEC_DPRIME: tuple_distance_dprime,
    SPEC_ONLY: _spec_only,
    LS_D: _ls_distance,
    PH_D: _ph_distance,
}

KIND_DISTANCE = {REPHINE: RE_D, SPECTRE: SPEC_DPRIME, LS: LS_D, PH: PH_D}


@dataclass(frozen=True)
class MatchResult:
    value: float
    assignment: tuple[tuple[int, int], ...]


def distance_matrix(A, B, kind: str) -> np.ndarray:
    dist = DISTANCES[kind]
    out = np.empty((len(A), len(B)))
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            out[i, j] = dist(a, b)
    return out


def bott(A: Sequence, B: Sequence, kind: str = RE_D) -> MatchResult:
    """Minimum over bijections of the maximum matched distance, with a witness.

    Binary search over the distinct pairwise distances; each probe asks for
    a perfect matching among pairs at or below the threshold.
    """
    if kind not in DISTANCES:
        raise MetricError(f"unknown tuple distance {kind!r}")
    if len(A) != len(B):
        raise MetricError(f"cardinality mismatch: {len(A)} vs {len(B)}")
    k = len(A)
    if k == 0:
        return MatchResult(0.0, ())
    dm = distance_matrix(A, B, kind)
    cands = np.unique(dm)  # sorted, inf last
    lo, hi = 0, len(cands) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        size, match = kernels.max_matching(dm <= cands[mid])
        if int(size) == k:
            best = (float(cands[mid]), match)
            hi = mid - 1
        else:
            lo = mid + 1
    value, match = best  # the full matrix always admits a perfect matching
    return MatchResult(value, tuple((i, int(match[i])) for i in range(k)))


@dataclass(frozen=True)
class DiagramDistance:
    value: float
    dim0: MatchResult
    dim1: MatchResult

    def matching(self, n0: int) -> list[list[int]]:
        """Pairs over the concatenated ``dim0 + dim1`` canonical tuple lists."""
        out = [[i, j] for i, j in self.dim0.assignment]
        out += [[n0 + i, n0 + j] for i, j in self.dim1.assignment]
        return out


def diagram_distance(Df: Diagram, Dg: Diagram) -> DiagramDistance:
    """Sum of the per-dimension bottlenecks with the kind's tuple distance."""
    if Df.kind != Dg.kind:
        raise MetricError(f"cannot compare {Df.kind} with {Dg.kind}")
    if Df.spectrum_mode != Dg.spectrum_mode:
        raise MetricError("spectra computed under different modes")
    for dim in ("dim0", "dim1"):
        if len(getattr(Df, dim)) != len(getattr(Dg, dim)):
            raise MetricError(f"{dim} cardinality mismatch: "
                              f"{len(getattr(Df, dim))} vs {len(getattr(Dg, dim))}")
    kind = KIND_DISTANCE[Df.kind]
    a, b = canonicalize(Df), canonicalize(Dg)
    r0 = bott(a.dim0, b.dim0, kind)
    r1 = bott(a.dim1, b.dim1, kind)
    return DiagramDistance(r0.value + r1.value, r0, r1)


def d_B_R(Df: Diagram, Dg: Diagram) -> float:
    if Df.kind != REPHINE or Dg.kind != REPHINE:
        raise MetricError("d_B_R needs two RePHINE diagrams")
    return diagram_distance(Df, Dg).value


def d_B_SpecR(Df: Diagram, Dg: Diagram) -> float:
    if Df.kind != SPECTRE or Dg.kind != SPECTRE:
        raise MetricError("d_B_SpecR needs two SpectRe diagrams")
    return diagram_distance(Df, Dg).value


def stability_bound(dv: float, de: float) -> float:
    return 3.0 * de + dv
