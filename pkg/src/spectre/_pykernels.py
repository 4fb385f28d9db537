"""Pure-Python implementations of the hot kernels.

Mirrors the API of the compiled ``_ckernels`` module exactly; used when the
extension is unavailable or ``SPECTRE_PURE_PYTHON`` is set.
"""
import math
from collections import deque

import numpy as np

EPS = np.finfo(np.float64).eps


def sweep(n, eu, ev, values, rank, want_snapshots):
    """Union-find pass over edges given in processing order.

    ``rank[v]`` is the survival priority of vertex ``v``: when two components
    merge, the representative with the larger rank dies. Edges with equal
    consecutive ``values`` form one group; with ``want_snapshots`` the root
    label of every vertex is recorded after each group.

    Returns ``(merged, dying, survivor, group, snaps)``. For an edge closing a
    cycle ``merged`` is 0, ``dying`` is -1 and ``survivor`` is the component's
    representative.
    """
    m = len(eu)
    parent = list(range(n))
    size = [1] * n
    rep = list(range(n))
    rank = [int(r) for r in rank]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = np.zeros(m, dtype=np.int8)
    dying = np.full(m, -1, dtype=np.int64)
    survivor = np.full(m, -1, dtype=np.int64)
    group = np.zeros(m, dtype=np.int64)
    snaps = []
    g = -1
    for i in range(m):
        if i == 0 or values[i] != values[i - 1]:
            g += 1
        group[i] = g
        ru = find(int(eu[i]))
        rv = find(int(ev[i]))
        if ru == rv:
            survivor[i] = rep[ru]
        else:
            a, b = rep[ru], rep[rv]
            if rank[a] < rank[b]:
                keep, die = a, b
            else:
                keep, die = b, a
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            rep[ru] = keep
            merged[i] = 1
            dying[i] = die
            survivor[i] = keep
        if want_snapshots and (i == m - 1 or values[i + 1] != values[i]):
            snaps.append([find(v) for v in range(n)])
    snap_arr = np.array(snaps, dtype=np.int64).reshape(len(snaps), n)
    return merged, dying, survivor, group, snap_arr


def max_matching(allowed):
    """Hopcroft-Karp maximum matching on a dense k x k boolean matrix.

    Returns ``(size, match_left)`` where ``match_left[i]`` is the column matched
    to row ``i`` or -1.
    """
    allowed = np.asarray(allowed, dtype=bool)
    k = allowed.shape[0]
    adj = [np.flatnonzero(allowed[i]).tolist() for i in range(k)]
    match_l = [-1] * k
    match_r = [-1] * k
    inf = k + 1
    dist = [0] * k

    def bfs():
        q = deque()
        for u in range(k):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = inf
        found = False
        while q:
            u = q.popleft()
            for w in adj[u]:
                x = match_r[w]
                if x == -1:
                    found = True
                elif dist[x] == inf:
                    dist[x] = dist[u] + 1
                    q.append(x)
        return found

    def dfs(u):
        # iterative augmenting search along the BFS layering
        stack = [(u, 0)]
        path = []
        while stack:
            x, pos = stack[-1]
            nbrs = adj[x]
            advanced = False
            while pos < len(nbrs):
                w = nbrs[pos]
                pos += 1
                y = match_r[w]
                if y == -1:
                    stack[-1] = (x, pos)
                    path.append((x, w))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[y] == dist[x] + 1:
                    stack[-1] = (x, pos)
                    path.append((x, w))
                    stack.append((y, 0))
                    advanced = True
                    break
            if not advanced:
                dist[x] = inf
                stack.pop()
                if path:
                    path.pop()
        return False

    size = 0
    while bfs():
        for u in range(k):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, np.array(match_l, dtype=np.int64)


def householder_tridiagonal(a):
    """Reduce a symmetric matrix to tridiagonal form by Householder reflections.

    Returns ``(d, e)``: the diagonal and the subdiagonal, with ``e[i]`` coupling
    rows ``i`` and ``i + 1`` and ``e[n - 1] = 0``.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        norm = math.sqrt(float(x @ x))
        if norm == 0.0:
            e[k] = 0.0
            d[k] = a[k, k]
            continue
        alpha = -math.copysign(norm, x[0])
        v = x
        v[0] -= alpha
        v /= math.sqrt(float(v @ v))
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        q = p - (v @ p) * v
        sub -= 2.0 * (np.outer(v, q) + np.outer(q, v))
        d[k] = a[k, k]
        e[k] = alpha
    if n >= 2:
        d[n - 2] = a[n - 2, n - 2]
        e[n - 2] = a[n - 1, n - 2]
    if n >= 1:
        d[n - 1] = a[n - 1, n - 1]
    return d, e


def tridiagonal_eigenvalues(d, e, max_iter):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    Returns ``(eigenvalues ascending, ok)``; ``ok`` is False when some
    eigenvalue needed more than ``max_iter`` sweeps.
    """
    d = [float(x) for x in d]
    e = [float(x) for x in e]
    n = len(d)
    if n:
        e[n - 1] = 0.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                return np.sort(np.array(d)), False
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d, dtype=np.float64)), True
