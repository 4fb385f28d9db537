# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: union-find sweep, bipartite matching, symmetric eigensolver.

Same API as ``_pykernels``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot, copysign

cnp.import_array()

cdef double EPS = np.finfo(np.float64).eps


cdef inline Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def sweep(Py_ssize_t n, eu, ev, values, rank, bint want_snapshots):
    cdef cnp.int64_t[::1] u_ = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[::1] v_ = np.ascontiguousarray(ev, dtype=np.int64)
    cdef double[::1] val = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.int64_t[::1] rk = np.ascontiguousarray(rank, dtype=np.int64)
    cdef Py_ssize_t m = u_.shape[0]
    cdef Py_ssize_t i, j, ru, rv, a, b, keep, die, g, ngroups

    parent_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    cdef Py_ssize_t[::1] size = np.ones(n, dtype=np.intp)
    cdef Py_ssize_t[::1] rep = np.arange(n, dtype=np.intp)

    merged_arr = np.zeros(m, dtype=np.int8)
    dying_arr = np.full(m, -1, dtype=np.int64)
    survivor_arr = np.full(m, -1, dtype=np.int64)
    group_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.int8_t[::1] merged = merged_arr
    cdef cnp.int64_t[::1] dying = dying_arr
    cdef cnp.int64_t[::1] survivor = survivor_arr
    cdef cnp.int64_t[::1] group = group_arr

    ngroups = 0
    for i in range(m):
        if i == 0 or val[i] != val[i - 1]:
            ngroups += 1
    snaps_arr = np.zeros((ngroups if want_snapshots else 0, n), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] snaps = snaps_arr

    g = -1
    for i in range(m):
        if i == 0 or val[i] != val[i - 1]:
            g += 1
        group[i] = g
        ru = _find(parent, u_[i])
        rv = _find(parent, v_[i])
        if ru == rv:
            survivor[i] = rep[ru]
        else:
            a = rep[ru]
            b = rep[rv]
            if rk[a] < rk[b]:
                keep = a
                die = b
            else:
                keep = b
                die = a
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            rep[ru] = keep
            merged[i] = 1
            dying[i] = die
            survivor[i] = keep
        if want_snapshots and (i == m - 1 or val[i + 1] != val[i]):
            for j in range(n):
                snaps[g, j] = _find(parent, j)
    return merged_arr, dying_arr, survivor_arr, group_arr, snaps_arr


cdef bint _bfs(Py_ssize_t k, cnp.uint8_t[:, ::1] allowed, Py_ssize_t[::1] match_l,
               Py_ssize_t[::1] match_r, Py_ssize_t[::1] dist, Py_ssize_t[::1] queue) nogil:
    cdef Py_ssize_t head = 0, tail = 0, u, w, x, inf = k + 1
    cdef bint found = False
    for u in range(k):
        if match_l[u] == -1:
            dist[u] = 0
            queue[tail] = u
            tail += 1
        else:
            dist[u] = inf
    while head < tail:
        u = queue[head]
        head += 1
        for w in range(k):
            if not allowed[u, w]:
                continue
            x = match_r[w]
            if x == -1:
                found = True
            elif dist[x] == inf:
                dist[x] = dist[u] + 1
                queue[tail] = x
                tail += 1
    return found


cdef bint _dfs(Py_ssize_t root, Py_ssize_t k, cnp.uint8_t[:, ::1] allowed,
               Py_ssize_t[::1] match_l, Py_ssize_t[::1] match_r, Py_ssize_t[::1] dist,
               Py_ssize_t[::1] stack_v, Py_ssize_t[::1] stack_pos, Py_ssize_t[::1] path_w) nogil:
    cdef Py_ssize_t top = 0, x, pos, w, y, t, inf = k + 1
    cdef bint advanced
    stack_v[0] = root
    stack_pos[0] = 0
    while top >= 0:
        x = stack_v[top]
        pos = stack_pos[top]
        advanced = False
        while pos < k:
            w = pos
            pos += 1
            if not allowed[x, w]:
                continue
            y = match_r[w]
            if y == -1:
                path_w[top] = w
                for t in range(top + 1):
                    match_l[stack_v[t]] = path_w[t]
                    match_r[path_w[t]] = stack_v[t]
                return True
            if dist[y] == dist[x] + 1:
                stack_pos[top] = pos
                path_w[top] = w
                top += 1
                stack_v[top] = y
                stack_pos[top] = 0
                advanced = True
                break
        if not advanced:
            dist[x] = inf
            top -= 1
    return False


def max_matching(allowed_in):
    cdef cnp.uint8_t[:, ::1] allowed = np.ascontiguousarray(allowed_in, dtype=np.uint8)
    cdef Py_ssize_t k = allowed.shape[0]
    cdef Py_ssize_t u, size = 0
    match_l_arr = np.full(k, -1, dtype=np.intp)
    cdef Py_ssize_t[::1] match_l = match_l_arr
    cdef Py_ssize_t[::1] match_r = np.full(k, -1, dtype=np.intp)
    cdef Py_ssize_t[::1] dist = np.zeros(k, dtype=np.intp)
    cdef Py_ssize_t[::1] queue = np.zeros(k + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] stack_v = np.zeros(k + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] stack_pos = np.zeros(k + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] path_w = np.zeros(k + 1, dtype=np.intp)
    with nogil:
        while _bfs(k, allowed, match_l, match_r, dist, queue):
            for u in range(k):
                if match_l[u] == -1 and _dfs(u, k, allowed, match_l, match_r, dist,
                                             stack_v, stack_pos, path_w):
                    size += 1
    return size, match_l_arr.astype(np.int64)


def householder_tridiagonal(a_in):
    a_arr = np.array(a_in, dtype=np.float64, copy=True, order="C")
    cdef double[:, ::1] a = a_arr
    cdef Py_ssize_t n = a.shape[0]
    d_arr = np.zeros(n)
    e_arr = np.zeros(n)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef double[::1] v = np.zeros(n)
    cdef double[::1] p = np.zeros(n)
    cdef Py_ssize_t k, i, j, r
    cdef double norm, alpha, vn, kk
    with nogil:
        for k in range(n - 2):
            r = n - k - 1
            norm = 0.0
            for i in range(r):
                v[i] = a[k + 1 + i, k]
                norm += v[i] * v[i]
            norm = sqrt(norm)
            d[k] = a[k, k]
            if norm == 0.0:
                e[k] = 0.0
                continue
            alpha = -copysign(norm, v[0])
            v[0] -= alpha
            vn = 0.0
            for i in range(r):
                vn += v[i] * v[i]
            vn = sqrt(vn)
            for i in range(r):
                v[i] /= vn
            kk = 0.0
            for i in range(r):
                p[i] = 0.0
                for j in range(r):
                    p[i] += a[k + 1 + i, k + 1 + j] * v[j]
                kk += v[i] * p[i]
            for i in range(r):
                p[i] -= kk * v[i]
            for i in range(r):
                for j in range(r):
                    a[k + 1 + i, k + 1 + j] -= 2.0 * (v[i] * p[j] + p[i] * v[j])
            e[k] = alpha
        if n >= 2:
            d[n - 2] = a[n - 2, n - 2]
            e[n - 2] = a[n - 1, n - 2]
        if n >= 1:
            d[n - 1] = a[n - 1, n - 1]
    return d_arr, e_arr


def tridiagonal_eigenvalues(d_in, e_in, Py_ssize_t max_iter):
    d_arr = np.array(d_in, dtype=np.float64, copy=True)
    e_arr = np.array(e_in, dtype=np.float64, copy=True)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t l, m, i, it
    cdef double dd, g, r, s, c, p, f, b
    cdef bint underflow, ok = True
    if n:
        e[n - 1] = 0.0
    with nogil:
        for l in range(n):
            it = 0
            while True:
                m = l
                while m < n - 1:
                    dd = fabs(d[m]) + fabs(d[m + 1])
                    if fabs(e[m]) <= EPS * dd:
                        break
                    m += 1
                if m == l:
                    break
                if it == max_iter:
                    ok = False
                    break
                it += 1
                g = (d[l + 1] - d[l]) / (2.0 * e[l])
                r = hypot(g, 1.0)
                g = d[m] - d[l] + e[l] / (g + copysign(r, g))
                s = 1.0
                c = 1.0
                p = 0.0
                i = m - 1
                underflow = False
                while i >= l:
                    f = s * e[i]
                    b = c * e[i]
                    r = hypot(f, g)
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
            if not ok:
                break
    return np.sort(d_arr), bool(ok)
