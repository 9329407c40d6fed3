# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``.

Only fixed-width int64 arithmetic lives here; callers route big-integer
work to the Python implementation.
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t i64

cnp.import_array()


def nb_step(mass, const i64[::1] origin, const i64[::1] terminus,
            const i64[::1] index, Py_ssize_t nverts):
    if mass.dtype != np.int64:
        raise TypeError("compiled nb_step handles int64 only")
    if mass.ndim == 1:
        return _step1(np.ascontiguousarray(mass), origin, terminus, index, nverts)
    return _step2(np.ascontiguousarray(mass), origin, terminus, index, nverts)


cdef _step1(const i64[::1] mass, const i64[::1] origin, const i64[::1] terminus,
            const i64[::1] index, Py_ssize_t nverts):
    cdef Py_ssize_t ne = mass.shape[0], e
    sphere_arr = np.zeros(nverts, dtype=np.int64)
    new_arr = np.empty(ne, dtype=np.int64)
    cdef i64[::1] sphere = sphere_arr
    cdef i64[::1] new = new_arr
    with nogil:
        for e in range(ne):
            sphere[terminus[e]] += mass[e]
        for e in range(ne):
            new[e] = index[e] * sphere[origin[e]] - mass[e ^ 1]
    return new_arr, sphere_arr


cdef _step2(const i64[:, ::1] mass, const i64[::1] origin, const i64[::1] terminus,
            const i64[::1] index, Py_ssize_t nverts):
    cdef Py_ssize_t rows = mass.shape[0], ne = mass.shape[1], r, e
    sphere_arr = np.zeros((rows, nverts), dtype=np.int64)
    new_arr = np.empty((rows, ne), dtype=np.int64)
    cdef i64[:, ::1] sphere = sphere_arr
    cdef i64[:, ::1] new = new_arr
    with nogil:
        for r in range(rows):
            for e in range(ne):
                sphere[r, terminus[e]] += mass[r, e]
            for e in range(ne):
                new[r, e] = index[e] * sphere[r, origin[e]] - mass[r, e ^ 1]
    return new_arr, sphere_arr


cdef inline bint _is_lyndon(const i64* w, Py_ssize_t n) noexcept nogil:
    # strictly smaller than every proper rotation
    cdef Py_ssize_t k, j
    cdef i64 a, b
    for k in range(1, n):
        for j in range(n):
            a = w[(k + j) % n]
            b = w[j]
            if a < b:
                return False
            if a > b:
                break
        else:
            return False
    return True


cdef i64 _dfs(const i64[::1] origin, const i64[::1] terminus,
              const i64[::1] out_ptr, const i64[::1] out_idx,
              Py_ssize_t max_len, i64 guard, bint primes, i64* counts) noexcept nogil:
    """Shared search; returns the step count or -1 when the guard trips."""
    cdef Py_ssize_t ne = origin.shape[0], nv = out_ptr.shape[0] - 1
    cdef Py_ssize_t maxdeg = 0, v, s, top, d, k
    cdef i64 steps = 0, e, f, r, t, start, back
    for v in range(nv):
        if out_ptr[v + 1] - out_ptr[v] > maxdeg:
            maxdeg = out_ptr[v + 1] - out_ptr[v]
    cdef Py_ssize_t cap = max_len * (maxdeg + 1) + 2
    cdef i64* st_e = <i64*> malloc(cap * sizeof(i64))
    cdef i64* st_d = <i64*> malloc(cap * sizeof(i64))
    cdef i64* path = <i64*> malloc((max_len + 1) * sizeof(i64))
    if st_e == NULL or st_d == NULL or path == NULL:
        free(st_e); free(st_d); free(path)
        return -2
    for s in range(ne):
        start = origin[s]
        back = s ^ 1
        top = 0
        st_e[0] = s
        st_d[0] = 1
        top = 1
        while top > 0:
            top -= 1
            e = st_e[top]
            d = st_d[top]
            steps += 1
            if steps > guard:
                free(st_e); free(st_d); free(path)
                return -1
            path[d - 1] = e
            t = terminus[e]
            if t == start and e != back:
                if not primes:
                    counts[d] += 1
                elif _is_lyndon(path, d):
                    counts[d] += 1
            if d < max_len:
                r = e ^ 1
                for k in range(out_ptr[t], out_ptr[t + 1]):
                    f = out_idx[k]
                    if f != r and (not primes or f >= s):
                        st_e[top] = f
                        st_d[top] = d + 1
                        top += 1
    free(st_e); free(st_d); free(path)
    return steps


def _counts(origin, terminus, out_ptr, out_idx, Py_ssize_t max_len, i64 guard, bint primes):
    counts_arr = np.zeros(max_len + 1, dtype=np.int64)
    cdef i64[::1] counts = counts_arr
    cdef i64 steps
    cdef const i64[::1] o = origin
    cdef const i64[::1] t = terminus
    cdef const i64[::1] p = out_ptr
    cdef const i64[::1] x = out_idx
    with nogil:
        steps = _dfs(o, t, p, x, max_len, guard, primes, &counts[0])
    if steps == -2:
        raise MemoryError()
    if steps < 0:
        return None, guard + 1
    return counts_arr.tolist(), steps


def closed_walk_counts(origin, terminus, out_ptr, out_idx, max_len, guard):
    return _counts(origin, terminus, out_ptr, out_idx, max_len, guard, False)


def prime_cycle_counts(origin, terminus, out_ptr, out_idx, max_len, guard):
    return _counts(origin, terminus, out_ptr, out_idx, max_len, guard, True)
