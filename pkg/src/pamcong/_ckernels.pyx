# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled closure kernels.

pamcong._kernels prefers these bindings and falls back to its numpy
implementations when the extension is absent.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline int uf_find(cnp.int32_t* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline void uf_merge(cnp.int32_t* parent, cnp.int32_t* sx, cnp.int32_t* sy,
                          int* top, int x, int y) noexcept nogil:
    # union by least root, so the final find() is the canonical class label
    cdef int rx = uf_find(parent, x)
    cdef int ry = uf_find(parent, y)
    if rx == ry:
        return
    if rx < ry:
        parent[ry] = rx
    else:
        parent[rx] = ry
    sx[top[0]] = x
    sy[top[0]] = y
    top[0] += 1


def congruence_closure(cnp.int32_t[:, ::1] table, cnp.int32_t[:, ::1] seeds):
    """Least congruence of the semigroup `table` containing all seed pairs.

    Returns the canonical label vector: out[i] = least element of the class
    of i.
    """
    cdef int s = table.shape[0]
    cdef int nseeds = seeds.shape[0]
    out_arr = np.arange(s, dtype=np.int32)
    if s == 0:
        return out_arr
    cdef cnp.int32_t[::1] parent = out_arr
    # each successful union pushes exactly one pair and there are < s unions
    stack_x = np.empty(s + 1, dtype=np.int32)
    stack_y = np.empty(s + 1, dtype=np.int32)
    cdef cnp.int32_t[::1] sx = stack_x
    cdef cnp.int32_t[::1] sy = stack_y
    cdef int top = 0
    cdef int i, x, y, t
    with nogil:
        for i in range(nseeds):
            uf_merge(&parent[0], &sx[0], &sy[0], &top, seeds[i, 0], seeds[i, 1])
        while top > 0:
            top -= 1
            x = sx[top]
            y = sy[top]
            for t in range(s):
                uf_merge(&parent[0], &sx[0], &sy[0], &top, table[t, x], table[t, y])
                uf_merge(&parent[0], &sx[0], &sy[0], &top, table[x, t], table[y, t])
        for i in range(s):
            parent[i] = uf_find(&parent[0], i)
    return out_arr


def subgroup_closure(cnp.int32_t[:, ::1] table, gens, int identity):
    """Sorted members of the subgroup of a group table generated by gens.

    BFS over right products with the generators, starting from the identity;
    in a finite group table this yields exactly the generated subgroup.
    """
    cdef int s = table.shape[0]
    gens_arr = np.unique(np.asarray(list(gens) + [identity], dtype=np.int32))
    cdef cnp.int32_t[::1] g = gens_arr
    cdef int ng = g.shape[0]
    member_arr = np.zeros(s, dtype=np.uint8)
    cdef cnp.uint8_t[::1] member = member_arr
    elems_arr = np.empty(s, dtype=np.int32)
    cdef cnp.int32_t[::1] elems = elems_arr
    cdef int count = 0
    cdef int head = 0
    cdef int j, x, y
    for j in range(ng):
        if not member[g[j]]:
            member[g[j]] = 1
            elems[count] = g[j]
            count += 1
    with nogil:
        while head < count:
            x = elems[head]
            head += 1
            for j in range(ng):
                y = table[x, g[j]]
                if not member[y]:
                    member[y] = 1
                    elems[count] = y
                    count += 1
    return np.sort(elems_arr[:count])
