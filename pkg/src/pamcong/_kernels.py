"""Closure kernels with a compiled fast path.

Two implementations of the same three operations:

* the Cython extension ``pamcong._ckernels`` (preferred when importable), and
* numpy-vectorized fallbacks defined here (suffix ``_py``).

Set ``PAMCONG_PURE_PYTHON=1`` to force the fallback; ``IMPLEMENTATION`` says
which path is active.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("PAMCONG_PURE_PYTHON"):
    _impl = None
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = None

IMPLEMENTATION = "compiled" if _impl is not None else "python"


def as_table(table) -> np.ndarray:
    """Coerce to the C-contiguous int32 square array the kernels expect."""
    arr = np.ascontiguousarray(table, dtype=np.int32)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square table, got shape {arr.shape}")
    return arr


def _as_seed_pairs(pairs) -> np.ndarray:
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                     dtype=np.int32)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int32)
    arr = np.ascontiguousarray(arr.reshape(-1, 2))
    return arr


def congruence_closure_py(table: np.ndarray, seeds: np.ndarray) -> np.ndarray:
    """Least congruence containing the seed pairs; canonical label vector.

    Fixpoint sweep: translate the current classes through the whole table at
    once and merge whatever a single left/right factor maps together.
    """
    s = table.shape[0]
    parent = np.arange(s, dtype=np.int32)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        return True

    if s == 0:
        return parent
    for a, b in seeds:
        union(int(a), int(b))
    while True:
        roots = np.fromiter((find(i) for i in range(s)), dtype=np.int32, count=s)
        # rep_col[i] = first column whose class equals the class of column i
        order = np.argsort(roots, kind="stable")
        sorted_roots = roots[order]
        is_start = np.ones(s, dtype=bool)
        is_start[1:] = sorted_roots[1:] != sorted_roots[:-1]
        group_first = np.maximum.accumulate(np.where(is_start, np.arange(s), 0))
        rep_col = np.empty(s, dtype=np.int64)
        rep_col[order] = order[group_first]
        changed = False
        for mat in (table, table.T):
            lab = roots[mat]
            other = lab[:, rep_col]
            bad = np.argwhere(lab != other)
            for t, i in bad:
                changed |= union(int(lab[t, i]), int(other[t, i]))
        if not changed:
            break
    return np.fromiter((find(i) for i in range(s)), dtype=np.int32, count=s)


def subgroup_closure_py(table: np.ndarray, gens, identity: int) -> np.ndarray:
    """Sorted members of the subgroup generated by gens in a group table."""
    s = table.shape[0]
    gens_arr = np.unique(np.asarray(list(gens) + [identity], dtype=np.int32))
    member = np.zeros(s, dtype=bool)
    member[gens_arr] = True
    size = int(member.sum())
    while True:
        cur = np.flatnonzero(member)
        member[table[np.ix_(cur, gens_arr)]] = True
        new_size = int(member.sum())
        if new_size == size:
            return np.flatnonzero(member).astype(np.int32)
        size = new_size


def congruence_closure(table, pairs) -> np.ndarray:
    """Canonical label vector of the least congruence containing ``pairs``."""
    arr = as_table(table)
    seeds = _as_seed_pairs(pairs)
    if _impl is not None:
        return _impl.congruence_closure(arr, seeds)
    return congruence_closure_py(arr, seeds)


def principal_congruence(table, a: int, b: int) -> np.ndarray:
    """Canonical label vector of the congruence generated by one pair."""
    return congruence_closure(table, [(a, b)])


def subgroup_closure(table, gens, identity: int) -> np.ndarray:
    """Sorted int32 array of the subgroup generated by gens (plus identity)."""
    arr = as_table(table)
    if _impl is not None:
        return _impl.subgroup_closure(arr, gens, int(identity))
    return subgroup_closure_py(arr, gens, int(identity))
