"""Brute-force oracles: congruence enumeration on finite semigroup tables,
chain counting, and the growth-experiment harness.

Everything here is deliberately independent of the structural classification
machinery: congruences are computed from the multiplication table alone, so
the results can adjudicate the classification rather than echo it.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from collections import deque

import numpy as np

from .errors import SizeBoundError, ValidationError
from . import _kernels
from . import groups

DEFAULT_ORACLE_BOUND = 250
ORACLE_BOUND_ENV = "PAMCONG_MAX_ORACLE"

# slack allowed between a fitted log-log slope and its theoretical window;
# fits over a handful of small n carry curvature from the lower-order terms
SLOPE_TOLERANCE = 0.5


def oracle_bound() -> int:
    """Size cap for brute-force enumeration, overridable via PAMCONG_MAX_ORACLE."""
    raw = os.environ.get(ORACLE_BOUND_ENV)
    if raw is None:
        return DEFAULT_ORACLE_BOUND
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{ORACLE_BOUND_ENV}={raw!r} is not an integer") from exc
    if value < 1:
        raise ValidationError(f"{ORACLE_BOUND_ENV} must be positive, got {value}")
    return value


def canonical_labels(labels) -> np.ndarray:
    """Relabel a partition vector so each class is tagged by its least member."""
    arr = np.asarray(labels, dtype=np.int32)
    if arr.ndim != 1:
        raise ValidationError("partition labels must be a flat vector")
    _, first, inverse = np.unique(arr, return_index=True, return_inverse=True)
    return first[inverse].astype(np.int32)


def partition_dump(labels) -> str:
    """Render a partition as "[[ids],[ids],...]", classes ordered by least member."""
    arr = canonical_labels(labels)
    classes: dict[int, list[int]] = {}
    for i, lab in enumerate(arr.tolist()):
        classes.setdefault(lab, []).append(i)
    inner = ",".join("[" + ",".join(map(str, classes[k])) + "]" for k in sorted(classes))
    return "[" + inner + "]"


class ExtensionalCongruence:
    """A congruence given extensionally: one class label per element index.

    ``monoid`` is whatever enumerable structure the labels index into (a
    WreathMonoid, a FiniteSemigroupTable, ...); equality and hashing look at
    the canonical label vector only, so congruences computed by different
    routes over the same enumeration compare directly.
    """

    __slots__ = ("monoid", "labels")

    def __init__(self, monoid, labels):
        self.monoid = monoid
        self.labels = canonical_labels(labels)
        self.labels.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_classes(self) -> int:
        return int(np.unique(self.labels).shape[0])

    def related(self, i: int, j: int) -> bool:
        return bool(self.labels[i] == self.labels[j])

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, lab in enumerate(self.labels.tolist()):
            out.setdefault(lab, []).append(i)
        return [out[k] for k in sorted(out)]

    def dump(self) -> str:
        return partition_dump(self.labels)

    def is_equality(self) -> bool:
        return self.n_classes == self.size

    def is_universal(self) -> bool:
        return self.n_classes == 1

    def key(self) -> bytes:
        return self.labels.tobytes()

    def __eq__(self, other):
        if not isinstance(other, ExtensionalCongruence):
            return NotImplemented
        return self.size == other.size and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ExtensionalCongruence({self.n_classes} classes on {self.size} elements)"


class FiniteSemigroupTable:
    """A finite semigroup as a validated multiplication table."""

    def __init__(self, table, names: tuple[str, ...] | None = None,
                 origin=None, bound: int | None = None):
        tab = _kernels.as_table(table)
        limit = oracle_bound() if bound is None else bound
        if tab.shape[0] > limit:
            raise SizeBoundError(
                f"semigroup of size {tab.shape[0]} exceeds the oracle bound {limit}; "
                f"raise {ORACLE_BOUND_ENV} to override")
        if tab.size and (tab.min() < 0 or tab.max() >= tab.shape[0]):
            raise ValidationError("table entries out of range")
        self.table = tab
        self.names = names
        self.origin = origin
        self._check_associative()
        self._principal_cache: dict[tuple[int, int], bytes] = {}

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def _check_associative(self) -> None:
        t = self.table
        k = self.size
        step = max(1, (1 << 22) // max(k * k, 1))
        for lo in range(0, k, step):
            rows = t[lo:lo + step]
            left = t[rows]                 # (x y) z
            right = rows[:, t]             # x (y z)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                x, y, z = lo + int(bad[0]), int(bad[1]), int(bad[2])
                raise ValidationError(
                    f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})")

    @classmethod
    def from_elements(cls, elements, mul, names=None, origin=None,
                      bound: int | None = None) -> "FiniteSemigroupTable":
        elements = list(elements)
        k = len(elements)
        limit = oracle_bound() if bound is None else bound
        if k > limit:
            raise SizeBoundError(
                f"{k} elements exceed the oracle bound {limit}; "
                f"raise {ORACLE_BOUND_ENV} to override")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != k:
            raise ValidationError("duplicate elements")
        tab = np.empty((k, k), dtype=np.int32)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                try:
                    tab[i, j] = index[mul(x, y)]
                except KeyError:
                    raise ValidationError(f"product of #{i} and #{j} left the element set")
        return cls(tab, names=names, origin=origin, bound=bound)

    @classmethod
    def from_monoid(cls, M, bound: int | None = None) -> "FiniteSemigroupTable":
        """Table of an enumerable monoid exposing product_table()."""
        limit = oracle_bound() if bound is None else bound
        if M.size > limit:
            raise SizeBoundError(
                f"|{M!r}| = {M.size} exceeds the oracle bound {limit}; "
                f"raise {ORACLE_BOUND_ENV} to override")
        names = tuple(x.format() for x in M.enumerate())
        return cls(M.product_table(), names=names, origin=M, bound=limit)

    def _wrap(self, labels) -> ExtensionalCongruence:
        return ExtensionalCongruence(self.origin if self.origin is not None else self,
                                     labels)

    # -- congruence machinery ----------------------------------------------------

    def is_congruence(self, labels) -> bool:
        """Check that a partition is compatible with the multiplication."""
        lab = np.asarray(labels, dtype=np.int32)
        if lab.shape != (self.size,):
            return False
        lab = canonical_labels(lab)
        reps = lab  # canonical labels ARE representative indices
        t = self.table
        # x ~ rep(x) must imply xz ~ rep(x)z and zx ~ z rep(x) for all z
        return (np.array_equal(lab[t], lab[t[reps]]) and
                np.array_equal(lab[t.T], lab[t.T[reps]]))

    def identity_congruence(self) -> ExtensionalCongruence:
        return self._wrap(np.arange(self.size, dtype=np.int32))

    def universal_congruence(self) -> ExtensionalCongruence:
        return self._wrap(np.zeros(self.size, dtype=np.int32))

    def principal_labels(self, x: int, y: int) -> np.ndarray:
        key = (min(x, y), max(x, y))
        hit = self._principal_cache.get(key)
        if hit is not None:
            return np.frombuffer(hit, dtype=np.int32).copy()
        labels = _kernels.congruence_closure(self.table, [key])
        labels = canonical_labels(labels)
        self._principal_cache[key] = labels.tobytes()
        return labels

    def principal_congruence(self, pair) -> ExtensionalCongruence:
        x, y = pair
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise ValidationError(f"pair {pair} out of range")
        return self._wrap(self.principal_labels(int(x), int(y)))

    def congruence_from_pairs(self, pairs) -> ExtensionalCongruence:
        seeds = [(int(x), int(y)) for x, y in pairs]
        for x, y in seeds:
            if not (0 <= x < self.size and 0 <= y < self.size):
                raise ValidationError(f"pair ({x},{y}) out of range")
        if not seeds:
            return self.identity_congruence()
        return self._wrap(_kernels.congruence_closure(self.table, seeds))

    def all_congruences(self) -> list[ExtensionalCongruence]:
        """Every congruence: principal ones, then pairwise joins to fixpoint."""
        k = self.size
        seen: dict[bytes, np.ndarray] = {}
        worklist: deque[np.ndarray] = deque()

        def add(labels: np.ndarray) -> None:
            key = labels.tobytes()
            if key not in seen:
                seen[key] = labels
                worklist.append(labels)

        add(np.arange(k, dtype=np.int32))
        for x in range(k):
            for y in range(x + 1, k):
                add(self.principal_labels(x, y))

        basis = list(seen.values())
        while worklist:
            current = worklist.popleft()
            for other in basis:
                add(join_labels(current, other))

        out = [self._wrap(lab) for lab in seen.values()]
        out.sort(key=lambda c: (c.size - c.n_classes, c.key()))
        return out


def join_labels(a, b) -> np.ndarray:
    """Join of two partitions (transitive closure of the union).

    For congruences this is the congruence join: compatibility survives
    relational composition, so no further table closure is needed.
    """
    a = canonical_labels(a)
    b = canonical_labels(b)
    if a.shape != b.shape:
        raise ValidationError("partition size mismatch")
    parent = np.arange(a.shape[0], dtype=np.int64)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for vec in (a, b):
        for i, rep in enumerate(vec.tolist()):
            ri, rr = find(i), find(rep)
            if ri != rr:
                if rr < ri:
                    ri, rr = rr, ri
                parent[rr] = ri
    roots = np.array([find(i) for i in range(a.shape[0])], dtype=np.int32)
    return canonical_labels(roots)


def meet_labels(a, b) -> np.ndarray:
    """Meet of two partitions: common refinement."""
    a = canonical_labels(a)
    b = canonical_labels(b)
    if a.shape != b.shape:
        raise ValidationError("partition size mismatch")
    combined = a.astype(np.int64) * (int(b.max()) + 1) + b
    return canonical_labels(combined)


def principal_congruence(S: FiniteSemigroupTable, pair) -> ExtensionalCongruence:
    return S.principal_congruence(pair)


def all_congruences(S: FiniteSemigroupTable) -> list[ExtensionalCongruence]:
    return S.all_congruences()


def congruence_from_pairs(S: FiniteSemigroupTable, pairs) -> ExtensionalCongruence:
    return S.congruence_from_pairs(pairs)


# -- chain counting -------------------------------------------------------------


def chain_count(c: int, k: int) -> int:
    """Number of weakly increasing length-k sequences over a chain of c values."""
    if c < 0 or k < 0:
        raise ValidationError("chain_count needs nonnegative arguments")
    if c == 0:
        return 1 if k == 0 else 0
    return math.comb(k + c - 1, c - 1)


@lru_cache(maxsize=None)
def chain_count_enumerated(c: int, k: int) -> int:
    """The same count by direct recursion, for cross-checking the formula."""
    if c <= 0:
        return 1 if (c == 0 and k == 0) else 0
    if k == 0:
        return 1

    def count_from(lowest: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        return sum(count_from(v, remaining - 1) for v in range(lowest, c))

    return count_from(0, k)


# -- growth experiments -----------------------------------------------------------


@dataclass(frozen=True)
class GrowthReport:
    """Classification-side congruence counts of G wr I_n over a degree range.

    ``cong_window``/``is_window`` hold the slope windows the polynomial
    bounds A n^c <= |cong| <= B n^(2c-1) and A n^(c-1) <= |cong_IS| <= B n^(2(c-1))
    predict; a window is None when the exponent range degenerates (c = 0).
    ``cong_slope_ok``/``is_slope_ok`` compare the fitted slope against the
    window with SLOPE_TOLERANCE slack and are None when no window applies.
    """

    group_name: str
    chief_length: int
    ns: tuple[int, ...]
    cong_counts: tuple[int, ...]
    is_counts: tuple[int, ...]
    cong_slope: float
    is_slope: float
    cong_window: tuple[float, float] | None
    is_window: tuple[float, float] | None
    cong_slope_ok: bool | None
    is_slope_ok: bool | None

    def __post_init__(self):
        for seq, what in ((self.cong_counts, "congruence"),
                          (self.is_counts, "idempotent-separating")):
            if any(v < 0 for v in seq):
                raise ValidationError(f"negative {what} count")
            if any(b < a for a, b in zip(seq, seq[1:])):
                raise ValidationError(
                    f"{what} counts must be nondecreasing in n (degree embedding)")

    def to_json(self) -> str:
        doc = {
            "group": self.group_name,
            "chief_length": self.chief_length,
            "n": list(self.ns),
            "congruences": list(self.cong_counts),
            "idempotent_separating": list(self.is_counts),
            "fitted_slope": {"congruences": self.cong_slope,
                             "idempotent_separating": self.is_slope},
            "window": {"congruences": list(self.cong_window) if self.cong_window else None,
                       "idempotent_separating": list(self.is_window) if self.is_window else None},
            "within_window": {"congruences": self.cong_slope_ok,
                              "idempotent_separating": self.is_slope_ok},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["n,congruences,idempotent_separating"]
        for n, a, b in zip(self.ns, self.cong_counts, self.is_counts):
            lines.append(f"{n},{a},{b}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"group {self.group_name}: chief length {self.chief_length}",
                 f"{'n':>4} {'|congruences|':>14} {'|idemp.-sep.|':>14}"]
        for n, a, b in zip(self.ns, self.cong_counts, self.is_counts):
            lines.append(f"{n:>4} {a:>14} {b:>14}")

        def describe(label, slope, window, ok):
            if window is None:
                return f"{label}: fitted slope {slope:.3f} (no polynomial window at c=0)"
            lo, hi = window
            verdict = "within" if ok else "OUTSIDE"
            return (f"{label}: fitted slope {slope:.3f} {verdict} window "
                    f"[{lo:g}, {hi:g}] (+/- {SLOPE_TOLERANCE})")

        lines.append(describe("congruences", self.cong_slope,
                              self.cong_window, self.cong_slope_ok))
        lines.append(describe("idempotent-separating", self.is_slope,
                              self.is_window, self.is_slope_ok))
        return "\n".join(lines) + "\n"


def _fitted_slope(ns, counts) -> float:
    """Least-squares log-log slope over the top half of the range."""
    pts = [(n, v) for n, v in zip(ns, counts) if v > 0]
    if len(pts) < 2:
        return 0.0
    half = pts[len(pts) // 2:] if len(pts) > 3 else pts
    xs = np.log([p[0] for p in half])
    ys = np.log([p[1] for p in half])
    if np.allclose(xs, xs[0]):
        return 0.0
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def _window_check(slope: float, window) -> bool | None:
    if window is None:
        return None
    lo, hi = window
    return (lo - SLOPE_TOLERANCE) <= slope <= (hi + SLOPE_TOLERANCE)


def growth_experiment(G, n_max: int) -> GrowthReport:
    """Count congruences of G wr I_n for n = 1..n_max on the classification side."""
    from . import congruence  # deferred: congruence builds on this module

    if n_max < 1:
        raise ValidationError(f"need n_max >= 1, got {n_max}")
    group = groups.make_group(G) if isinstance(G, str) else G
    c = groups.chief_length(group)
    ns = tuple(range(1, n_max + 1))
    cong_counts = tuple(congruence.count_congruences(group, n) for n in ns)
    is_counts = tuple(congruence.count_idempotent_separating(group, n) for n in ns)

    cong_slope = _fitted_slope(ns, cong_counts)
    is_slope = _fitted_slope(ns, is_counts)
    cong_window = (float(c), float(2 * c - 1)) if c >= 1 else None
    is_window = (float(c - 1), float(2 * (c - 1))) if c >= 1 else None

    return GrowthReport(
        group_name=group.name,
        chief_length=c,
        ns=ns,
        cong_counts=cong_counts,
        is_counts=is_counts,
        cong_slope=cong_slope,
        is_slope=is_slope,
        cong_window=cong_window,
        is_window=is_window,
        cong_slope_ok=_window_check(cong_slope, cong_window),
        is_slope_ok=_window_check(is_slope, is_window),
    )
