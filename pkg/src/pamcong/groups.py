"""Finite groups on dense integer indices: families, subgroups, homs, quotients.

Conventions used throughout the package:

* elements of a group of order s are the integers 0..s-1 and the identity is
  index 0 for every constructor in this module;
* composition is left-to-right everywhere, so for permutation-like groups
  ``mul(p, q)`` means "apply p, then q";
* Cayley tables are C-contiguous int32 arrays with ``table[a, b] = a * b``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import SizeBoundError, ValidationError

GROUP_ORDER_BOUND = 10**6        # refuse to construct anything larger
DENSE_TABLE_BOUND = 4096         # largest order for materialized Cayley tables
ASSOC_EXHAUSTIVE_BOUND = 300     # exhaustive associativity check up to here
RANDOM_CHECK_TRIPLES = 100_000   # randomized associativity sample above it
SUBGROUP_ENUM_BOUND = 10**4      # cap on exhaustive subgroup enumeration

_VALIDATION_SEED = 20260819


def _mask_from(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << int(x)
    return m


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


class FiniteGroup:
    """A finite group backed by a Cayley table or by multiplication callables."""

    def __init__(self, name: str, order: int, *, table=None, mul=None, inv=None,
                 mul_array=None, inv_array=None, identity: int = 0,
                 validate: bool = True):
        if order < 1:
            raise ValidationError(f"group order must be positive, got {order}")
        if order > GROUP_ORDER_BOUND:
            raise SizeBoundError(
                f"{name}: order {order} exceeds the construction bound {GROUP_ORDER_BOUND}")
        if table is None and mul is None and mul_array is None:
            raise ValidationError(f"{name}: need a Cayley table or a mul callable")
        self.name = name
        self.order = order
        self.identity = identity
        self._table = None if table is None else _kernels.as_table(table)
        if self._table is not None and self._table.shape[0] != order:
            raise ValidationError(f"{name}: table size {self._table.shape[0]} != order {order}")
        self._mul = mul
        self._mul_arr = mul_array
        self._inv_fn = inv
        self._inv_arr_fn = inv_array
        self._inverses: np.ndarray | None = None
        self._normal_subgroups: list[Subgroup] | None = None
        self._all_subgroups: list[Subgroup] | None = None
        self._conj_classes: tuple[tuple[int, ...], ...] | None = None
        self._orders: np.ndarray | None = None
        if validate:
            self._validate()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- multiplication ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        if self._mul is not None:
            return self._mul(a, b)
        return int(self._mul_arr(np.asarray([a]), np.asarray([b]))[0])

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of two broadcastable index arrays."""
        if self._table is not None:
            return self._table[a, b]
        if self._mul_arr is not None:
            return self._mul_arr(a, b)
        aa, bb = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.empty(aa.shape, dtype=np.int64)
        of, af, bf = out.reshape(-1), aa.reshape(-1), bb.reshape(-1)
        for i in range(af.size):
            of[i] = self._mul(int(af[i]), int(bf[i]))
        return out

    def inv(self, a: int) -> int:
        if self._inverses is not None:
            return int(self._inverses[a])
        if self._inv_fn is not None:
            return self._inv_fn(a)
        return int(self.inverses[a])

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        acc, base = self.identity, a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    # -- dense structure ---------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > DENSE_TABLE_BOUND:
                raise SizeBoundError(
                    f"{self.name}: order {self.order} exceeds the table bound {DENSE_TABLE_BOUND}")
            idx = np.arange(self.order)
            rows = [self.mul_array(np.full(self.order, a), idx) for a in range(self.order)]
            self._table = _kernels.as_table(np.stack(rows))
        return self._table

    @property
    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            if self._inv_arr_fn is not None:
                self._inverses = np.asarray(self._inv_arr_fn(np.arange(self.order)),
                                            dtype=np.int64)
            elif self._inv_fn is not None and self._table is None:
                self._inverses = np.fromiter((self._inv_fn(i) for i in range(self.order)),
                                             np.int64, self.order)
            else:
                t = self.table
                invs = np.empty(self.order, dtype=np.int64)
                rows, cols = np.nonzero(t == self.identity)
                invs[rows] = cols
                self._inverses = invs
        return self._inverses

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.fromiter((self.order_of(i) for i in range(self.order)),
                                       np.int64, self.order)
        return self._orders

    def exponent(self) -> int:
        return int(math.lcm(*map(int, self.element_orders())))

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes as sorted tuples, ordered by least member (identity first)."""
        if self._conj_classes is None:
            t, invs = self.table, self.inverses
            seen = np.zeros(self.order, dtype=bool)
            classes = []
            for x in range(self.order):
                if seen[x]:
                    continue
                orbit = np.unique(t[t[:, x], invs])
                seen[orbit] = True
                classes.append(tuple(int(v) for v in orbit))
            self._conj_classes = tuple(classes)
        return self._conj_classes

    def center_mask(self) -> int:
        t = self.table
        return _mask_from(x for x in range(self.order)
                          if np.array_equal(t[x], t[:, x]))

    # -- subgroup factories --------------------------------------------------

    def subgroup(self, members: Iterable[int], validate: bool = True) -> Subgroup:
        sub = Subgroup(self, _mask_from(members))
        if validate:
            sub.check()
        return sub

    def subgroup_generated(self, gens: Iterable[int]) -> Subgroup:
        mem = _kernels.subgroup_closure(self.table, list(gens), self.identity)
        return Subgroup(self, _mask_from(mem))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, 1 << self.identity)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)

    # -- validation ----------------------------------------------------------

    def _validate(self) -> None:
        e = self.identity
        if not 0 <= e < self.order:
            raise ValidationError(f"{self.name}: identity index {e} out of range")
        if self._table is not None:
            self._validate_table()
        else:
            self._validate_callable()

    def _validate_table(self) -> None:
        t, s, e = self._table, self.order, self.identity
        if t.min() < 0 or t.max() >= s:
            raise ValidationError(f"{self.name}: table entries out of range")
        ar = np.arange(s)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise ValidationError(f"{self.name}: index {e} is not a two-sided identity")
        if not (np.all(np.sort(t, axis=1) == ar) and np.all(np.sort(t.T, axis=1) == ar)):
            raise ValidationError(f"{self.name}: table rows/columns are not permutations")
        if s <= ASSOC_EXHAUSTIVE_BOUND:
            chunk = max(1, (1 << 22) // (s * s))
            for a0 in range(0, s, chunk):
                rows = t[a0:a0 + chunk]
                left = t[rows]                  # (a*b)*c over the chunk
                right = rows[:, t]              # a*(b*c): rows[i, t[b, c]]
                if not np.array_equal(left, right):
                    raise ValidationError(f"{self.name}: multiplication is not associative")
        else:
            rng = np.random.default_rng(_VALIDATION_SEED)
            a, b, c = rng.integers(0, s, (3, RANDOM_CHECK_TRIPLES))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise ValidationError(f"{self.name}: multiplication is not associative")

    def _validate_callable(self) -> None:
        s, e = self.order, self.identity
        rng = np.random.default_rng(_VALIDATION_SEED)
        sample = np.arange(s) if s <= 2048 else rng.integers(0, s, 2048)
        if not (np.array_equal(self.mul_array(np.full(sample.shape, e), sample), sample)
                and np.array_equal(self.mul_array(sample, np.full(sample.shape, e)), sample)):
            raise ValidationError(f"{self.name}: index {e} is not a two-sided identity")
        invs = np.asarray([self.inv(int(x)) for x in sample[:256]])
        prod = self.mul_array(sample[:256], invs)
        if not np.all(prod == e):
            raise ValidationError(f"{self.name}: inverses are broken")
        n_triples = RANDOM_CHECK_TRIPLES if self._mul_arr is not None else 2000
        a, b, c = rng.integers(0, s, (3, n_triples))
        left = self.mul_array(self.mul_array(a, b), c)
        right = self.mul_array(a, self.mul_array(b, c))
        if not np.array_equal(left, right):
            raise ValidationError(f"{self.name}: multiplication is not associative")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a dense group, stored as a bitmask over element indices."""

    group: FiniteGroup
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def members(self) -> tuple[int, ...]:
        return _mask_members(self.mask)

    def contains(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def check(self) -> "Subgroup":
        """Validate the subgroup axioms; returns self."""
        G = self.group
        if self.mask <= 0 or self.mask >> G.order:
            raise ValidationError("subgroup mask out of range")
        if not self.contains(G.identity):
            raise ValidationError("subgroup must contain the identity")
        mem = np.asarray(self.members)
        prods = G.table[np.ix_(mem, mem)]
        inside = np.fromiter(((self.mask >> int(p)) & 1 for p in prods.reshape(-1)),
                             bool, prods.size)
        if not inside.all():
            raise ValidationError("set is not closed under multiplication")
        return self

    @cached_property
    def is_normal(self) -> bool:
        G = self.group
        t, invs = G.table, G.inverses
        mem = np.asarray(self.members)
        conj = t[t[:, mem], invs[:, None]]
        return all((self.mask >> int(v)) & 1 for v in np.unique(conj))

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.group
        return Subgroup(G, _mask_from(G.conj(g, x) for x in self.members))

    def join(self, other: "Subgroup") -> "Subgroup":
        mem = _kernels.subgroup_closure(self.group.table,
                                        self.members + other.members,
                                        self.group.identity)
        return Subgroup(self.group, _mask_from(mem))

    def meet(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, self.mask & other.mask)

    @cached_property
    def realized(self) -> "RealizedSubgroup":
        """The subgroup as a dense group of its own (identity reindexed to 0)."""
        G = self.group
        embed = (G.identity,) + tuple(x for x in self.members if x != G.identity)
        index = {p: i for i, p in enumerate(embed)}
        k = len(embed)
        table = np.empty((k, k), dtype=np.int32)
        for i, p in enumerate(embed):
            for j, q in enumerate(embed):
                table[i, j] = index[G.mul(p, q)]
        sub_name = f"{G.name}|{self.order}"
        return RealizedSubgroup(
            FiniteGroup(sub_name, k, table=table, validate=False), embed, index)

    def __repr__(self) -> str:
        return f"Subgroup({self.group.name}, order={self.order})"


@dataclass(frozen=True)
class RealizedSubgroup:
    """A subgroup re-materialized as a standalone group plus both index maps."""

    group: FiniteGroup
    embed: tuple[int, ...]          # dense index -> parent index
    index: dict[int, int]           # parent index -> dense index


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism from a subgroup into a group, as an image tuple."""

    domain: Subgroup
    codomain: FiniteGroup
    images: tuple[int, ...]         # aligned with domain.members

    @cached_property
    def _map(self) -> dict[int, int]:
        return dict(zip(self.domain.members, self.images))

    def apply(self, x: int) -> int:
        return self._map[x]

    def check(self) -> "GroupHom":
        G, H = self.domain.group, self.codomain
        if len(self.images) != len(self.domain.members):
            raise ValidationError("image tuple does not match the domain")
        f = self._map
        for x in self.domain.members:
            for y in self.domain.members:
                if f[G.mul(x, y)] != H.mul(f[x], f[y]):
                    raise ValidationError("map is not a homomorphism")
        return self

    @cached_property
    def kernel(self) -> Subgroup:
        e = self.codomain.identity
        return Subgroup(self.domain.group,
                        _mask_from(x for x, v in self._map.items() if v == e))

    @cached_property
    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.codomain, _mask_from(self.images))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def is_involution(self) -> bool:
        """theta o theta = identity (domain and codomain must coincide)."""
        f = self._map
        return all(f.get(v) == x for x, v in f.items())


@dataclass(frozen=True)
class QuotientGroup:
    """A quotient G/N with its coset partition and projection maps."""

    base: FiniteGroup
    kernel: Subgroup
    cosets: tuple[tuple[int, ...], ...]   # identity coset first, then by least member
    coset_of: tuple[int, ...]
    group: FiniteGroup

    def project(self, x: int) -> int:
        return self.coset_of[x]

    def lift(self, ci: int) -> int:
        return self.cosets[ci][0]


# Same (G, N) must yield the *same* QuotientGroup object: homomorphisms are
# compared against quotient groups by identity.  Entries keep G alive, so the
# id() key cannot be reused while the cache holds it.
_QUOTIENT_CACHE: dict[tuple[int, int], QuotientGroup] = {}


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    """Quotient by a normal subgroup; raises ValidationError otherwise."""
    if N.group is not G:
        raise ValidationError("subgroup belongs to a different group")
    hit = _QUOTIENT_CACHE.get((id(G), N.mask))
    if hit is not None:
        return hit
    if not N.is_normal:
        raise ValidationError(f"{N!r} is not normal in {G.name}")
    coset_of = [-1] * G.order
    cosets: list[tuple[int, ...]] = []
    order = [G.identity] + [x for x in range(G.order) if x != G.identity]
    for x in order:
        if coset_of[x] >= 0:
            continue
        mem = tuple(sorted(G.mul(x, h) for h in N.members))
        ci = len(cosets)
        cosets.append(mem)
        for y in mem:
            coset_of[y] = ci
    k = len(cosets)
    table = np.empty((k, k), dtype=np.int32)
    for i in range(k):
        for j in range(k):
            table[i, j] = coset_of[G.mul(cosets[i][0], cosets[j][0])]
    qg = FiniteGroup(f"{G.name}/{N.order}", k, table=table, validate=False)
    out = QuotientGroup(G, N, tuple(cosets), tuple(coset_of), qg)
    _QUOTIENT_CACHE[(id(G), N.mask)] = out
    return out


# -- enumeration ------------------------------------------------------------

def all_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by (order, mask).

    BFS joining conjugacy classes: the closure of a union of classes is
    normal, and every normal subgroup is such a closure.
    """
    if G._normal_subgroups is None:
        t = G.table
        classes = G.conjugacy_classes()
        class_masks = [_mask_from(c) for c in classes]
        trivial = 1 << G.identity
        found = {trivial}
        queue = [trivial]
        tried: set[tuple[int, int]] = set()
        while queue:
            m = queue.pop()
            for ci, cmask in enumerate(class_masks):
                if cmask & ~m == 0 or (m, ci) in tried:
                    continue
                tried.add((m, ci))
                gens = _mask_members(m | cmask)
                mem = _kernels.subgroup_closure(t, gens, G.identity)
                m2 = _mask_from(mem)
                if m2 not in found:
                    found.add(m2)
                    queue.append(m2)
        G._normal_subgroups = [Subgroup(G, m)
                               for m in sorted(found, key=lambda m: (m.bit_count(), m))]
    return G._normal_subgroups


def all_subgroups(G: FiniteGroup, bound: int = SUBGROUP_ENUM_BOUND) -> list[Subgroup]:
    """Exhaustive subgroup enumeration (for oracles); sorted by (order, mask)."""
    if G._all_subgroups is None:
        t = G.table
        trivial = 1 << G.identity
        found = {trivial}
        queue = [trivial]
        tried: set[tuple[int, int]] = set()
        while queue:
            m = queue.pop()
            mem = _mask_members(m)
            for x in range(G.order):
                if (m >> x) & 1 or (m, x) in tried:
                    continue
                tried.add((m, x))
                closed = _kernels.subgroup_closure(t, list(mem) + [x], G.identity)
                m2 = _mask_from(closed)
                if m2 not in found:
                    found.add(m2)
                    queue.append(m2)
                    if len(found) > bound:
                        raise SizeBoundError(
                            f"{G.name}: more than {bound} subgroups")
        G._all_subgroups = [Subgroup(G, m)
                            for m in sorted(found, key=lambda m: (m.bit_count(), m))]
    return G._all_subgroups


def commutator_with(G: FiniteGroup, L: Subgroup) -> Subgroup:
    """[G, L]: the subgroup generated by all commutators g^-1 l^-1 g l."""
    gens = set()
    for g in range(G.order):
        ig = G.inv(g)
        for l in L.members:
            gens.add(G.mul(G.mul(G.inv(l), ig), G.mul(l, g)))
    return G.subgroup_generated(gens)


def chief_length(G: FiniteGroup) -> int:
    """Number of strict inclusions in a longest chain of normal subgroups."""
    normals = all_normal_subgroups(G)
    best = [0] * len(normals)
    for i, ni in enumerate(normals):
        for j in range(i):
            if normals[j].mask != ni.mask and normals[j].issubset(ni):
                best[i] = max(best[i], best[j] + 1)
    full = (1 << G.order) - 1
    return best[[n.mask for n in normals].index(full)]


# -- homomorphisms ----------------------------------------------------------

def _minimal_generators(G: FiniteGroup) -> list[int]:
    """Greedy smallest-first generating sequence of a dense group."""
    gens: list[int] = []
    mask = 1 << G.identity
    full = (1 << G.order) - 1
    for x in range(G.order):
        if (mask >> x) & 1:
            continue
        gens.append(x)
        mem = _kernels.subgroup_closure(G.table, gens, G.identity)
        mask = _mask_from(mem)
        if mask == full:
            break
    return gens


def _spread(Lg: FiniteGroup, H: FiniteGroup, assigned: list[tuple[int, int]]):
    """Closure of a partial map on generators; None on inconsistency."""
    mapping = {Lg.identity: H.identity}
    frontier = [Lg.identity]
    while frontier:
        fresh = []
        for x in frontier:
            fx = mapping[x]
            for g, q in assigned:
                y = Lg.mul(x, g)
                fy = H.mul(fx, q)
                if y in mapping:
                    if mapping[y] != fy:
                        return None
                else:
                    mapping[y] = fy
                    fresh.append(y)
        frontier = fresh
    return mapping


def all_homs(dom: FiniteGroup | Subgroup, cod: FiniteGroup) -> list[GroupHom]:
    """Every homomorphism dom -> cod, in a deterministic order."""
    sub = dom.full_subgroup() if isinstance(dom, FiniteGroup) else dom
    real = sub.realized
    Lg = real.group
    gens = _minimal_generators(Lg)
    gen_orders = [Lg.order_of(g) for g in gens]
    cod_orders = cod.element_orders()
    candidates = [[q for q in range(cod.order) if gen_orders[i] % int(cod_orders[q]) == 0]
                  for i in range(len(gens))]
    out: list[GroupHom] = []

    def descend(level: int, assigned: list[tuple[int, int]]):
        if level == len(gens):
            mapping = _spread(Lg, cod, assigned)
            if mapping is None or len(mapping) != Lg.order:
                return
            for x in range(Lg.order):
                fx = mapping[x]
                for y in range(Lg.order):
                    if mapping[Lg.mul(x, y)] != cod.mul(fx, mapping[y]):
                        return
            images = tuple(mapping[real.index[p]] for p in sub.members)
            out.append(GroupHom(sub, cod, images))
            return
        for q in candidates[level]:
            trial = assigned + [(gens[level], q)]
            if _spread(Lg, cod, trial) is None:
                continue
            descend(level + 1, trial)

    descend(0, [])
    return out


def automorphisms(G: FiniteGroup) -> list[GroupHom]:
    return [h for h in all_homs(G, G) if h.is_bijective]


def involutory_automorphisms(G: FiniteGroup) -> list[GroupHom]:
    """Automorphisms theta with theta o theta = id (the identity map included)."""
    return [h for h in automorphisms(G) if h.is_involution()]


# -- named families and the group grammar ------------------------------------

def trivial_group() -> FiniteGroup:
    return FiniteGroup("trivial", 1, table=np.zeros((1, 1), dtype=np.int32),
                       validate=False)


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ValidationError(f"C{k}: order must be positive")
    if k <= DENSE_TABLE_BOUND:
        idx = np.arange(k)
        return FiniteGroup(f"C{k}", k, table=(idx[:, None] + idx[None, :]) % k)
    return FiniteGroup(
        f"C{k}", k,
        mul_array=lambda a, b: (np.asarray(a, dtype=np.int64) + np.asarray(b)) % k,
        inv_array=lambda a: (k - np.asarray(a, dtype=np.int64)) % k,
        inv=lambda a: (k - a) % k)


def _perm_parity(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            clen += 1
        parity ^= (clen - 1) & 1
    return parity


class PermIndexGroup(FiniteGroup):
    """A group of permutation tuples under left-to-right composition."""

    def __init__(self, name: str, perms: Sequence[tuple[int, ...]], degree: int):
        self.degree = degree
        self.perms = tuple(perms)
        self._index = {p: i for i, p in enumerate(self.perms)}
        order = len(self.perms)

        def mul(a: int, b: int) -> int:
            pa, pb = self.perms[a], self.perms[b]
            return self._index[tuple(pb[pa[i]] for i in range(degree))]

        def inv(a: int) -> int:
            pa = self.perms[a]
            q = [0] * degree
            for i, v in enumerate(pa):
                q[v] = i
            return self._index[tuple(q)]

        super().__init__(name, order, mul=mul, inv=inv)
        if order <= DENSE_TABLE_BOUND:
            _ = self.table

    def perm(self, i: int) -> tuple[int, ...]:
        return self.perms[i]

    def index(self, p: Sequence[int]) -> int:
        key = tuple(p)
        if key not in self._index:
            raise ValidationError(f"{self.name}: {key} is not a member permutation")
        return self._index[key]


def symmetric_group(k: int) -> PermIndexGroup:
    if k < 0 or math.factorial(k) > GROUP_ORDER_BOUND:
        raise SizeBoundError(f"S{k} is out of range")
    perms = tuple(itertools.permutations(range(k)))
    return PermIndexGroup(f"S{k}", perms, k)


def alternating_group(k: int) -> PermIndexGroup:
    if k < 0 or math.factorial(k) > GROUP_ORDER_BOUND:
        raise SizeBoundError(f"A{k} is out of range")
    perms = tuple(p for p in itertools.permutations(range(k)) if _perm_parity(p) == 0)
    return PermIndexGroup(f"A{k}", perms, k)


def dihedral_group(k: int) -> FiniteGroup:
    """Symmetries of the k-gon, order 2k; index = rotation + k * flip."""
    if k < 1:
        raise ValidationError(f"D{k}: need k >= 1")
    if 2 * k > DENSE_TABLE_BOUND:
        def mul_array(a, b):
            aa = np.asarray(a, dtype=np.int64)
            bb = np.asarray(b, dtype=np.int64)
            r1, f1 = aa % k, aa // k
            r2, f2 = bb % k, bb // k
            return np.where(f1 == 0, r1 + r2, r1 - r2) % k + k * (f1 ^ f2)
        return FiniteGroup(f"D{k}", 2 * k, mul_array=mul_array,
                           inv_array=lambda a: _dihedral_inv(a, k),
                           inv=lambda a: int(_dihedral_inv(np.asarray([a]), k)[0]))
    idx = np.arange(2 * k)
    a, b = idx[:, None], idx[None, :]
    r1, f1 = a % k, a // k
    r2, f2 = b % k, b // k
    table = np.where(f1 == 0, r1 + r2, r1 - r2) % k + k * (f1 ^ f2)
    return FiniteGroup(f"D{k}", 2 * k, table=table)


def _dihedral_inv(a: np.ndarray, k: int) -> np.ndarray:
    aa = np.asarray(a, dtype=np.int64)
    r, f = aa % k, aa // k
    return np.where(f == 0, (k - r) % k, aa)


class ProductGroup(FiniteGroup):
    """Direct product with mixed-radix indexing, first factor most significant."""

    def __init__(self, factors: Sequence[FiniteGroup], name: str | None = None):
        if not factors:
            raise ValidationError("product needs at least one factor")
        self.factors = tuple(factors)
        orders = [f.order for f in self.factors]
        total = math.prod(orders)
        if total > GROUP_ORDER_BOUND:
            raise SizeBoundError(
                f"product order {total} exceeds the construction bound {GROUP_ORDER_BOUND}")
        strides = []
        acc = 1
        for o in reversed(orders):
            strides.append(acc)
            acc *= o
        self.strides = tuple(reversed(strides))
        self._forders = np.asarray(orders, dtype=np.int64)
        ftables = [f.table for f in self.factors]
        finv = [f.inverses for f in self.factors]

        def mul_array(a, b):
            aa = np.asarray(a, dtype=np.int64)
            bb = np.asarray(b, dtype=np.int64)
            out = 0
            for i, (s, o) in enumerate(zip(self.strides, orders)):
                ca = (aa // s) % o
                cb = (bb // s) % o
                out = out + ftables[i][ca, cb].astype(np.int64) * s
            return out

        def inv_array(a):
            aa = np.asarray(a, dtype=np.int64)
            out = 0
            for i, (s, o) in enumerate(zip(self.strides, orders)):
                out = out + finv[i][(aa // s) % o] * s
            return out

        def inv(a: int) -> int:
            return int(inv_array(np.asarray([a]))[0])

        super().__init__(name or "x".join(f.name for f in self.factors), total,
                         mul_array=mul_array, inv_array=inv_array, inv=inv)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ValidationError("coordinate arity mismatch")
        out = 0
        for c, s, f in zip(coords, self.strides, self.factors):
            if not 0 <= c < f.order:
                raise ValidationError(f"coordinate {c} out of range for {f.name}")
            out += c * s
        return out

    def decode(self, idx: int) -> tuple[int, ...]:
        return tuple(int(idx // s) % f.order
                     for s, f in zip(self.strides, self.factors))

    def decode_array(self, idx) -> np.ndarray:
        aa = np.asarray(idx, dtype=np.int64)
        cols = [(aa // s) % f.order for s, f in zip(self.strides, self.factors)]
        return np.stack(cols, axis=-1)

    @cached_property
    def is_abelian(self) -> bool:
        return all(f.is_abelian for f in self.factors)


def direct_product(*factors: FiniteGroup) -> ProductGroup:
    return ProductGroup(factors)


# Cached so Subgroups of "the same" power group share one instance (and one
# lazily built Cayley table).  Entries keep G alive, so id() keys stay valid.
_POWER_CACHE: dict[tuple[int, int], ProductGroup] = {}


def direct_power(G: FiniteGroup, m: int) -> ProductGroup:
    if m < 1:
        raise ValidationError("direct power needs m >= 1")
    key = (id(G), m)
    hit = _POWER_CACHE.get(key)
    if hit is None:
        hit = _POWER_CACHE[key] = ProductGroup([G] * m, name=f"{G.name}^{m}")
    return hit


def symmetric_normal_inventory(m: int) -> list[dict]:
    """Normal subgroups of S_m: label, order, and fused abelianization.

    Classical inventory, usable at any m without realizing S_m: trivial and
    S_m always; A_m for m >= 3; additionally the Klein four-group when m = 4.

    ``xi`` lists the cyclic invariant factors of the largest quotient of Q
    through which every homomorphism xi: Q -> A into an abelian group A can
    factor when xi is additionally required to be constant on S_m-conjugacy
    classes (the compatibility a coordinate-permuting action imposes).  For
    S_m itself that quotient is the sign C2.  For A_m, V4 (m=4) and A_4 it is
    trivial: S_m-conjugation fuses the generating classes with their inverses
    (or permutes the V4 involutions transitively), leaving no room for a
    nontrivial class-constant homomorphism.  The number of admissible maps
    into A is therefore prod_d #{x in A : x^d = e} over d in ``xi``.

    The test suite checks labels and orders against all_normal_subgroups for
    m <= 6 and the ``xi`` data extensionally through the wreath-product
    normal-subgroup classification.
    """
    if m < 1:
        raise ValidationError("need m >= 1")
    if m == 1:
        return [{"label": "1", "order": 1, "xi": ()}]
    if m == 2:
        return [{"label": "1", "order": 1, "xi": ()},
                {"label": "S2", "order": 2, "xi": (2,)}]
    entries = [{"label": "1", "order": 1, "xi": ()}]
    if m == 4:
        entries.append({"label": "V4", "order": 4, "xi": ()})
    half = math.factorial(m) // 2
    entries.append({"label": f"A{m}", "order": half, "xi": ()})
    entries.append({"label": f"S{m}", "order": 2 * half, "xi": (2,)})
    return entries


def symmetric_normal_subgroup(sym: PermIndexGroup, label: str) -> Subgroup:
    """Find the normal subgroup of a realized S_m matching an inventory label."""
    inventory = {e["label"]: e["order"] for e in symmetric_normal_inventory(sym.degree)}
    if label not in inventory:
        raise ValidationError(f"{label} is not a normal subgroup label of {sym.name}")
    for sub in all_normal_subgroups(sym):
        if sub.order == inventory[label]:
            return sub
    raise ValidationError(f"no realized normal subgroup of order {inventory[label]}")


# -- the textual grammar and Cayley documents ---------------------------------

_TOKEN = re.compile(r"^(?:(trivial|1)|([CZ])(\d+)|S(\d+)|A(\d+)|D(\d+)|(klein|K4))$",
                    re.IGNORECASE)


def _group_from_token(token: str) -> FiniteGroup:
    m = _TOKEN.match(token)
    if not m:
        raise ValidationError(f"unrecognized group token {token!r}")
    if m.group(1):
        return trivial_group()
    if m.group(2):
        return cyclic_group(int(m.group(3)))
    if m.group(4):
        return symmetric_group(int(m.group(4)))
    if m.group(5):
        return alternating_group(int(m.group(5)))
    if m.group(6):
        return dihedral_group(int(m.group(6)))
    return ProductGroup([cyclic_group(2), cyclic_group(2)], name="C2xC2")


def make_group(spec) -> FiniteGroup:
    """Build a group from a token string ("C2", "S3xC2", ...) or a Cayley dict."""
    if isinstance(spec, dict):
        return group_from_cayley_document(spec)
    if not isinstance(spec, str):
        raise ValidationError(f"cannot build a group from {type(spec).__name__}")
    tokens = re.split(r"\s*[xX*]\s*", spec.strip())
    if not all(tokens):
        raise ValidationError(f"malformed group description {spec!r}")
    groups = [_group_from_token(t) for t in tokens]
    if len(groups) == 1:
        return groups[0]
    return ProductGroup(groups)


def group_from_cayley_document(doc: dict) -> FiniteGroup:
    """Validate and load {"name", "order", "table"} with identity index 0."""
    try:
        name = doc["name"]
        order = doc["order"]
        rows = doc["table"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"Cayley document missing field: {exc}") from exc
    table = np.asarray(rows, dtype=np.int64)
    if table.shape != (order, order):
        raise ValidationError(
            f"Cayley document table shape {table.shape} != ({order}, {order})")
    g = FiniteGroup(str(name), int(order), table=table, identity=0, validate=True)
    return g


def cayley_document(G: FiniteGroup) -> dict:
    """Export as {"name", "order", "table"}; identity must be index 0."""
    if G.identity != 0:
        raise ValidationError("export requires the identity at index 0")
    return {"name": G.name, "order": G.order,
            "table": [[int(v) for v in row] for row in G.table]}
