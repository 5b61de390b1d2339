"""Congruences of the labelled partial-injection monoid G wr I_n.

Every congruence is pinned down by three pieces of data:

* a cutoff rank m with 1 <= m <= n + 1: all elements of rank below m fall
  into a single class together with the zero (a Rees kernel);
* a closed chain of invariant normal subgroups T_i <= G^i, one for each rank
  i = m+1 .. n: two elements of rank i > m are related exactly when they
  carry the same partial injection and their label quotient, read along the
  domain, lies in T_i;
* a normal subgroup L of the rank-m symmetry group G wr S_m: two rank-m
  elements are related exactly when they share an H-class and their quotient,
  transported into G wr S_m along the H-class isomorphism (increasing-order
  coordinates), lands in L.

The chain must be closed (dropping a coordinate maps T_{i+1} into T_i) and,
when the chain is nonempty, compatible with L: the projection of T_{m+1}
sits inside the base of L.  The universal congruence is the degenerate case
m = n + 1, which carries no L.  CongruenceSpec stores exactly these data and
decides membership without ever enumerating the monoid; extensionalize and
decompose convert between specs and explicit partitions, and the counting
functions walk the same classification purely symbolically.

Idempotent-separating congruences are precisely the specs with m = 1.  They
correspond to full closed chains T_1 .. T_n (chi) and, equivalently, to
their kernels: the full, inverse-closed, self-conjugate subsemigroups of the
idempotent centralizer.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict

import numpy as np

from . import groups
from . import invariant as inv
from . import wreath_normal as wn
from .errors import SizeBoundError, ValidationError
from .groups import FiniteGroup, Subgroup
from .invariant import ClosedChain, InvariantSubgroup
from .oracle import ExtensionalCongruence, FiniteSemigroupTable
from .partial_injections import (InCongruenceSpec, PartialInjection, UNDEF,
                                 green_related, h_class_permutation)
from .wreath import WreathElement, WreathMonoid
from .wreath_normal import NormalSubgroupTriple


class CongruenceSpec:
    """rho(m, {T_i}, L): the three-part description of a congruence.

    ``chain`` maps each rank i in m+1 .. n to an invariant normal subgroup of
    G^i; ``L`` is a NormalSubgroupTriple over G wr S_m (a realized normal
    subgroup of the wreath symmetry group is accepted and converted).  The
    universal congruence is m = n + 1 with no chain entries and no L.
    """

    def __init__(self, group: FiniteGroup, n: int, m: int,
                 chain=None, L=None):
        self.group = group
        self.n = n
        self.m = m
        items = dict(chain) if chain else {}
        self.chain = {i: items[i] for i in sorted(items)}
        if isinstance(L, Subgroup):
            L = wn.extract_triple(L, wn.build_wreath_sym(group, m))
        self.L = L
        self._W = None
        self._check()

    # -- validation ----------------------------------------------------------

    def _check(self) -> None:
        G, n, m = self.group, self.n, self.m
        if n < 1:
            raise ValidationError(f"degree must be >= 1, got {n}")
        if not 1 <= m <= n + 1:
            raise ValidationError(f"cutoff m={m} out of range for degree {n}")
        if m == n + 1:
            if self.chain or self.L is not None:
                raise ValidationError(
                    "the universal congruence carries no chain and no L")
            return
        if self.L is None:
            raise ValidationError(f"a congruence with m={m} <= n={n} needs L")
        if not isinstance(self.L, NormalSubgroupTriple):
            raise ValidationError("L must be a NormalSubgroupTriple")
        self._W = wn.build_wreath_sym(G, m)
        wn.validate_triple(self.L, self._W)
        want = tuple(range(m + 1, n + 1))
        if tuple(self.chain) != want:
            raise ValidationError(
                f"chain must cover ranks {want}, got {tuple(self.chain)}")
        for i, T in self.chain.items():
            if not isinstance(T, InvariantSubgroup):
                raise ValidationError(f"chain entry at rank {i} has the wrong type")
            if T.group is not G or T.m != i:
                raise ValidationError(f"chain entry at rank {i} lives in the wrong group")
        levels = [self.chain[i] for i in want]
        for lower, upper in zip(levels, levels[1:]):
            if not inv.pi_le(inv.project(upper), lower):
                raise ValidationError("the chain is not closed under projection")
        if m <= n - 1 and not inv.pi_le(inv.project(self.chain[m + 1]), self.L.J):
            raise ValidationError(
                "incompatible: the projected chain bottom must lie in the base of L")

    # -- basic structure -------------------------------------------------------

    @property
    def is_universal(self) -> bool:
        return self.m == self.n + 1

    @property
    def is_idempotent_separating(self) -> bool:
        return self.m == 1

    def key(self) -> tuple:
        if self.is_universal:
            return (self.n, self.m, (), None)
        return (self.n, self.m,
                tuple((i, T.key()) for i, T in self.chain.items()),
                self.L.key())

    def __eq__(self, other):
        return (isinstance(other, CongruenceSpec)
                and self.group is other.group and self.key() == other.key())

    def __hash__(self):
        return hash((id(self.group), self.key()))

    def __repr__(self):
        if self.is_universal:
            return f"CongruenceSpec(universal, n={self.n})"
        orders = ",".join(str(self.chain[i].order) for i in self.chain)
        return (f"CongruenceSpec(m={self.m}, |T|=[{orders}], "
                f"|L|={self.L.order}, n={self.n})")

    def short_label(self) -> str:
        if self.is_universal:
            return "universal"
        orders = ",".join(str(self.chain[i].order) for i in self.chain)
        if orders:
            return f"m={self.m} T:{orders} |L|={self.L.order}"
        return f"m={self.m} |L|={self.L.order}"

    # -- membership ------------------------------------------------------------

    def related(self, x: WreathElement, y: WreathElement) -> bool:
        """Decide x rho y from the spec data alone."""
        if x.n != self.n or y.n != self.n:
            raise ValidationError("elements do not match the spec degree")
        if self.is_universal:
            return True
        m = self.m
        rx, ry = x.rank, y.rank
        if rx < m and ry < m:
            return True
        if x == y:
            return True
        if rx != ry:
            return False
        if rx > m:
            if x.perm != y.perm:
                return False
            G = self.group
            diff = tuple(G.mul(G.inv(x.labels[i]), y.labels[i])
                         for i in x.perm.domain())
            return self.chain[rx].contains_tuple(diff)
        # rank m: transport into G wr S_m along the H-class of the domain/image
        a, b = x.perm, y.perm
        if not green_related(a, b, "H"):
            return False
        G = self.group
        S = a.image()
        into = {a.apply(i): i for i in a.domain()}
        quotient = tuple(G.mul(G.inv(x.labels[into[s]]), y.labels[into[s]])
                         for s in S)
        sset = set(S)
        id_S = PartialInjection(tuple(i if i in sset else UNDEF
                                      for i in range(self.n)))
        w = a.inverse().compose(b)
        mu = h_class_permutation(id_S, w)
        return self.L.contains(quotient, self._W.sym.index(mu))

    # -- export ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.is_universal:
            return {"degree": self.n, "m": self.m, "universal": True}
        return {"degree": self.n, "m": self.m, "universal": False,
                "chain": [self.chain[i].describe() for i in self.chain],
                "L": self.L.describe()}

    def describe(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def spec_to_json(spec: CongruenceSpec) -> str:
    return json.dumps(spec.to_json_dict(), sort_keys=True, indent=2)


# -- distinguished specs --------------------------------------------------------


def universal_spec(G: FiniteGroup, n: int) -> CongruenceSpec:
    return CongruenceSpec(G, n, n + 1)


def identity_spec(G: FiniteGroup, n: int) -> CongruenceSpec:
    chain = {i: inv.trivial_invariant(G, i) for i in range(2, n + 1)}
    return CongruenceSpec(G, n, 1, chain, wn.trivial_triple(G, 1))


def rees_spec(G: FiniteGroup, n: int, k: int) -> CongruenceSpec:
    """Collapse the ideal of rank <= k, separate everything above."""
    if not 0 <= k <= n:
        raise ValidationError(f"ideal rank {k} out of range for degree {n}")
    if k == n:
        return universal_spec(G, n)
    chain = {i: inv.trivial_invariant(G, i) for i in range(k + 2, n + 1)}
    return CongruenceSpec(G, n, k + 1, chain, wn.trivial_triple(G, k + 1))


def max_idempotent_separating_spec(G: FiniteGroup, n: int) -> CongruenceSpec:
    """mu: same partial injection, arbitrary labels."""
    chain = {i: inv.full_invariant(G, i) for i in range(2, n + 1)}
    return CongruenceSpec(G, n, 1, chain, wn.full_triple(G, 1))


# -- idempotent-separating congruences as chains ----------------------------------


def chi_membership(chain: ClosedChain, x: WreathElement, y: WreathElement) -> bool:
    """Same partial injection and label quotient in T_rank."""
    if chain.from_rank != 1:
        raise ValidationError("chi needs a full chain T_1 .. T_n")
    if x.n != chain.n or y.n != chain.n:
        raise ValidationError("elements do not match the chain degree")
    if x.perm != y.perm:
        return False
    if x.rank == 0:
        return True
    T = chain.level(x.rank)
    G = T.group
    diff = tuple(G.mul(G.inv(x.labels[i]), y.labels[i]) for i in x.perm.domain())
    return T.contains_tuple(diff)


def chi_spec(chain: ClosedChain) -> CongruenceSpec:
    """The m = 1 congruence a full closed chain describes."""
    if chain.from_rank != 1:
        raise ValidationError("chi needs a full chain T_1 .. T_n")
    T1 = chain.level(1)
    G = T1.group
    W = wn.build_wreath_sym(G, 1)
    L = NormalSubgroupTriple(T1, W.sym.trivial_subgroup(), None, None)
    upper = {i: chain.level(i) for i in range(2, chain.n + 1)}
    return CongruenceSpec(G, chain.n, 1, upper, L)


def spec_to_chain(spec: CongruenceSpec) -> ClosedChain:
    """The full chain of an idempotent-separating (m = 1) spec."""
    if spec.m != 1:
        raise ValidationError(
            "only idempotent-separating congruences (m = 1) are chains")
    levels = (spec.L.J,) + tuple(spec.chain[i] for i in range(2, spec.n + 1))
    return ClosedChain(spec.n, 1, levels)


def _as_full_chain(spec_or_chain) -> ClosedChain:
    if isinstance(spec_or_chain, ClosedChain):
        if spec_or_chain.from_rank != 1:
            raise ValidationError("need a full chain T_1 .. T_n")
        return spec_or_chain
    if isinstance(spec_or_chain, CongruenceSpec):
        return spec_to_chain(spec_or_chain)
    raise ValidationError("expected a CongruenceSpec or a ClosedChain")


def kernel(spec_or_chain, monoid: WreathMonoid) -> list[WreathElement]:
    """All elements congruent to an idempotent: union of (T_rk(e); e) blocks."""
    chain = _as_full_chain(spec_or_chain)
    if chain.n != monoid.n or chain.level(1).group is not monoid.group:
        raise ValidationError("chain and monoid disagree on G or n")
    out = []
    for x in monoid.enumerate():
        if not x.perm.is_partial_identity():
            continue
        if x.rank == 0:
            out.append(x)
            continue
        labs = tuple(x.labels[i] for i in x.perm.domain())
        if chain.level(x.rank).contains_tuple(labs):
            out.append(x)
    return out


def subsemigroup_to_chi(T, monoid: WreathMonoid) -> ClosedChain:
    """Recover the chain from a kernel candidate, validating each axiom.

    The candidate must sit in the centralizer of the idempotents, contain
    every idempotent (fullness), and be closed under products, inversion and
    conjugation by arbitrary monoid elements; each failure is reported on its
    own.
    """
    elems = list(T)
    tset = set(elems)
    G, n = monoid.group, monoid.n
    for x in elems:
        if x.n != n:
            raise ValidationError(f"kernel candidate has degree {x.n}, monoid degree {n}")
        if not monoid.in_e_centralizer(x):
            raise ValidationError(
                f"kernel candidate leaves the idempotent centralizer at {x.format()}")
    for e in monoid.idempotents():
        if e not in tset:
            raise ValidationError(
                f"kernel candidate is not full: missing idempotent {e.format()}")
    for x in elems:
        if monoid.invert(x) not in tset:
            raise ValidationError(
                f"kernel candidate is not inverse-closed at {x.format()}")
    for x in elems:
        for y in elems:
            if monoid.multiply(x, y) not in tset:
                raise ValidationError(
                    f"kernel candidate is not closed under products at "
                    f"{x.format()} * {y.format()}")
    for s in monoid.enumerate():
        si = monoid.invert(s)
        for x in elems:
            if monoid.multiply(monoid.multiply(si, x), s) not in tset:
                raise ValidationError(
                    f"kernel candidate is not self-conjugate: "
                    f"{x.format()} conjugated by {s.format()} escapes")
    levels = []
    for i in range(1, n + 1):
        e = monoid.idempotent_on(tuple(range(i)))
        members = {tuple(x.labels[:i]) for x in elems if x.perm == e.perm}
        levels.append(_match_invariant(G, i, members))
    return ClosedChain(n, 1, tuple(levels))


def _match_invariant(G: FiniteGroup, m: int, members) -> InvariantSubgroup:
    for cand in inv.enumerate_invariant_normal(G, m):
        if cand.order == len(members) and all(
                cand.contains_tuple(t) for t in members):
            return cand
    raise ValidationError(
        f"rank-{m} class data is not an invariant normal subgroup of G^{m}")


# -- extensional form --------------------------------------------------------------


def extensionalize(spec: CongruenceSpec,
                   monoid: WreathMonoid | None = None) -> ExtensionalCongruence:
    """The explicit partition of the monoid a spec describes."""
    M = monoid if monoid is not None else WreathMonoid(spec.group, spec.n)
    if M.group is not spec.group or M.n != spec.n:
        raise ValidationError("monoid does not match the spec")
    elems = M.enumerate()
    size = len(elems)
    if spec.is_universal:
        return ExtensionalCongruence(M, np.zeros(size, dtype=np.int64))

    parent = list(range(size))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    m = spec.m
    buckets: dict = defaultdict(list)
    low: list[int] = []
    for i, x in enumerate(elems):
        k = x.rank
        if k < m:
            low.append(i)
        elif k > m:
            buckets[(k, x.perm)].append(i)
        else:
            buckets[(x.perm.domain(), x.perm.image())].append(i)
    for i in low[1:]:
        union(low[0], i)
    for members in buckets.values():
        reps: list[int] = []
        for i in members:
            for r in reps:
                if spec.related(elems[i], elems[r]):
                    union(i, r)
                    break
            else:
                reps.append(i)
    labels = np.fromiter((find(i) for i in range(size)), dtype=np.int64, count=size)
    return ExtensionalCongruence(M, labels)


def _as_wreath_monoid(monoid) -> WreathMonoid:
    if isinstance(monoid, WreathMonoid):
        return monoid
    origin = getattr(monoid, "origin", None)
    if isinstance(origin, WreathMonoid):
        return origin
    raise ValidationError(
        "the congruence is not carried by a labelled partial-injection monoid")


def decompose(ext: ExtensionalCongruence) -> CongruenceSpec:
    """Read (m, chain, L) off an explicit congruence; inverse of extensionalize."""
    M = _as_wreath_monoid(ext.monoid)
    if isinstance(ext.monoid, FiniteSemigroupTable):
        if not ext.monoid.is_congruence(ext.labels):
            raise ValidationError("the partition is not a congruence")
    G, n = M.group, M.n
    elems = M.enumerate()
    if len(elems) != ext.size:
        raise ValidationError("partition size does not match the monoid")
    lab = ext.labels
    by_rank: dict[int, list[int]] = defaultdict(list)
    for i, x in enumerate(elems):
        by_rank[x.rank].append(i)
    zero_lab = lab[M.index_of(M.zero_element())]
    kmax = 0
    for k in range(1, n + 1):
        if all(lab[i] == zero_lab for i in by_rank[k]):
            kmax = k
        else:
            break
    m = kmax + 1
    if m == n + 1:
        return universal_spec(G, n)
    chain = {}
    for i in range(m + 1, n + 1):
        e = M.idempotent_on(tuple(range(i)))
        e_lab = lab[M.index_of(e)]
        members = {elems[j].labels[:i] for j in by_rank[i]
                   if elems[j].perm == e.perm and lab[j] == e_lab}
        chain[i] = _match_invariant(G, i, members)
    W = wn.build_wreath_sym(G, m)
    e = M.idempotent_on(tuple(range(m)))
    e_lab = lab[M.index_of(e)]
    frame = tuple(range(m))
    collected = []
    for j in by_rank[m]:
        x = elems[j]
        if lab[j] != e_lab:
            continue
        if x.perm.domain() != frame or x.perm.image() != frame:
            continue
        collected.append((x.labels[:m], W.sym.index(tuple(x.perm.images[:m]))))
    L = _match_triple(G, m, collected)
    spec = CongruenceSpec(G, n, m, chain, L)
    if extensionalize(spec, M) != ext:
        raise ValidationError("the partition is not a congruence")
    return spec


def _match_triple(G: FiniteGroup, m: int, members) -> NormalSubgroupTriple:
    for cand in wn.classify_all_normal(G, m):
        if cand.order == len(members) and all(
                cand.contains(labels, p) for labels, p in members):
            return cand
    raise ValidationError(
        f"the rank-{m} class of the identity is not a normal subgroup "
        f"of the rank-{m} symmetry group")


# -- enumeration --------------------------------------------------------------------


def enumerate_all(monoid_or_group, n: int | None = None) -> list[CongruenceSpec]:
    """Every congruence spec of G wr I_n, universal last."""
    if isinstance(monoid_or_group, WreathMonoid):
        G, n = monoid_or_group.group, monoid_or_group.n
    else:
        G = monoid_or_group
        if n is None:
            raise ValidationError("need the degree n alongside a bare group")
    out = []
    for m in range(1, n + 1):
        triples = wn.classify_all_normal(G, m)
        chains = inv.enumerate_closed_chains(G, n, from_rank=m + 1)
        for t in triples:
            for ch in chains:
                if m <= n - 1 and not inv.pi_le(inv.project(ch.level(m + 1)), t.J):
                    continue
                out.append(CongruenceSpec(
                    G, n, m, {i: ch.level(i) for i in range(m + 1, n + 1)}, t))
    out.append(universal_spec(G, n))
    return out


# -- ordering and lattice operations ---------------------------------------------------


def _same_context(s1: CongruenceSpec, s2: CongruenceSpec) -> None:
    if s1.group is not s2.group or s1.n != s2.n:
        raise ValidationError("specs describe congruences of different monoids")


def spec_le(s1: CongruenceSpec, s2: CongruenceSpec) -> bool:
    """Refinement order: every s1-class sits inside an s2-class."""
    _same_context(s1, s2)
    if s2.is_universal:
        return True
    if s1.is_universal:
        return False
    if s1.m > s2.m:
        return False
    for i in range(s2.m + 1, s1.n + 1):
        if not inv.pi_le(s1.chain[i], s2.chain[i]):
            return False
    if s1.m == s2.m:
        return wn.triple_le(s1.L, s2.L)
    return inv.pi_le(s1.chain[s2.m], s2.L.J)


def spec_join(s1: CongruenceSpec, s2: CongruenceSpec) -> CongruenceSpec:
    """Smallest congruence containing both, computed on the descriptions."""
    _same_context(s1, s2)
    if s1.m < s2.m:
        s1, s2 = s2, s1
    if s1.is_universal:
        return s1
    G, n, m = s1.group, s1.n, s1.m
    chain = {i: inv.pi_join(s1.chain[i], s2.chain[i]) for i in range(m + 1, n + 1)}
    W = wn.build_wreath_sym(G, m)
    if s2.m == m:
        Z = wn.triple_join(s1.L, s2.L, W)
    else:
        lifted = NormalSubgroupTriple(s2.chain[m], W.sym.trivial_subgroup(),
                                      None, None)
        Z = wn.triple_join(s1.L, lifted, W)
    return CongruenceSpec(G, n, m, chain, Z)


def spec_meet(s1: CongruenceSpec, s2: CongruenceSpec) -> CongruenceSpec:
    """Largest congruence inside both, computed on the descriptions."""
    _same_context(s1, s2)
    if s1.m < s2.m:
        s1, s2 = s2, s1
    if s1.is_universal:
        return s2
    G, n, m1, m2 = s1.group, s1.n, s1.m, s2.m
    chain = {}
    for i in range(m2 + 1, n + 1):
        if i > m1:
            chain[i] = inv.pi_meet(s1.chain[i], s2.chain[i])
        elif i == m1:
            chain[i] = inv.pi_meet(s1.L.J, s2.chain[i])
        else:
            chain[i] = s2.chain[i]
    if m1 == m2:
        B = wn.triple_meet(s1.L, s2.L, wn.build_wreath_sym(G, m1))
    else:
        B = s2.L
    return CongruenceSpec(G, n, m2, chain, B)


# -- restriction to the unlabelled monoid and degree embedding --------------------------


def restrict_to_In(spec: CongruenceSpec, mode: str) -> InCongruenceSpec:
    """Restriction of rho to partial injections, via either eta section.

    ``via-eta-1`` plugs in identity labels: a ~ b iff (1_a; a) rho (1_b; b).
    ``via-eta-2`` asks for any witness labels.  The first is the kernel of
    the permutation twist on L, the second its full projection, so eta-1
    always refines eta-2.
    """
    if mode not in ("via-eta-1", "via-eta-2"):
        raise ValidationError(f"unknown restriction mode {mode!r}")
    n, m = spec.n, spec.m
    if spec.is_universal:
        return InCongruenceSpec(n, n + 1, None)
    sym = spec._W.sym
    if spec.L.kind == "base":
        N = sym.trivial_subgroup()
    elif mode == "via-eta-2":
        N = spec.L.Q
    else:
        members = [q for q in spec.L.Q.members if spec.L.xi_at(q) == 0]
        N = Subgroup(sym, groups._mask_from(members))
        N.check()
    return InCongruenceSpec(n, m, N)


def embed_spec(spec: CongruenceSpec) -> CongruenceSpec:
    """The congruence of degree n+1 generated by the image of rho.

    Same cutoff and L, chain extended by the trivial group at the new top
    rank.  A universal spec stops being universal: it embeds as the Rees
    congruence collapsing the old monoid's ranks.
    """
    G, n = spec.group, spec.n
    if spec.is_universal:
        return rees_spec(G, n + 1, n)
    chain = dict(spec.chain)
    chain[n + 1] = inv.trivial_invariant(G, n + 1)
    return CongruenceSpec(G, n + 1, spec.m, chain, spec.L)


# -- counting ------------------------------------------------------------------------


def _chain_weights(G: FiniteGroup, n: int) -> dict[int, dict[tuple, int]]:
    """weights[i][T.key()] = number of closed chains T_i = T, ..., T_n."""
    weights = {n: {K.key(): 1 for K in inv.enumerate_invariant_normal(G, n)}}
    for i in range(n - 1, 0, -1):
        upper = inv.enumerate_invariant_normal(G, i + 1)
        projected = [(inv.project(Y), weights[i + 1][Y.key()]) for Y in upper]
        weights[i] = {
            X.key(): sum(w for p, w in projected if inv.pi_le(p, X))
            for X in inv.enumerate_invariant_normal(G, i)}
    return weights


def count_congruences(G: FiniteGroup, n: int) -> int:
    """Number of congruences of G wr I_n, by pure counting on the descriptions."""
    if n < 1:
        raise ValidationError(f"degree must be >= 1, got {n}")
    weights = _chain_weights(G, n)
    total = 1  # universal
    for m in range(1, n):
        level = inv.enumerate_invariant_normal(G, m + 1)
        total += sum(weights[m + 1][T.key()]
                     * wn.count_with_base_superset(G, m, inv.project(T))
                     for T in level)
    total += wn.count_normal_descriptors(G, n)
    return total


def count_idempotent_separating(G: FiniteGroup, n: int) -> int:
    """Number of m = 1 congruences: closed full chains T_1 .. T_n."""
    if n < 1:
        raise ValidationError(f"degree must be >= 1, got {n}")
    return sum(_chain_weights(G, n)[1].values())


# -- lattice export ---------------------------------------------------------------------


def lattice_dot(specs: list[CongruenceSpec], name: str = "congruences") -> str:
    """The Hasse diagram of the refinement order, as DOT text."""
    order = sorted(range(len(specs)), key=lambda i: specs[i].key())
    le = [[spec_le(specs[i], specs[j]) for j in order] for i in order]
    k = len(order)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;",
             '  node [shape=box, fontname="monospace"];']
    for pos, i in enumerate(order):
        lines.append(f'  s{pos} [label={json.dumps(specs[i].short_label())}];')
    for a in range(k):
        for b in range(k):
            if a == b or not le[a][b]:
                continue
            if any(c not in (a, b) and le[a][c] and le[c][b] for c in range(k)):
                continue
            lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines)
