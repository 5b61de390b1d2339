"""Normal subgroups of the full-rank symmetry group G wr S_m.

The rank-m elements of the labelled partial injection monoid on m points form
a group: tuples over G extended by S_m permuting coordinates, with the same
left-to-right product (u; p)(v; q) = (u * v_p ; pq), (v_p)_i = v_(p(i)).

Its normal subgroups come in exactly two shapes, and both are captured by a
triple (J, Q, xi):

* inside the base: Q trivial, J any coordinate-permutation-invariant normal
  subgroup of G^m;
* projecting onto a nontrivial Q <= S_m: the base intersection J is forced to
  be a product kernel {g : g_1 ... g_m in N} for some N containing [G, G],
  and each fiber over q in Q is the J-coset of product class xi(q), where
  xi: Q -> G/N is a homomorphism constant on S_m-conjugacy classes.

The class-constancy requirement is what makes xi trivial on A_m (and on the
Klein subgroup of S_4): the only nontrivial contributions factor through the
sign map.  classify_all_normal derives the xi inventory by enumerating and
filtering homomorphisms, so the closed-form counting in
count_normal_descriptors is independently cross-checkable against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SizeBoundError, ValidationError
from . import groups
from . import invariant
from .groups import FiniteGroup, GroupHom, PermIndexGroup, Subgroup, _mask_from
from .invariant import InvariantSubgroup, product_kernel

WREATH_REALIZE_BOUND = 5000


class WreathSymGroup:
    """G wr S_m as a dense group; element index = base_index * m! + perm_index."""

    def __init__(self, group: FiniteGroup, m: int):
        if m < 1:
            raise ValidationError(f"need m >= 1, got {m}")
        self.group = group
        self.m = m
        self.sym = groups.symmetric_group(m)
        self.base = groups.direct_power(group, m)
        n_perm = self.sym.order
        order = self.base.order * n_perm
        G, base, sym = group, self.base, self.sym

        def mul(x: int, y: int) -> int:
            ux, px = divmod(x, n_perm)
            uy, py = divmod(y, n_perm)
            gu, gv = base.decode(ux), base.decode(uy)
            pp = sym.perm(px)
            w = tuple(G.mul(gu[i], gv[pp[i]]) for i in range(m))
            return base.encode(w) * n_perm + sym.mul(px, py)

        def inv(x: int) -> int:
            ux, px = divmod(x, n_perm)
            gu = base.decode(ux)
            pi = sym.inv(px)
            pinv = sym.perm(pi)
            ub = tuple(G.inv(gu[pinv[i]]) for i in range(m))
            return base.encode(ub) * n_perm + pi

        self.as_group = FiniteGroup(f"{group.name}wr{self.sym.name}", order,
                                    mul=mul, inv=inv)

    @property
    def order(self) -> int:
        return self.as_group.order

    def encode(self, labels, p: int) -> int:
        return self.base.encode(tuple(labels)) * self.sym.order + p

    def decode(self, x: int) -> tuple[tuple[int, ...], int]:
        u, p = divmod(x, self.sym.order)
        return self.base.decode(u), p

    def __repr__(self) -> str:
        return f"WreathSymGroup({self.group.name}, m={self.m}, order {self.order})"


_WREATH_CACHE: dict[tuple[int, int], WreathSymGroup] = {}


def build_wreath_sym(G: FiniteGroup, m: int) -> WreathSymGroup:
    """Shared instance per (G, m), so subgroups of the same W are comparable."""
    key = (id(G), m)
    hit = _WREATH_CACHE.get(key)
    if hit is None:
        hit = _WREATH_CACHE[key] = WreathSymGroup(G, m)
    return hit


@dataclass(frozen=True, eq=False)
class NormalSubgroupTriple:
    """A normal subgroup of G wr S_m as (base intersection, projection, twist).

    Q trivial: the subgroup is J itself, any invariant normal of G^m, and N
    and xi are absent.  Q nontrivial: J is the product kernel of N, xi is
    aligned with Q.members and names the G/N product class of each fiber.
    """

    J: InvariantSubgroup
    Q: Subgroup
    N: Subgroup | None
    xi: tuple[int, ...] | None

    @property
    def kind(self) -> str:
        return "base" if self.Q.order == 1 else "extension"

    @property
    def group(self) -> FiniteGroup:
        return self.J.group

    @property
    def m(self) -> int:
        return self.J.m

    @property
    def order(self) -> int:
        return self.J.order * self.Q.order

    def xi_at(self, q: int) -> int:
        return self.xi[self.Q.members.index(q)]

    def contains(self, labels, p: int) -> bool:
        if not self.Q.contains(p):
            return False
        if self.kind == "base":
            return self.J.contains_tuple(labels)
        G = self.group
        quot = groups.quotient(G, self.N)
        acc = G.identity
        for g in labels:
            acc = G.mul(acc, int(g))
        return quot.project(acc) == self.xi_at(p)

    def key(self) -> tuple:
        if self.kind == "base":
            return (0, self.J.key())
        return (1, self.Q.mask, self.N.mask, self.xi)

    def __eq__(self, other):
        return (isinstance(other, NormalSubgroupTriple)
                and self.group is other.group and self.m == other.m
                and self.key() == other.key())

    def __hash__(self):
        return hash((id(self.group), self.m, self.key()))

    def __repr__(self):
        if self.kind == "base":
            return f"NormalSubgroupTriple(base, {self.J!r})"
        return (f"NormalSubgroupTriple(extension, |Q|={self.Q.order}, "
                f"|N|={self.N.order}, order {self.order})")

    def describe(self) -> dict:
        out = {"kind": self.kind, "m": self.m, "order": self.order,
               "base_part": self.J.describe()}
        if self.kind == "extension":
            out["Q"] = list(self.Q.members)
            out["N"] = list(self.N.members)
            out["xi"] = list(self.xi)
        return out


def validate_triple(t: NormalSubgroupTriple, W: WreathSymGroup) -> NormalSubgroupTriple:
    """Check the triple conditions against W; raises ValidationError, returns t."""
    if t.J.group is not W.group or t.J.m != W.m:
        raise ValidationError("triple and wreath group disagree on G or m")
    if t.Q.group is not W.sym:
        raise ValidationError("Q must be a subgroup of W's symmetric group")
    if not t.Q.is_normal:
        raise ValidationError("Q must be normal in S_m")
    if t.Q.order == 1:
        if t.N is not None or t.xi is not None:
            raise ValidationError("base triples carry no N or xi")
        return t
    if t.N is None or t.xi is None:
        raise ValidationError("extension triples need N and xi")
    if t.N.group is not W.group or not t.N.is_normal:
        raise ValidationError("N must be a normal subgroup of G")
    kernel = product_kernel(W.group, W.m, t.N)
    if not (invariant.pi_le(t.J, kernel) and invariant.pi_le(kernel, t.J)):
        raise ValidationError(
            "a nontrivial projection forces the base intersection to be "
            "the product kernel of N")
    quot = groups.quotient(W.group, t.N)
    if len(t.xi) != t.Q.order:
        raise ValidationError("xi must assign one product class per member of Q")
    if any(not 0 <= v < quot.group.order for v in t.xi):
        raise ValidationError("xi values must be G/N elements")
    members = t.Q.members
    pos = {q: i for i, q in enumerate(members)}
    sym = W.sym
    for i, q1 in enumerate(members):
        for j, q2 in enumerate(members):
            if t.xi[pos[sym.mul(q1, q2)]] != quot.group.mul(t.xi[i], t.xi[j]):
                raise ValidationError("xi must be a homomorphism Q -> G/N")
    for p in range(sym.order):
        ip = sym.inv(p)
        for i, q in enumerate(members):
            if t.xi[pos[sym.mul(sym.mul(p, q), ip)]] != t.xi[i]:
                raise ValidationError(
                    "xi must be constant on S_m-conjugacy classes")
    return t


def triple_to_subgroup(t: NormalSubgroupTriple, W: WreathSymGroup) -> Subgroup:
    """Realize the triple as a subgroup of W.as_group (bounded)."""
    validate_triple(t, W)
    if W.order > WREATH_REALIZE_BOUND:
        raise SizeBoundError(
            f"|{W.as_group.name}| = {W.order} exceeds the realization bound "
            f"{WREATH_REALIZE_BOUND}")
    mask = _mask_from(x for x in range(W.order)
                      if t.contains(*W.decode(x)))
    return Subgroup(W.as_group, mask)


def extract_triple(K: Subgroup, W: WreathSymGroup) -> NormalSubgroupTriple:
    """Recover (J, Q, xi) from a realized normal subgroup of W.as_group."""
    if K.group is not W.as_group:
        raise ValidationError("K must live in W.as_group")
    if not K.is_normal:
        raise ValidationError("K must be normal")
    q_members = set()
    base_members = []
    fiber_witness: dict[int, tuple[int, ...]] = {}
    for x in K.members:
        labels, p = W.decode(x)
        q_members.add(p)
        fiber_witness.setdefault(p, labels)
        if p == 0:
            base_members.append(W.base.encode(labels))
    Q = Subgroup(W.sym, _mask_from(q_members))
    J = invariant.from_realized(W.group, W.m, Subgroup(W.base, _mask_from(base_members)))
    if Q.order == 1:
        return validate_triple(NormalSubgroupTriple(J, Q, None, None), W)
    if W.m >= 3:
        N = J.payload.N
    else:
        N = J.payload.C
    quot = groups.quotient(W.group, N)
    G = W.group
    xi = []
    for q in Q.members:
        acc = G.identity
        for g in fiber_witness[q]:
            acc = G.mul(acc, g)
        xi.append(quot.project(acc))
    return validate_triple(NormalSubgroupTriple(J, Q, N, tuple(xi)), W)


# -- classification -----------------------------------------------------------------


def _class_constant_homs(W: WreathSymGroup, Q: Subgroup,
                         cod: FiniteGroup) -> list[tuple[int, ...]]:
    """Image tuples of homs Q -> cod constant on S_m-conjugacy classes."""
    sym = W.sym
    pos = {q: i for i, q in enumerate(Q.members)}
    out = []
    for hom in groups.all_homs(Q, cod):
        ok = True
        for p in range(sym.order):
            ip = sym.inv(p)
            for q in Q.members:
                if hom.apply(sym.mul(sym.mul(p, q), ip)) != hom.apply(q):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(hom.images)
    return out


def classify_all_normal(G: FiniteGroup, m: int) -> list[NormalSubgroupTriple]:
    """Every normal subgroup of G wr S_m as a validated triple.

    Base triples come from the invariant-subgroup enumeration; extension
    triples pair each nontrivial normal Q <= S_m with each N >= [G, G] and
    each class-constant homomorphism xi: Q -> G/N.
    """
    W = build_wreath_sym(G, m)
    trivial_q = Subgroup(W.sym, _mask_from([W.sym.identity]))
    out = [NormalSubgroupTriple(J, trivial_q, None, None)
           for J in invariant.enumerate_invariant_normal(G, m)]
    commutator = groups.commutator_with(G, G.full_subgroup())
    big_qs = [Q for Q in groups.all_normal_subgroups(W.sym) if Q.order > 1]
    for N in groups.all_normal_subgroups(G):
        if not commutator.issubset(N):
            continue
        quot = groups.quotient(G, N)
        kernel = product_kernel(G, m, N)
        for Q in big_qs:
            for xi in _class_constant_homs(W, Q, quot.group):
                out.append(NormalSubgroupTriple(kernel, Q, N, xi))
    for t in out:
        validate_triple(t, W)
    out.sort(key=lambda t: (t.order,) + t.key())
    return out


def count_normal_descriptors(G: FiniteGroup, m: int) -> int:
    """len(classify_all_normal(G, m)) without building S_m or G wr S_m.

    The xi signature of each normal subgroup of S_m (trivial except for S_m
    itself, where homs factor through the sign) turns the hom count into
    counting elements of order dividing 2 in G/N.
    """
    total = len(invariant.enumerate_invariant_normal(G, m))
    commutator = groups.commutator_with(G, G.full_subgroup())
    entries = [e for e in groups.symmetric_normal_inventory(m) if e["order"] > 1]
    for N in groups.all_normal_subgroups(G):
        if not commutator.issubset(N):
            continue
        quot = groups.quotient(G, N)
        for entry in entries:
            total += _signature_count(quot.group, entry["xi"])
    return total


def count_with_base_superset(G: FiniteGroup, m: int,
                             S: InvariantSubgroup) -> int:
    """Descriptors whose base intersection contains the invariant subgroup S."""
    if S.group is not G or S.m != m:
        raise ValidationError("S must be an invariant subgroup of G^m")
    total = sum(1 for J in invariant.enumerate_invariant_normal(G, m)
                if invariant.pi_le(S, J))
    commutator = groups.commutator_with(G, G.full_subgroup())
    entries = [e for e in groups.symmetric_normal_inventory(m) if e["order"] > 1]
    for N in groups.all_normal_subgroups(G):
        if not commutator.issubset(N):
            continue
        if not invariant.pi_le(S, product_kernel(G, m, N)):
            continue
        quot = groups.quotient(G, N)
        for entry in entries:
            total += _signature_count(quot.group, entry["xi"])
    return total


def _signature_count(quot_group: FiniteGroup, signature: tuple[int, ...]) -> int:
    count = 1
    for d in signature:
        orders = quot_group.element_orders()
        count *= int(sum(1 for o in orders if d % int(o) == 0))
    return count


# -- distinguished triples and the subgroup lattice ---------------------------------


def trivial_triple(G: FiniteGroup, m: int) -> NormalSubgroupTriple:
    """The one-element subgroup of G wr S_m."""
    W = build_wreath_sym(G, m)
    return NormalSubgroupTriple(invariant.trivial_invariant(G, m),
                                W.sym.trivial_subgroup(), None, None)


def full_triple(G: FiniteGroup, m: int) -> NormalSubgroupTriple:
    """The whole of G wr S_m."""
    W = build_wreath_sym(G, m)
    J = invariant.full_invariant(G, m)
    if m == 1:
        return NormalSubgroupTriple(J, W.sym.trivial_subgroup(), None, None)
    return NormalSubgroupTriple(J, W.sym.full_subgroup(), G.full_subgroup(),
                                (0,) * math.factorial(m))


def triple_le(t1: NormalSubgroupTriple, t2: NormalSubgroupTriple) -> bool:
    """Containment of the described subgroups, decided without realizing them.

    A base triple sits inside any triple whose identity-permutation fiber
    contains its J; that fiber is J of the other triple in both kinds.  For
    two extensions, Q and N must nest and the product classes must agree
    after coarsening from G/N1 to G/N2.
    """
    if t1.group is not t2.group or t1.m != t2.m:
        raise ValidationError("triples live in different wreath groups")
    if t1.kind == "base":
        return invariant.pi_le(t1.J, t2.J)
    if t2.kind == "base":
        return False
    if not (t1.Q.issubset(t2.Q) and t1.N.issubset(t2.N)):
        return False
    G = t1.group
    q1 = groups.quotient(G, t1.N)
    q2 = groups.quotient(G, t2.N)
    return all(q2.project(q1.lift(t1.xi_at(q))) == t2.xi_at(q)
               for q in t1.Q.members)


def triple_join(t1: NormalSubgroupTriple, t2: NormalSubgroupTriple,
                W: WreathSymGroup) -> NormalSubgroupTriple:
    """Smallest normal subgroup containing both (realized, so bounded)."""
    a = triple_to_subgroup(t1, W)
    b = triple_to_subgroup(t2, W)
    return extract_triple(a.join(b), W)


def triple_meet(t1: NormalSubgroupTriple, t2: NormalSubgroupTriple,
                W: WreathSymGroup) -> NormalSubgroupTriple:
    """Intersection of the two subgroups (realized, so bounded)."""
    a = triple_to_subgroup(t1, W)
    b = triple_to_subgroup(t2, W)
    return extract_triple(a.meet(b), W)
