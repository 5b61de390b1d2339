"""Permutation-invariant normal subgroups of the m-th direct power of a group.

A subgroup K of G^m that is normal and stable under all coordinate
permutations is determined, for m >= 3, by a quadruple (L, M, N, phi): three
normal subgroups N <= M <= L of G with [G, L] <= N, and a homomorphism
phi: L -> L/N whose restriction to M is g -> g^(1-m) N and whose value at g
lies in the coset gM/N.  Membership is then

    (g_1, ..., g_m) in K  iff  all g_i in L, all g_i M equal,
                               and phi(g_1) = g_1^(2-m) g_2 ... g_m N.

For m = 2 the classification runs through pairs C <= A of normal subgroups
and involutory automorphisms theta of A/C, giving X = {(a, b) : theta(aC) = bC};
not every such X is normal in G^2 (twisted diagonals of centerless groups are
not), so candidates pass an explicit invariance + normality filter.  For m = 1
these are exactly the normal subgroups of G.

The module also provides closed chains {T_i <= G^i}, each T_i projecting into
its predecessor, which parametrize the idempotent-separating congruences
downstream.  Everything here works symbolically where it can: membership,
order, projection, and containment never materialize G^m, so chains remain
usable past the point where the power group is enumerable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import SizeBoundError, ValidationError
from . import groups
from .groups import FiniteGroup, GroupHom, Subgroup, _mask_from

REALIZE_BOUND = 4096


@dataclass(frozen=True, eq=False)
class InvariantQuadruple:
    """(L, M, N, phi, m) data determining an invariant normal subgroup of G^m."""

    L: Subgroup
    M: Subgroup
    N: Subgroup
    phi: GroupHom
    m: int

    def __post_init__(self):
        self.check()

    @property
    def group(self) -> FiniteGroup:
        return self.L.group

    @property
    def quotient(self) -> groups.QuotientGroup:
        return groups.quotient(self.L.group, self.N)

    def check(self) -> None:
        G = self.L.group
        if self.m < 3:
            raise ValidationError(f"quadruples describe levels m >= 3, got m={self.m}")
        if self.M.group is not G or self.N.group is not G:
            raise ValidationError("L, M, N must live in the same group")
        if not (self.N.issubset(self.M) and self.M.issubset(self.L)):
            raise ValidationError("need N <= M <= L")
        for sub, name in ((self.L, "L"), (self.M, "M"), (self.N, "N")):
            if not sub.is_normal:
                raise ValidationError(f"{name} must be normal in {G.name}")
        if not groups.commutator_with(G, self.L).issubset(self.N):
            raise ValidationError("[G, L] must lie inside N")
        quot = self.quotient
        if self.phi.codomain is not quot.group:
            raise ValidationError("phi must map into the quotient by N")
        if self.phi.domain.mask != self.L.mask:
            raise ValidationError("phi must be defined on exactly L")
        self.phi.check()
        for g in self.M.members:
            if self.phi.apply(g) != quot.project(G.power(G.inv(g), self.m - 1)):
                raise ValidationError(
                    f"phi restricted to M must send g to g^(1-m) N (fails at {g})")
        for g in self.L.members:
            rep = quot.lift(self.phi.apply(g))
            if not self.M.contains(G.mul(G.inv(g), rep)):
                raise ValidationError(
                    f"phi(g) must lie in the coset gM/N (fails at {g})")

    def key(self) -> tuple:
        return (self.L.mask, self.M.mask, self.N.mask, self.phi.images)

    def describe(self) -> dict:
        return {
            "kind": "quadruple",
            "m": self.m,
            "L": list(self.L.members),
            "M": list(self.M.members),
            "N": list(self.N.members),
            "phi": list(self.phi.images),
        }


class GoursatPair:
    """m = 2 descriptor: X = {(a, b) in A x A : theta(aC) = bC}."""

    def __init__(self, A: Subgroup, C: Subgroup, theta: GroupHom):
        G = A.group
        if C.group is not G:
            raise ValidationError("A and C must live in the same group")
        if not C.issubset(A):
            raise ValidationError("need C <= A")
        if not (A.is_normal and C.is_normal):
            raise ValidationError("A and C must be normal in the ambient group")
        self.A = A
        self.C = C
        realized = A.realized
        inner_c = Subgroup(realized.group,
                           _mask_from(realized.index[x] for x in C.members))
        self.quot = groups.quotient(realized.group, inner_c)
        if theta.domain.group is not self.quot.group or theta.codomain is not self.quot.group:
            raise ValidationError("theta must be a self-map of A/C")
        if not (theta.is_bijective and theta.is_involution()):
            raise ValidationError("theta must be an involutory automorphism of A/C")
        self.theta = theta
        # per A-member: its coset index, and the theta image of that coset
        self._proj_of = {a: self.quot.project(realized.index[a]) for a in A.members}
        self._theta_of = {a: theta.apply(p) for a, p in self._proj_of.items()}

    def contains_pair(self, a: int, b: int) -> bool:
        if not (self.A.contains(a) and self.A.contains(b)):
            return False
        return self._theta_of[a] == self._proj_of[b]

    def key(self) -> tuple:
        return (self.A.mask, self.C.mask, self.theta.images)

    def describe(self) -> dict:
        return {
            "kind": "goursat",
            "m": 2,
            "A": list(self.A.members),
            "C": list(self.C.members),
            "theta": list(self.theta.images),
        }


def _identity_pair(A: Subgroup, C: Subgroup) -> GoursatPair:
    """X = {(a, b) in A^2 : aC = bC}, i.e. theta = identity on A/C."""
    realized = A.realized
    inner_c = Subgroup(realized.group,
                       _mask_from(realized.index[x] for x in C.members))
    quot = groups.quotient(realized.group, inner_c)
    theta = GroupHom(quot.group.full_subgroup(), quot.group,
                     tuple(range(quot.group.order)))
    return GoursatPair(A, C, theta)


class InvariantSubgroup:
    """An invariant normal subgroup of G^m with its structural description.

    The realized subgroup of direct_power(G, m) is materialized lazily and
    refuses above REALIZE_BOUND; membership, order, projection and comparison
    all work symbolically.
    """

    def __init__(self, group: FiniteGroup, m: int, payload):
        self.group = group
        self.m = m
        if m == 1:
            if not isinstance(payload, Subgroup) or payload.group is not group:
                raise ValidationError("level-1 payload must be a Subgroup of G")
            if not payload.is_normal:
                raise ValidationError("level-1 invariant subgroups are the normal ones")
            self.kind = "level1"
        elif m == 2:
            if not isinstance(payload, GoursatPair) or payload.A.group is not group:
                raise ValidationError("level-2 payload must be a GoursatPair over G")
            self.kind = "pairs"
        else:
            if not isinstance(payload, InvariantQuadruple) or payload.m != m \
                    or payload.group is not group:
                raise ValidationError(f"level-{m} payload must be a matching quadruple")
            self.kind = "quad"
        self.payload = payload

    @property
    def quadruple(self):
        return self.payload if self.kind == "quad" else None

    @property
    def order(self) -> int:
        if self.kind == "level1":
            return self.payload.order
        if self.kind == "pairs":
            return self.payload.A.order * self.payload.C.order
        q = self.payload
        return q.L.order * q.M.order ** (self.m - 2) * q.N.order

    def contains_tuple(self, t) -> bool:
        t = tuple(int(x) for x in t)
        if len(t) != self.m:
            raise ValidationError(f"expected a {self.m}-tuple, got {len(t)}")
        if self.kind == "level1":
            return self.payload.contains(t[0])
        if self.kind == "pairs":
            return self.payload.contains_pair(t[0], t[1])
        q = self.payload
        G = self.group
        if not all(q.L.contains(x) for x in t):
            return False
        inv0 = G.inv(t[0])
        if not all(q.M.contains(G.mul(inv0, x)) for x in t[1:]):
            return False
        acc = G.power(inv0, self.m - 2)
        for x in t[1:]:
            acc = G.mul(acc, x)
        return q.phi.apply(t[0]) == q.quotient.project(acc)

    def key(self) -> tuple:
        if self.kind == "level1":
            return (self.m, self.payload.mask)
        return (self.m,) + self.payload.key()

    def __eq__(self, other):
        return (isinstance(other, InvariantSubgroup) and self.group is other.group
                and self.key() == other.key())

    def __hash__(self):
        return hash((id(self.group), self.key()))

    def __repr__(self):
        return f"InvariantSubgroup({self.group.name}^{self.m}, {self.kind}, order {self.order})"

    @cached_property
    def subgroup(self) -> Subgroup:
        """The realized subgroup of direct_power(G, m)."""
        total = self.group.order ** self.m
        if total > REALIZE_BOUND:
            raise SizeBoundError(
                f"|{self.group.name}|^{self.m} = {total} exceeds the realization "
                f"bound {REALIZE_BOUND}")
        power = groups.direct_power(self.group, self.m)
        return Subgroup(power, _mask_from(
            idx for idx in range(total) if self.contains_tuple(power.decode(idx))))

    def member_tuples(self) -> list[tuple[int, ...]]:
        power = self.subgroup.group
        return [power.decode(i) for i in self.subgroup.members]

    def describe(self) -> dict:
        if self.kind == "level1":
            return {"kind": "level1", "m": 1, "members": list(self.payload.members)}
        return self.payload.describe()


# -- construction and extraction ---------------------------------------------------


def build_K(q: InvariantQuadruple) -> InvariantSubgroup:
    """The invariant normal subgroup of G^m a validated quadruple determines."""
    return InvariantSubgroup(q.L.group, q.m, q)


def _canonical_quotient_hom(G: FiniteGroup, L: Subgroup, N: Subgroup) -> GroupHom:
    quot = groups.quotient(G, N)
    return GroupHom(L, quot.group, tuple(quot.project(g) for g in L.members))


def extract_quadruple(K, G: FiniteGroup | None = None,
                      m: int | None = None) -> InvariantQuadruple:
    """Recover the (L, M, N, phi) description of an invariant normal K <= G^m.

    L is the first-coordinate projection, N the set of g with (g, 1, ..., 1)
    in K, M the second coordinates of members starting with the identity, and
    phi(g) reads off g^(2-m) g_2 ... g_m N from any member starting with g.
    """
    if isinstance(K, InvariantSubgroup):
        if K.kind != "quad":
            raise ValidationError("quadruples describe levels m >= 3")
        return K.payload
    if not isinstance(K, Subgroup):
        raise ValidationError("expected an InvariantSubgroup or realized Subgroup")
    power = K.group
    if G is None or m is None:
        if not isinstance(power, groups.ProductGroup):
            raise ValidationError("cannot infer G and m; pass them explicitly")
        G, m = power.factors[0], len(power.factors)
    if m < 3:
        raise ValidationError(f"quadruples describe levels m >= 3, got m={m}")
    if not K.is_normal:
        raise ValidationError("K must be normal in G^m")
    members = [power.decode(i) for i in K.members]
    member_set = set(members)
    for t in members:
        for j in range(m - 1):
            swapped = list(t)
            swapped[j], swapped[j + 1] = swapped[j + 1], swapped[j]
            if tuple(swapped) not in member_set:
                raise ValidationError("K is not coordinate-permutation invariant")

    first_tuple: dict[int, tuple[int, ...]] = {}
    n_members, m_members = set(), set()
    identity_tail = (G.identity,) * (m - 1)
    for t in members:
        first_tuple.setdefault(t[0], t)
        if t[1:] == identity_tail:
            n_members.add(t[0])
        if t[0] == G.identity:
            m_members.add(t[1])
    L = Subgroup(G, _mask_from(first_tuple))
    M = Subgroup(G, _mask_from(m_members))
    N = Subgroup(G, _mask_from(n_members))

    quot = groups.quotient(G, N)
    images = []
    for g in L.members:
        t = first_tuple[g]
        acc = G.power(G.inv(g), m - 2)
        for x in t[1:]:
            acc = G.mul(acc, x)
        images.append(quot.project(acc))
    phi = GroupHom(L, quot.group, tuple(images))
    return InvariantQuadruple(L=L, M=M, N=N, phi=phi, m=m)


def _extract_pair(G: FiniteGroup, sub: Subgroup) -> GoursatPair:
    power = sub.group
    pairs = [power.decode(i) for i in sub.members]
    witness: dict[int, int] = {}
    c_members = set()
    for a, b in pairs:
        witness.setdefault(a, b)
        if a == G.identity:
            c_members.add(b)
    A = Subgroup(G, _mask_from(witness))
    C = Subgroup(G, _mask_from(c_members))
    realized = A.realized
    inner_c = Subgroup(realized.group,
                       _mask_from(realized.index[x] for x in C.members))
    quot = groups.quotient(realized.group, inner_c)
    images = []
    for ci in range(quot.group.order):
        a = realized.embed[quot.lift(ci)]
        images.append(quot.project(realized.index[witness[a]]))
    theta = GroupHom(quot.group.full_subgroup(), quot.group, tuple(images))
    return GoursatPair(A, C, theta)


def from_realized(G: FiniteGroup, m: int, sub: Subgroup) -> InvariantSubgroup:
    """Wrap a realized invariant normal subgroup of G^m in its description."""
    if m == 1:
        power = sub.group
        mask = _mask_from(power.decode(i)[0] for i in sub.members)
        return InvariantSubgroup(G, 1, Subgroup(G, mask))
    if m == 2:
        return InvariantSubgroup(G, 2, _extract_pair(G, sub))
    return build_K(extract_quadruple(sub, G, m))


def product_kernel(G: FiniteGroup, m: int, N: Subgroup) -> InvariantSubgroup:
    """{(g_1, ..., g_m) : g_1 g_2 ... g_m in N}, for N containing [G, G].

    The largest invariant subgroup with full coordinate projections modulo N;
    the base intersection of every normal subgroup of the wreath extension
    that projects onto a nontrivial permutation group.
    """
    if not groups.commutator_with(G, G.full_subgroup()).issubset(N):
        raise ValidationError(
            "the product map is well-defined only modulo a subgroup "
            "containing the commutator subgroup")
    if m == 1:
        return InvariantSubgroup(G, 1, N)
    if m == 2:
        full = G.full_subgroup()
        realized = full.realized
        inner_n = Subgroup(realized.group,
                           _mask_from(realized.index[x] for x in N.members))
        quot = groups.quotient(realized.group, inner_n)
        theta = GroupHom(quot.group.full_subgroup(), quot.group,
                         tuple(quot.group.inv(q) for q in range(quot.group.order)))
        return InvariantSubgroup(G, 2, GoursatPair(full, N, theta))
    full = G.full_subgroup()
    quot = groups.quotient(G, N)
    phi = GroupHom(full, quot.group,
                   tuple(quot.project(G.power(G.inv(g), m - 1)) for g in full.members))
    return build_K(InvariantQuadruple(L=full, M=full, N=N, phi=phi, m=m))


def trivial_invariant(G: FiniteGroup, m: int) -> InvariantSubgroup:
    """The one-element subgroup of G^m in structural form."""
    triv = G.trivial_subgroup()
    if m == 1:
        return InvariantSubgroup(G, 1, triv)
    if m == 2:
        return InvariantSubgroup(G, 2, _identity_pair(triv, triv))
    phi = _canonical_quotient_hom(G, triv, triv)
    return build_K(InvariantQuadruple(L=triv, M=triv, N=triv, phi=phi, m=m))


def full_invariant(G: FiniteGroup, m: int) -> InvariantSubgroup:
    """All of G^m in structural form."""
    if m == 1:
        return InvariantSubgroup(G, 1, G.full_subgroup())
    return product_kernel(G, m, G.full_subgroup())


# -- enumeration ------------------------------------------------------------------

_LEVEL_CACHE: dict[tuple[int, int], list[InvariantSubgroup]] = {}


def enumerate_invariant_normal(G: FiniteGroup, m: int) -> list[InvariantSubgroup]:
    """All invariant normal subgroups of G^m, duplicate-free, deterministic order."""
    if m < 1:
        raise ValidationError(f"need m >= 1, got {m}")
    cache_key = (id(G), m)
    hit = _LEVEL_CACHE.get(cache_key)
    if hit is not None:
        return list(hit)

    out: list[InvariantSubgroup] = []
    seen: set[tuple] = set()

    def push(inv: InvariantSubgroup) -> None:
        key = inv.key()
        if key not in seen:
            seen.add(key)
            out.append(inv)

    normals = groups.all_normal_subgroups(G)
    if m == 1:
        for N in normals:
            push(InvariantSubgroup(G, 1, N))
    elif m == 2:
        if G.order ** 2 > REALIZE_BOUND:
            raise SizeBoundError(
                f"level-2 enumeration filters candidates inside G^2; "
                f"|G|^2 = {G.order ** 2} exceeds {REALIZE_BOUND}")
        realized_seen: set[int] = set()
        for A in normals:
            realized = A.realized
            for C in normals:
                if not C.issubset(A):
                    continue
                inner_c = Subgroup(realized.group,
                                   _mask_from(realized.index[x] for x in C.members))
                quot = groups.quotient(realized.group, inner_c)
                for theta in groups.involutory_automorphisms(quot.group):
                    candidate = InvariantSubgroup(G, 2, GoursatPair(A, C, theta))
                    realized_sub = candidate.subgroup
                    if realized_sub.mask in realized_seen:
                        continue
                    if not _is_swap_invariant(realized_sub):
                        continue
                    if not realized_sub.is_normal:
                        continue
                    realized_seen.add(realized_sub.mask)
                    push(candidate)
    else:
        for L in normals:
            commutator = groups.commutator_with(G, L)
            for N in normals:
                if not (N.issubset(L) and commutator.issubset(N)):
                    continue
                quot = groups.quotient(G, N)
                mids = [M for M in normals if N.issubset(M) and M.issubset(L)]
                for phi in groups.all_homs(L, quot.group):
                    for M in mids:
                        if _phi_fits(G, quot, phi, M, L, m):
                            push(build_K(InvariantQuadruple(L=L, M=M, N=N,
                                                            phi=phi, m=m)))
    out.sort(key=lambda inv: (inv.order, inv.key()))
    _LEVEL_CACHE[cache_key] = list(out)
    return out


def _phi_fits(G, quot, phi: GroupHom, M: Subgroup, L: Subgroup, m: int) -> bool:
    for g in M.members:
        if phi.apply(g) != quot.project(G.power(G.inv(g), m - 1)):
            return False
    for g in L.members:
        rep = quot.lift(phi.apply(g))
        if not M.contains(G.mul(G.inv(g), rep)):
            return False
    return True


def _is_swap_invariant(sub: Subgroup) -> bool:
    power = sub.group
    for idx in sub.members:
        a, b = power.decode(idx)
        if not sub.contains(power.encode((b, a))):
            return False
    return True


def is_permutation_invariant(sub: Subgroup) -> bool:
    """Is a realized subgroup of G^m closed under permuting coordinates?

    Checked on a transposition and an m-cycle, which generate all
    coordinate permutations.
    """
    power = sub.group
    m = len(power.factors)
    if m == 1:
        return True
    perms = [tuple([1, 0] + list(range(2, m))),
             tuple(list(range(1, m)) + [0])]
    for idx in sub.members:
        t = power.decode(idx)
        for p in perms:
            if not sub.contains(power.encode(tuple(t[p[i]] for i in range(m)))):
                return False
    return True


# -- projection, ordering, lattice -------------------------------------------------


def project(K: InvariantSubgroup) -> InvariantSubgroup:
    """Image of K under dropping the last coordinate: a level-(m-1) invariant.

    Structurally: a quadruple (L, M, N, phi) projects to (L, M, M, canonical),
    which at m-1 = 2 is the theta = identity pair on L/M and at m-1 = 1 is L
    itself.  No realization happens.
    """
    G = K.group
    if K.m == 1:
        raise ValidationError("cannot project below level 1")
    if K.kind == "pairs":
        return InvariantSubgroup(G, 1, K.payload.A)
    q = K.payload
    if K.m == 3:
        return InvariantSubgroup(G, 2, _identity_pair(q.L, q.M))
    phi = _canonical_quotient_hom(G, q.L, q.M)
    return build_K(InvariantQuadruple(L=q.L, M=q.M, N=q.M, phi=phi, m=K.m - 1))


def pi_le(K1: InvariantSubgroup, K2: InvariantSubgroup) -> bool:
    """Containment of invariant subgroups at the same level, symbolically.

    For quadruples: componentwise containment of L, M, N plus agreement of
    the phis modulo the larger N.  The phi comparison is what separates, say,
    the diagonal from the kernel-of-product subgroup at odd m.
    """
    if K1.group is not K2.group or K1.m != K2.m:
        raise ValidationError("comparison needs matching group and level")
    if K1.kind == "level1":
        return K1.payload.issubset(K2.payload)
    if K1.kind == "pairs":
        p1, p2 = K1.payload, K2.payload
        if not (p1.A.issubset(p2.A) and p1.C.issubset(p2.C)):
            return False
        for a in p1.A.members:
            if not p2.contains_pair(a, _theta_witness(p1, a)):
                return False
        return True
    q1, q2 = K1.payload, K2.payload
    if not (q1.L.issubset(q2.L) and q1.M.issubset(q2.M) and q1.N.issubset(q2.N)):
        return False
    for g in q1.L.members:
        rep = q1.quotient.lift(q1.phi.apply(g))
        if q2.phi.apply(g) != q2.quotient.project(rep):
            return False
    return True


def _theta_witness(pair: GoursatPair, a: int) -> int:
    """Some b with (a, b) in the pair's subgroup."""
    return pair.A.realized.embed[pair.quot.lift(pair._theta_of[a])]


def pi_order_compare(K1: InvariantSubgroup, K2: InvariantSubgroup) -> str:
    le, ge = pi_le(K1, K2), pi_le(K2, K1)
    if le and ge:
        return "equal"
    if le:
        return "less"
    if ge:
        return "greater"
    return "incomparable"


def pi_meet(K1: InvariantSubgroup, K2: InvariantSubgroup) -> InvariantSubgroup:
    """Intersection, re-expressed structurally (realizes; bound applies)."""
    if K1.group is not K2.group or K1.m != K2.m:
        raise ValidationError("meet needs matching group and level")
    return from_realized(K1.group, K1.m, K1.subgroup.meet(K2.subgroup))


def pi_join(K1: InvariantSubgroup, K2: InvariantSubgroup) -> InvariantSubgroup:
    """Generated subgroup, verified invariant normal (realizes; bound applies)."""
    if K1.group is not K2.group or K1.m != K2.m:
        raise ValidationError("join needs matching group and level")
    joined = K1.subgroup.join(K2.subgroup)
    if not joined.is_normal:
        raise ValidationError("join left the normal subgroup lattice")
    result = from_realized(K1.group, K1.m, joined)
    if result.subgroup.mask != joined.mask:
        raise ValidationError("join is not coordinate-permutation invariant")
    return result


# -- closed chains ------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedChain:
    """Invariant subgroups T_i <= G^i for from_rank <= i <= n, each projecting
    into its predecessor."""

    n: int
    from_rank: int
    groups: tuple[InvariantSubgroup, ...]

    def __post_init__(self):
        if not (1 <= self.from_rank <= self.n + 1):
            raise ValidationError(f"from_rank {self.from_rank} out of range for n={self.n}")
        expected = self.n - self.from_rank + 1
        if len(self.groups) != expected:
            raise ValidationError(
                f"chain from rank {self.from_rank} to {self.n} needs {expected} "
                f"levels, got {len(self.groups)}")
        for offset, inv in enumerate(self.groups):
            if inv.m != self.from_rank + offset:
                raise ValidationError(
                    f"level mismatch: position {offset} holds a level-{inv.m} subgroup")
        if not chain_is_closed(self):
            raise ValidationError("chain is not closed under projection")

    def level(self, i: int) -> InvariantSubgroup:
        if not (self.from_rank <= i <= self.n):
            raise ValidationError(f"no level {i} in this chain")
        return self.groups[i - self.from_rank]

    def __repr__(self):
        orders = ",".join(str(g.order) for g in self.groups)
        return f"ClosedChain(levels {self.from_rank}..{self.n}, orders [{orders}])"


def chain_is_closed(chain) -> bool:
    """Does every member project into its predecessor?"""
    levels = chain.groups if isinstance(chain, ClosedChain) else tuple(chain)
    for prev, cur in zip(levels, levels[1:]):
        if cur.m != prev.m + 1:
            raise ValidationError("chain levels must be consecutive")
        if not pi_le(project(cur), prev):
            return False
    return True


def enumerate_closed_chains(G: FiniteGroup, n: int,
                            from_rank: int = 1) -> list[ClosedChain]:
    """All closed chains (T_from_rank, ..., T_n), assembled top-down."""
    if not (1 <= from_rank <= n + 1):
        raise ValidationError(f"from_rank {from_rank} out of range for n={n}")
    if from_rank == n + 1:
        return [ClosedChain(n=n, from_rank=from_rank, groups=())]
    levels = {i: enumerate_invariant_normal(G, i) for i in range(from_rank, n + 1)}
    chains: list[list[InvariantSubgroup]] = [[top] for top in levels[n]]
    for i in range(n - 1, from_rank - 1, -1):
        extended = []
        for partial in chains:
            shadow = project(partial[0])
            for candidate in levels[i]:
                if pi_le(shadow, candidate):
                    extended.append([candidate] + partial)
        chains = extended
    return [ClosedChain(n=n, from_rank=from_rank, groups=tuple(c)) for c in chains]
