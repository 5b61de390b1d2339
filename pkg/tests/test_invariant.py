"""Permutation-invariant normal subgroups of G^m and closed chains."""

import itertools

import pytest

from conftest import needs_extended
from pamcong import groups
from pamcong import invariant as inv
from pamcong.errors import ValidationError
from pamcong.groups import Subgroup, direct_power, make_group


def _brute_invariant_normal(G, m):
    """Mask set of subgroups of G^m that are normal and permutation-closed."""
    power = direct_power(G, m)
    perms = list(itertools.permutations(range(m)))
    out = set()
    for S in groups.all_normal_subgroups(power):
        ok = True
        for idx in S.members:
            t = power.decode(idx)
            if any(not S.contains(power.encode(tuple(t[p[i]] for i in range(m))))
                   for p in perms):
                ok = False
                break
        if ok:
            out.add(S.mask)
    return out


def test_per_level_counts_frozen():
    expect = {"C2": [2, 3, 4, 4, 4], "C3": [2, 4, 4, 4], "C4": [3, 7, 9],
              "K4": [5, 15, 25], "S3": [3, 4, 5], "S4": [4, 5, 6]}
    for token, counts in expect.items():
        G = make_group(token)
        assert [len(inv.enumerate_invariant_normal(G, m))
                for m in range(1, len(counts) + 1)] == counts


def test_enumeration_equals_brute_force():
    for token, m in [("C2", 2), ("C2", 3), ("C2", 4), ("C3", 2), ("C3", 3),
                     ("C4", 3), ("K4", 3), ("S3", 2), ("S3", 3)]:
        G = make_group(token)
        listed = [K.subgroup.mask for K in inv.enumerate_invariant_normal(G, m)]
        assert len(listed) == len(set(listed))
        assert set(listed) == _brute_invariant_normal(G, m)


def test_s3_cubed_orders():
    K = inv.enumerate_invariant_normal(make_group("S3"), 3)
    assert sorted(k.order for k in K) == [1, 27, 54, 108, 216]


def test_build_K_trivial_cases():
    S3 = make_group("S3")
    full = inv.full_invariant(S3, 3)
    assert full.order == 216
    triv = inv.trivial_invariant(S3, 3)
    assert triv.order == 1
    assert triv.member_tuples() == [(0, 0, 0)]


def test_build_K_even_weight_example():
    # L = M = C2, N = {0}, phi = 0: the even-weight subgroup of C2^3
    C2 = make_group("C2")
    full, trivial = C2.full_subgroup(), C2.trivial_subgroup()
    phi = inv._canonical_quotient_hom(C2, full, trivial)
    # phi restricted to M must be g -> g^(1-m) = g^-2 = 0, i.e. trivial image
    phi = groups.GroupHom(full, phi.codomain, tuple(0 for _ in full.members))
    K = inv.build_K(inv.InvariantQuadruple(L=full, M=full, N=trivial, phi=phi, m=3))
    assert K.order == 4
    assert sorted(K.member_tuples()) == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_quadruple_validation_rejects_bad_phi():
    C2 = make_group("C2")
    full, trivial = C2.full_subgroup(), C2.trivial_subgroup()
    quot = groups.quotient(C2, trivial)
    ident = groups.GroupHom(full, quot.group,
                            tuple(quot.project(g) for g in full.members))
    # m = 3 forces phi|M : g -> g^(1-3) N = identity coset; the identity map
    # violates that when M = C2
    with pytest.raises(ValidationError):
        inv.InvariantQuadruple(L=full, M=full, N=trivial, phi=ident, m=3).check()


def test_extract_build_roundtrip_exhaustive_m3():
    for token in ("C2", "C3", "C4", "K4", "C6", "S3", "D4"):
        G = make_group(token)
        if G.order ** 3 > inv.REALIZE_BOUND:
            continue
        for K in inv.enumerate_invariant_normal(G, 3):
            q = inv.extract_quadruple(K)
            assert inv.build_K(q).subgroup.mask == K.subgroup.mask


def test_extract_from_realized_subgroup():
    C2 = make_group("C2")
    even = next(K for K in inv.enumerate_invariant_normal(C2, 3) if K.order == 4)
    q = inv.extract_quadruple(even.subgroup, C2, 3)
    assert q.L.order == 2 and q.M.order == 2 and q.N.order == 1


def test_same_coset_and_commutator_lemmas():
    for token, m in [("C2", 3), ("S3", 2), ("S3", 3), ("C4", 3), ("K4", 3)]:
        G = make_group(token)
        for K in inv.enumerate_invariant_normal(G, m):
            q = None
            M = None
            if m >= 3:
                q = inv.extract_quadruple(K)
                M = q.M
                # [G, L] <= N
                commutator = groups.commutator_with(G, q.L)
                assert commutator.issubset(q.N)
            for t in K.member_tuples():
                if M is not None:
                    # all coordinates in one coset of M
                    base = t[0]
                    assert all(M.contains(G.mul(G.inv(base), x)) for x in t)


def test_projection_identity():
    # dropping a coordinate from K_m(L,M,N,phi) yields K_(m-1)(L,M,M, x -> xM)
    for token in ("C2", "C4", "S3", "K4"):
        G = make_group(token)
        for K in inv.enumerate_invariant_normal(G, 3):
            proj = inv.project(K)
            power = direct_power(G, 2)
            dropped = {t[:2] for t in K.member_tuples()}
            assert {power.decode(i) for i in proj.subgroup.members} == dropped
    # and at higher m on the quadruple level
    for K in inv.enumerate_invariant_normal(make_group("C2"), 4):
        proj = inv.project(K)
        dropped = {t[:3] for t in K.member_tuples()}
        assert set(proj.member_tuples()) == dropped


def test_pi_le_matches_realized_subset():
    for token, m in [("C2", 2), ("C2", 3), ("C2", 4), ("C3", 3), ("S3", 2)]:
        level = inv.enumerate_invariant_normal(make_group(token), m)
        for K1 in level:
            for K2 in level:
                assert inv.pi_le(K1, K2) == K1.subgroup.issubset(K2.subgroup)


def test_pi_meet_join_match_realized():
    for token, m in [("C2", 3), ("C4", 2), ("S3", 2), ("K4", 2), ("C3", 3)]:
        G = make_group(token)
        level = inv.enumerate_invariant_normal(G, m)
        full = inv.full_invariant(G, m)
        triv = inv.trivial_invariant(G, m)
        for K1 in level:
            assert inv.pi_meet(K1, full).key() == K1.key()
            assert inv.pi_join(triv, K1).key() == K1.key()
            for K2 in level:
                met = inv.pi_meet(K1, K2)
                assert met.subgroup.mask == K1.subgroup.mask & K2.subgroup.mask
                joined = inv.pi_join(K1, K2)
                assert joined.subgroup.mask == K1.subgroup.join(K2.subgroup).mask


def test_is_permutation_invariant():
    C2 = make_group("C2")
    power = direct_power(C2, 3)
    even_mask = 0
    for idx in range(8):
        if sum(power.decode(idx)) % 2 == 0:
            even_mask |= 1 << idx
    assert inv.is_permutation_invariant(Subgroup(power, even_mask))
    # C2 x C2 x {0} is normal but not invariant
    slice_mask = 0
    for idx in range(8):
        if power.decode(idx)[2] == 0:
            slice_mask |= 1 << idx
    assert not inv.is_permutation_invariant(Subgroup(power, slice_mask))


def test_chain_closure_examples():
    C2 = make_group("C2")
    full = [inv.full_invariant(C2, i) for i in (1, 2, 3)]
    assert inv.chain_is_closed(full)
    # T_i = L^i for a decreasing L-sequence
    triv = [inv.trivial_invariant(C2, i) for i in (1, 2, 3)]
    assert inv.chain_is_closed([full[0], inv.trivial_invariant(C2, 2),
                                triv[2]])
    diag2 = next(K for K in inv.enumerate_invariant_normal(C2, 2)
                 if K.order == 2)
    assert not inv.chain_is_closed([triv[0], diag2])
    with pytest.raises(ValidationError):
        inv.ClosedChain(n=2, from_rank=1, groups=(triv[0], diag2))


def test_closed_chain_counts():
    C2 = make_group("C2")
    assert [len(inv.enumerate_closed_chains(C2, n)) for n in (1, 2, 3, 4, 5)] \
        == [2, 4, 8, 13, 20]
    assert [len(inv.enumerate_closed_chains(make_group("C3"), n))
            for n in (1, 2)] == [2, 5]
    # from_rank = n+1 is the empty chain, used by the rank-collapse layer
    assert len(inv.enumerate_closed_chains(C2, 2, from_rank=3)) == 1


@needs_extended
def test_perfect_group_levels_are_powers():
    # every abelian quotient inside A5 is trivial, so the only invariant
    # normal subgroups of A5^m are the powers L^m
    A5 = make_group("A5")
    for m in (2, 3):
        K = inv.enumerate_invariant_normal(A5, m)
        assert sorted(k.order for k in K) == [1, 60 ** m]
    listed = {K.subgroup.mask for K in inv.enumerate_invariant_normal(A5, 2)}
    assert listed == _brute_invariant_normal(A5, 2)
