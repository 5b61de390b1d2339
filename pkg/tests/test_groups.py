"""Group layer: tokens, axioms, subgroup enumeration, quotients, homs."""

import pytest

from pamcong import groups
from pamcong.errors import SizeBoundError, ValidationError


def test_make_group_tokens_and_orders():
    for token, order in [("trivial", 1), ("1", 1), ("C2", 2), ("Z3", 3),
                         ("C4", 4), ("C6", 6), ("S3", 6), ("S4", 24),
                         ("A4", 12), ("D4", 8), ("K4", 4), ("klein", 4),
                         ("C2xC2", 4), ("C2xS3", 12)]:
        assert groups.make_group(token).order == order


def test_make_group_rejects_junk():
    for bad in ("badtoken", "C0", "Sx", "", "C2x", "S3yC2"):
        with pytest.raises(ValidationError):
            groups.make_group(bad)


def test_group_axioms_exhaustive():
    # identity, inverses, and full associativity for every stock group <= 64
    for token in ("trivial", "C2", "C6", "S3", "K4", "D4", "A4", "S4"):
        G = groups.make_group(token)
        e = G.identity
        for a in range(G.order):
            assert G.mul(e, a) == a == G.mul(a, e)
            assert G.mul(a, G.inv(a)) == e == G.mul(G.inv(a), a)
        for a in range(G.order):
            for b in range(G.order):
                ab = G.mul(a, b)
                for c in range(G.order):
                    assert G.mul(ab, c) == G.mul(a, G.mul(b, c))


def test_direct_power_orders_and_bound():
    assert groups.direct_power(groups.make_group("C2"), 3).order == 8
    assert groups.direct_power(groups.make_group("S3"), 2).order == 36
    with pytest.raises(SizeBoundError):
        groups.direct_power(groups.make_group("C2"), 40)


def test_direct_power_encoding_roundtrip():
    P = groups.direct_power(groups.make_group("S3"), 2)
    for idx in range(P.order):
        assert P.encode(P.decode(idx)) == idx


def _is_normal_brute(G, S):
    return all(S.contains(G.conj(g, x)) for g in range(G.order) for x in S.members)


def test_all_normal_subgroups_known_counts():
    assert len(groups.all_normal_subgroups(groups.make_group("trivial"))) == 1
    S3 = groups.make_group("S3")
    normals = groups.all_normal_subgroups(S3)
    assert sorted(S.order for S in normals) == [1, 3, 6]
    assert len(groups.all_normal_subgroups(groups.make_group("C4"))) == 3


def test_all_normal_subgroups_equals_brute_filter():
    # complete against the exhaustive subgroup search, conjugation-filtered
    for token in ("S3", "C6", "K4", "D4", "A4", "S4"):
        G = groups.make_group(token)
        brute = {S.mask for S in groups.all_subgroups(G) if _is_normal_brute(G, S)}
        listed = [S.mask for S in groups.all_normal_subgroups(G)]
        assert len(listed) == len(set(listed))
        assert set(listed) == brute


def test_all_normal_subgroups_deterministic_order():
    G = groups.make_group("S4")
    a = [(S.order, S.mask) for S in groups.all_normal_subgroups(G)]
    b = [(S.order, S.mask) for S in groups.all_normal_subgroups(G)]
    assert a == b == sorted(a)


def test_quotient_orders_and_projection_is_hom():
    C4 = groups.make_group("C4")
    N = next(S for S in groups.all_normal_subgroups(C4) if S.order == 2)
    q = groups.quotient(C4, N)
    assert q.group.order == 2

    S3 = groups.make_group("S3")
    A3 = next(S for S in groups.all_normal_subgroups(S3) if S.order == 3)
    q = groups.quotient(S3, A3)
    assert q.group.order == 2
    assert len(q.cosets) * A3.order == S3.order
    for a in range(S3.order):
        for b in range(S3.order):
            assert q.project(S3.mul(a, b)) == q.group.mul(q.project(a), q.project(b))


def test_quotient_rejects_non_normal():
    S3 = groups.make_group("S3")
    H = next(S for S in groups.all_subgroups(S3)
             if S.order == 2 and not _is_normal_brute(S3, S))
    with pytest.raises(ValidationError):
        groups.quotient(S3, H)


def test_commutator_with():
    for token in ("C4", "K4", "C6"):
        G = groups.make_group(token)
        assert groups.commutator_with(G, G.full_subgroup()).order == 1
    S3 = groups.make_group("S3")
    assert groups.commutator_with(S3, S3.full_subgroup()).order == 3
    assert groups.commutator_with(S3, S3.trivial_subgroup()).order == 1


def test_chief_length_values():
    for token, c in [("trivial", 0), ("C2", 1), ("C2xC2", 2), ("S3", 2),
                     ("C4", 2), ("S4", 3)]:
        assert groups.chief_length(groups.make_group(token)) == c


def test_chief_length_additive_on_products():
    for a, b in [("C2", "S3"), ("C2", "C3"), ("S3", "S3")]:
        Ga, Gb = groups.make_group(a), groups.make_group(b)
        prod = groups.make_group(f"{a}x{b}")
        assert (groups.chief_length(prod)
                == groups.chief_length(Ga) + groups.chief_length(Gb))


def _brute_homs(dom, cod):
    """Every function tuple satisfying the hom law; feasible for tiny groups."""
    from itertools import product
    members = dom.members if isinstance(dom, groups.Subgroup) else tuple(range(dom.order))
    g = dom.group if isinstance(dom, groups.Subgroup) else dom
    found = set()
    for images in product(range(cod.order), repeat=len(members)):
        f = dict(zip(members, images))
        if all(f[g.mul(x, y)] == cod.mul(f[x], f[y])
               for x in members for y in members):
            found.add(images)
    return found


def test_all_homs_counts():
    C2 = groups.make_group("C2")
    C3 = groups.make_group("C3")
    S3 = groups.make_group("S3")
    triv = groups.make_group("trivial")
    assert len(groups.all_homs(C2, C2)) == 2
    assert len(groups.all_homs(S3, C3)) == 1
    assert len(groups.all_homs(C2, triv)) == 1
    assert len(groups.all_homs(S3, C2)) == 2  # trivial and sign


def test_all_homs_exhaustive_cross_check():
    cases = [("C2", "C2"), ("C2", "C4"), ("C4", "C2"), ("C4", "C4"),
             ("K4", "C2"), ("S3", "C2"), ("S3", "C3")]
    for a, b in cases:
        dom, cod = groups.make_group(a), groups.make_group(b)
        listed = {h.check().images for h in groups.all_homs(dom, cod)}
        assert listed == _brute_homs(dom, cod)


def test_cayley_document_roundtrip():
    S3 = groups.make_group("S3")
    doc = groups.cayley_document(S3)
    assert set(doc) == {"name", "order", "table"}
    back = groups.group_from_cayley_document(doc)
    assert back.order == 6
    assert all(back.mul(a, b) == S3.mul(a, b)
               for a in range(6) for b in range(6))
    # make_group accepts the document directly
    assert groups.make_group(doc).order == 6


def test_subgroup_check_catches_non_closure():
    S3 = groups.make_group("S3")
    bad = groups.Subgroup(S3, 0b000110)  # two transpositions, no closure
    with pytest.raises(ValidationError):
        bad.check()
