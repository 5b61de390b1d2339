"""Acceptance gate: ten checks, one per release criterion.

Each test prints a single "criterion N: PASS/FAIL" line (visible under -s or
-rA) and the pytest -v status line carries the same verdict.  Runtime limits
are asserted where a criterion pins one.
"""

import random
import time

from pamcong import congruence as cg
from pamcong import invariant as inv
from pamcong import oracle
from pamcong import wreath_normal as wn
from pamcong.groups import all_normal_subgroups, direct_power, make_group
from pamcong.partial_injections import green_related
from pamcong.wreath import WreathMonoid, theta_embed

from conftest import extended_profile

C2 = make_group("C2")
C3 = make_group("C3")
TRIV = make_group("trivial")


def report(k: int, ok: bool, detail: str) -> None:
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {k}: {detail}"


def test_criterion_01_classification_equals_oracle():
    t0 = time.monotonic()
    instances = [(TRIV, 2, 4), (TRIV, 3, 7), (C2, 1, 3), (C2, 2, 11)]
    for G, n, expect in instances:
        M = WreathMonoid(G, n)
        ours = {cg.extensionalize(s, M) for s in cg.enumerate_all(M)}
        table = oracle.FiniteSemigroupTable.from_monoid(M)
        assert ours == set(table.all_congruences())
        assert len(ours) == expect
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"basic instances took {elapsed:.1f}s"
    detail = f"4 instances, set equality, {elapsed:.1f}s"
    if extended_profile():
        M = WreathMonoid(C2, 3)
        ours = {cg.extensionalize(s, M) for s in cg.enumerate_all(M)}
        table = oracle.FiniteSemigroupTable.from_monoid(M)
        assert ours == set(table.all_congruences())
        assert len(ours) == 33
        elapsed = time.monotonic() - t0
        assert elapsed < 600.0
        detail = f"5 instances including degree 3, {elapsed:.1f}s"
    report(1, True, detail)


def test_criterion_02_invariant_subgroups_vs_brute_force():
    t0 = time.monotonic()
    instances = [("C2", 2), ("C2", 3), ("C3", 3), ("C4", 3),
                 ("C2xC2", 3), ("S3", 2), ("S3", 3)]
    for token, m in instances:
        G = make_group(token)
        listed = {K.subgroup.mask for K in inv.enumerate_invariant_normal(G, m)}
        brute = {S.mask for S in all_normal_subgroups(direct_power(G, m))
                 if inv.is_permutation_invariant(S)}
        assert listed == brute, (token, m)
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    report(2, True, f"7 instances, set equality, {elapsed:.1f}s")


def test_criterion_03_wreath_normal_vs_brute_force():
    t0 = time.monotonic()
    for token, m in [("C2", 2), ("C2", 3), ("C3", 2), ("C3", 3), ("trivial", 4)]:
        G = make_group(token)
        W = wn.build_wreath_sym(G, m)
        triples = wn.classify_all_normal(G, m)
        listed = {wn.triple_to_subgroup(t, W).mask for t in triples}
        brute = {S.mask for S in all_normal_subgroups(W.as_group)}
        assert listed == brute, (token, m)
        if (token, m) == ("C2", 2):
            assert len(triples) == 6
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    report(3, True, f"5 instances, C2 wr S_2 reproduces 6, {elapsed:.1f}s")


def test_criterion_04_quadruple_roundtrip():
    total = 0
    for token in ("C2", "C3", "C4", "C2xC2", "S3"):
        G = make_group(token)
        for K in inv.enumerate_invariant_normal(G, 3):
            q = inv.extract_quadruple(K)
            assert inv.build_K(q).key() == K.key(), (token, K.describe())
            total += 1
    report(4, True, f"build_K after extract_quadruple fixed {total} subgroups")


def test_criterion_05_decomposition_roundtrip():
    total = 0
    for G, n in [(TRIV, 2), (TRIV, 3), (C2, 1), (C2, 2)]:
        M = WreathMonoid(G, n)
        elems = M.enumerate()
        for spec in cg.enumerate_all(M):
            assert cg.decompose(cg.extensionalize(spec, M)) == spec
        table = oracle.FiniteSemigroupTable.from_monoid(M)
        for ext in table.all_congruences():
            spec = cg.decompose(ext)
            for i, x in enumerate(elems):
                for j, y in enumerate(elems):
                    assert spec.related(x, y) == ext.related(i, j)
            total += 1
    report(5, True, f"identity on all specs; {total} oracle partitions "
                    f"reproduced pairwise")


def test_criterion_06_join_meet_formula():
    t0 = time.monotonic()
    M = WreathMonoid(C2, 2)
    specs = cg.enumerate_all(M)
    ext = {s: cg.extensionalize(s, M) for s in specs}
    for s in specs:
        for t in specs:
            want_join = oracle.ExtensionalCongruence(
                M, oracle.join_labels(ext[s].labels, ext[t].labels))
            want_meet = oracle.ExtensionalCongruence(
                M, oracle.meet_labels(ext[s].labels, ext[t].labels))
            assert ext[cg.spec_join(s, t)] == want_join
            assert ext[cg.spec_meet(s, t)] == want_meet
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    report(6, True, f"all {len(specs)}x{len(specs)} pairs at (C2, n=2), "
                    f"{elapsed:.1f}s")


def test_criterion_07_theta_embedding():
    total = 0
    for G, n in [(C2, 1), (TRIV, 2)]:
        M = WreathMonoid(G, n)
        elems = M.enumerate()
        M_plus = WreathMonoid(G, n + 1)
        table = oracle.FiniteSemigroupTable.from_monoid(M_plus)
        image = {x: M_plus.index_of(theta_embed(x)) for x in elems}
        for spec in cg.enumerate_all(M):
            pairs = [(image[x], image[y])
                     for x in elems for y in elems if spec.related(x, y)]
            generated = table.congruence_from_pairs(pairs)
            for x in elems:
                for y in elems:
                    assert (generated.related(image[x], image[y])
                            == spec.related(x, y))
            total += 1
    report(7, True, f"generated congruence restricts back for all {total} "
                    f"embedded congruences")


def test_criterion_08_chain_count_formula():
    assert oracle.chain_count(3, 2) == 6
    for c in range(6):
        for k in range(13):
            assert oracle.chain_count(c, k) == oracle.chain_count_enumerated(c, k)
    report(8, True, "formula equals enumeration for c <= 5, k <= 12")


def test_criterion_09_growth_windows():
    t0 = time.monotonic()
    reports = [oracle.growth_experiment(TRIV, 10),
               oracle.growth_experiment(C2, 8),
               oracle.growth_experiment(make_group("C2xC2"), 8)]
    problems = []
    for rep in reports:
        counts = rep.cong_counts
        assert all(a <= b for a, b in zip(counts, counts[1:])), rep.group_name
        if rep.cong_window is not None and not rep.cong_slope_ok:
            lo, hi = rep.cong_window
            problems.append(
                f"{rep.group_name} slope {rep.cong_slope:.3f} outside "
                f"[{lo:g}, {hi:g}] +/- 0.5")
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0, f"took {elapsed:.1f}s"
    report(9, not problems,
           "counts nondecreasing; " + ("; ".join(problems) if problems
                                       else "all slopes in window"))


def _exhaustive_laws_c2():
    M = WreathMonoid(C2, 2)
    elems = M.enumerate()
    for x in elems:
        partners = [y for y in elems
                    if M.multiply(M.multiply(x, y), x) == x
                    and M.multiply(M.multiply(y, x), y) == y]
        assert partners == [M.invert(x)]
    idem = M.idempotents()
    for e in idem:
        for f in idem:
            assert M.multiply(e, f) == M.multiply(f, e)
        assert e.perm.is_partial_identity()
        assert all(e.labels[i] == C2.identity for i in e.perm.domain())
    assert len(idem) == 4
    zeta = {x for x in elems if M.in_e_centralizer(x)}
    assert zeta == {x for x in elems if x.perm.is_partial_identity()}

    def ideal(x, left, right):
        out = {x}
        for s in elems:
            for t in elems:
                y = x
                if left:
                    y = M.multiply(s, y)
                if right:
                    y = M.multiply(y, t)
                out.add(y)
        return frozenset(out)

    for rel, left, right in (("L", True, False), ("R", False, True),
                             ("J", True, True)):
        ideals = {x: ideal(x, left, right) for x in elems}
        for x in elems:
            for y in elems:
                assert M.green_related(x, y, rel) == (ideals[x] == ideals[y])
    for x in elems:
        for y in elems:
            assert M.green_related(x, y, "H") == (
                M.green_related(x, y, "L") and M.green_related(x, y, "R"))


def _randomized_laws_c3(samples: int) -> None:
    M = WreathMonoid(C3, 3)
    elems = M.enumerate()
    rng = random.Random(0x5eed)
    e_id = C3.identity
    for _ in range(samples):
        x = rng.choice(elems)
        y = rng.choice(elems)
        xi = M.invert(x)
        yi = M.invert(y)
        assert M.multiply(M.multiply(x, xi), x) == x
        assert M.multiply(M.multiply(xi, x), xi) == xi
        assert M.invert(M.multiply(x, y)) == M.multiply(yi, xi)
        e = M.multiply(x, xi)
        f = M.multiply(y, yi)
        assert M.multiply(e, f) == M.multiply(f, e)
        assert M.is_idempotent(e)
        assert e.perm.is_partial_identity()
        assert all(e.labels[i] == e_id for i in e.perm.domain())
        assert M.in_e_centralizer(x) == x.perm.is_partial_identity()
        assert M.green_related(x, y, "L") == (M.multiply(xi, x) == M.multiply(yi, y))
        assert M.green_related(x, y, "R") == (M.multiply(x, xi) == M.multiply(y, yi))
        assert M.green_related(x, y, "H") == (
            green_related(x.perm, y.perm, "L") and green_related(x.perm, y.perm, "R"))
        assert M.green_related(x, y, "J") == (x.rank == y.rank)


def test_criterion_10_algebraic_laws():
    _exhaustive_laws_c2()
    samples = 100_000
    _randomized_laws_c3(samples)
    report(10, True, f"exhaustive at (C2, n=2); {samples} random samples "
                     f"at (C3, n=3)")
