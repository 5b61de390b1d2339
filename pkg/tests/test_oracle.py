"""Brute-force oracle: generic congruence machinery, chain counts, growth harness."""

import numpy as np
import pytest

from pamcong import oracle
from pamcong.errors import SizeBoundError, ValidationError
from pamcong.groups import make_group
from pamcong.partial_injections import enumerate_partial_injections
from pamcong.wreath import WreathMonoid


def _in_table(n):
    elems = enumerate_partial_injections(n)
    return elems, oracle.FiniteSemigroupTable.from_elements(
        elems, lambda a, b: a.compose(b))


def test_table_validates_associativity():
    oracle.FiniteSemigroupTable(np.array([[0, 1], [1, 0]], dtype=np.int32))  # xor
    with pytest.raises(ValidationError):
        # (0*1)*1 = 1*1 = 0 but 0*(1*1) = 0*0 = 0 ... the 1,1,1 triple breaks:
        # (1*1)*1 = 0*1 = 1 vs 1*(1*1) = 1*0 = 0
        oracle.FiniteSemigroupTable(np.array([[0, 1], [0, 0]], dtype=np.int32))


def test_principal_congruence_trivial_pair():
    _, table = _in_table(2)
    x = 3
    assert oracle.principal_congruence(table, (x, x)).is_equality()


def test_principal_congruence_group_cosets():
    # in a group, the pair (g, 1) generates the partition by cosets of the
    # normal closure of g
    S3 = make_group("S3")
    table = oracle.FiniteSemigroupTable(S3.table)
    three_cycle = next(g for g in range(6) if S3.power(g, 3) == S3.identity
                       and g != S3.identity)
    ext = oracle.principal_congruence(table, (three_cycle, S3.identity))
    assert ext.n_classes == 2  # closure is A3; two cosets
    transposition = next(g for g in range(6) if S3.power(g, 2) == S3.identity
                         and g != S3.identity)
    assert oracle.principal_congruence(
        table, (transposition, S3.identity)).is_universal()


def test_principal_congruence_collapses_low_ideal():
    # relating zero to a rank-1 idempotent swallows the whole rank-<=1 ideal
    elems, table = _in_table(2)
    zero = next(i for i, x in enumerate(elems) if x.rank == 0)
    e1 = next(i for i, x in enumerate(elems)
              if x.rank == 1 and x.is_partial_identity())
    ext = oracle.principal_congruence(table, (zero, e1))
    low = [i for i, x in enumerate(elems) if x.rank <= 1]
    assert len({int(ext.labels[i]) for i in low}) == 1
    high = [i for i, x in enumerate(elems) if x.rank == 2]
    assert all(int(ext.labels[i]) != int(ext.labels[zero]) for i in high)


def test_all_congruences_semilattice_and_I2():
    two = oracle.FiniteSemigroupTable(np.array([[0, 0], [0, 1]], dtype=np.int32))
    assert len(two.all_congruences()) == 2
    _, table = _in_table(2)
    assert len(table.all_congruences()) == 4


def test_all_congruences_members_are_congruences_definitionally():
    elems, table = _in_table(2)
    s = table.size
    for ext in table.all_congruences():
        lab = ext.labels
        for x in range(s):
            for y in range(s):
                if lab[x] != lab[y]:
                    continue
                for t in range(s):
                    assert lab[table.table[t, x]] == lab[table.table[t, y]]
                    assert lab[table.table[x, t]] == lab[table.table[y, t]]


def test_all_congruences_join_and_meet_closed():
    M = WreathMonoid(make_group("C2"), 2)
    table = oracle.FiniteSemigroupTable.from_monoid(M)
    assert table.origin is M
    congs = set(table.all_congruences())
    for a in congs:
        for b in congs:
            j = oracle.join_labels(a.labels, b.labels)
            m = oracle.meet_labels(a.labels, b.labels)
            assert table.is_congruence(j) and table.is_congruence(m)
            assert oracle.ExtensionalCongruence(table, j) in congs
            assert oracle.ExtensionalCongruence(table, m) in congs


def test_is_congruence_rejects_unclosed_partition():
    M = WreathMonoid(make_group("C2"), 2)
    table = oracle.FiniteSemigroupTable.from_monoid(M)
    labels = list(range(17))
    i = M.index_of(M.identity_element())
    z = M.index_of(M.zero_element())
    labels[z] = labels[i]  # just these two, no translation closure
    assert not table.is_congruence(labels)


def test_extensional_equality_is_partition_level():
    _, table = _in_table(2)
    a = oracle.ExtensionalCongruence(table, [0, 1, 2, 3, 4, 5, 6])
    b = oracle.ExtensionalCongruence(table, [6, 5, 4, 3, 2, 1, 0])
    assert a == b and hash(a) == hash(b) and a.dump() == b.dump()


def test_oracle_bound_env_override(monkeypatch):
    monkeypatch.delenv("PAMCONG_MAX_ORACLE", raising=False)
    assert oracle.oracle_bound() == 250
    monkeypatch.setenv("PAMCONG_MAX_ORACLE", "500")
    assert oracle.oracle_bound() == 500
    big = WreathMonoid(make_group("C2"), 4)
    table_cls = oracle.FiniteSemigroupTable
    monkeypatch.setenv("PAMCONG_MAX_ORACLE", "250")
    with pytest.raises(SizeBoundError):
        table_cls.from_monoid(big).all_congruences()


def test_chain_count_examples():
    assert all(oracle.chain_count(1, k) == 1 for k in range(13))
    assert oracle.chain_count(2, 3) == 4
    assert oracle.chain_count(3, 2) == 6


def test_chain_count_formula_equals_enumeration():
    for c in range(1, 6):
        for k in range(13):
            assert oracle.chain_count(c, k) == oracle.chain_count_enumerated(c, k)


def test_growth_report_shapes_and_windows():
    rep = oracle.growth_experiment("trivial", 10)
    assert rep.chief_length == 0 and rep.cong_window is None
    assert rep.cong_counts[:4] == (2, 4, 7, 11)
    assert abs(rep.cong_slope - 1.0) < 0.15  # I_n congruence growth is linear

    rep2 = oracle.growth_experiment("C2", 5)
    assert rep2.cong_counts == (3, 11, 33, 70, 135)
    assert rep2.is_counts == (2, 4, 8, 13, 20)
    assert rep2.cong_window == (1.0, 1.0) and rep2.is_window == (0.0, 0.0)
    assert isinstance(rep2.cong_slope_ok, bool)

    # serializations carry the same numbers
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,congruences,idempotent_separating"
    assert lines[1] == "1,2,1" and lines[4] == "4,11,1"
    text = rep2.to_text()
    assert "chief length 1" in text and "fitted slope" in text
    import json
    doc = json.loads(rep2.to_json())
    assert doc["congruences"] == [3, 11, 33, 70, 135]


def test_growth_report_rejects_decreasing_counts():
    rep = oracle.growth_experiment("C2", 3)
    with pytest.raises(ValidationError):
        oracle.GrowthReport(
            group_name="X", chief_length=1, ns=(1, 2, 3),
            cong_counts=(5, 4, 6), is_counts=(1, 1, 1),
            cong_slope=0.0, is_slope=0.0, cong_window=None, is_window=None,
            cong_slope_ok=None, is_slope_ok=None)
    assert rep.cong_counts == (3, 11, 33)
