"""Command line: exit codes, output formats, verification plumbing."""

import json
import subprocess
import sys

from pamcong import cli
from pamcong import congruence as cg
from pamcong import invariant as inv
from pamcong import wreath_normal as wn


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- exit code 0: the documented outputs --------------------------------------------


def test_group_summary(capsys):
    code, out, err = run(capsys, "group", "S3")
    assert code == 0 and err == ""
    assert out == "S3: order 6, 3 normal subgroups, chief length 2\n"


def test_group_json(capsys):
    code, out, _ = run(capsys, "group", "S3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "S3" and doc["order"] == 6
    assert len(doc["table"]) == 6


def test_inv_subgroups_listing_and_verify(capsys):
    code, out, err = run(capsys, "inv-subgroups", "C2", "3", "--verify")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "4 invariant normal subgroups of C2^3"
    orders = sorted(int(l.split()[1].rstrip(":")) for l in lines[1:-1])
    assert orders == [1, 2, 4, 8]  # trivial, diagonal, even-weight, full
    assert lines[-1] == "verified against brute force (4 subgroups)"


def test_wreath_normal_verify(capsys):
    code, out, err = run(capsys, "wreath-normal", "C2", "2", "--verify")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "6 normal subgroups of C2 wr S_2"
    assert lines[-1] == "verified against brute force (6 subgroups)"


def test_congruence_counts(capsys):
    code, out, err = run(capsys, "congruences", "C2", "9")
    assert code == 0 and err == ""
    assert out == "699 congruences of C2 wr I_9 (62 idempotent-separating)\n"
    code, out, _ = run(capsys, "congruences", "C2", "9", "--idempotent-separating")
    assert code == 0
    assert out == "62 idempotent-separating congruences of C2 wr I_9\n"


def test_congruence_verify(capsys):
    code, out, err = run(capsys, "congruences", "trivial", "2", "--verify")
    assert code == 0 and err == ""
    assert out.splitlines() == [
        "4 congruences of trivial wr I_2 (1 idempotent-separating)",
        "verified: classification matches the oracle (4 congruences)",
    ]
    code, out, _ = run(capsys, "congruences", "C2", "2", "--verify",
                       "--idempotent-separating")
    assert code == 0
    assert out.splitlines()[-1] == \
        "verified: classification matches the oracle (4 congruences)"


def test_lattice_file(capsys, tmp_path):
    target = tmp_path / "c2.dot"
    code, out, _ = run(capsys, "congruences", "C2", "2", "--lattice", str(target))
    assert code == 0
    assert out.splitlines()[-1] == f"lattice with 11 nodes written to {target}"
    text = target.read_text()
    assert text.startswith("digraph")
    assert sum(1 for line in text.splitlines() if " -> " in line) == 14


def test_growth_formats(capsys):
    code, out, _ = run(capsys, "growth", "C2", "3", "--format", "csv")
    assert code == 0
    assert out == "n,congruences,idempotent_separating\n1,3,2\n2,11,4\n3,33,8\n"
    code, out, _ = run(capsys, "growth", "C2", "3")
    assert code == 0
    assert "group C2: chief length 1" in out
    assert "fitted slope" in out
    code, out, _ = run(capsys, "growth", "trivial", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["congruences"] == [2, 4, 7, 11]


def test_mult(capsys):
    code, out, err = run(capsys, "mult", "(1,- ; [2,-])", "(-,1 ; [-,1])",
                         "--group", "C2")
    assert code == 0 and err == ""
    assert out == "(0,- ; [1,-])\n"
    code, out, _ = run(capsys, "mult", "(0,1 ; [1,2])", "(1,0 ; [2,1])",
                       "--group", "C2")
    assert code == 0
    assert out == "(1,1 ; [2,1])\n"


def test_output_is_deterministic(capsys):
    for argv in (["group", "S3", "--json"],
                 ["growth", "C2", "4", "--format", "csv"],
                 ["congruences", "C2", "2", "--verify"],
                 ["inv-subgroups", "C3", "2"]):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


# -- exit code 1: usage -------------------------------------------------------------


def test_usage_errors(capsys):
    code, _, err = run(capsys, "group", "badtoken")
    assert code == 1 and "pamcong: error:" in err
    code, _, err = run(capsys, "growth", "C2", "0")
    assert code == 1 and "must be >= 1" in err
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
    code, _, err = run(capsys)
    assert code == 1


# -- exit code 2: validation --------------------------------------------------------


def test_validation_errors(capsys):
    code, _, err = run(capsys, "mult", "(0,1 ; [1,2", "(0,1 ; [1,2])",
                       "--group", "C2")
    assert code == 2 and err.startswith("validation error:")
    # degree mismatch between the two literals
    code, _, err = run(capsys, "mult", "(1,- ; [2,-])", "(0 ; [1])",
                       "--group", "C2")
    assert code == 2
    # label outside the group
    code, _, err = run(capsys, "mult", "(1,- ; [2,-])", "(-,1 ; [-,1])",
                       "--group", "trivial")
    assert code == 2


# -- exit code 3: verification mismatches -------------------------------------------


def test_wreath_normal_internal_disagreement(capsys, monkeypatch):
    monkeypatch.setattr(wn, "count_normal_descriptors", lambda G, m: 99)
    code, _, err = run(capsys, "wreath-normal", "C2", "2")
    assert code == 3 and "internal disagreement" in err


def test_inv_subgroups_mismatch(capsys, monkeypatch):
    real = inv.enumerate_invariant_normal

    def broken(G, m):
        return real(G, m)[:-1]

    monkeypatch.setattr(inv, "enumerate_invariant_normal", broken)
    code, _, err = run(capsys, "inv-subgroups", "C2", "2", "--verify")
    assert code == 3 and "missing from the classification" in err


def test_congruence_mismatch(capsys, monkeypatch):
    real = cg.enumerate_all

    def broken(M, n=None):
        return real(M, n)[:-1]

    monkeypatch.setattr(cg, "enumerate_all", broken)
    code, _, err = run(capsys, "congruences", "trivial", "2", "--verify")
    assert code == 3 and "mismatch" in err


# -- exit code 4: size bounds -------------------------------------------------------


def test_bound_refusals(capsys):
    code, _, err = run(capsys, "congruences", "C2", "4", "--verify")
    assert code == 4
    assert "raise PAMCONG_MAX_ORACLE to override" in err
    code, _, err = run(capsys, "inv-subgroups", "S3", "6", "--verify")
    assert code == 4 and "--verify refused" in err
    code, _, err = run(capsys, "wreath-normal", "C4", "4", "--verify")
    assert code == 4 and "--verify refused" in err


def test_oracle_bound_override(capsys, monkeypatch):
    monkeypatch.setenv("PAMCONG_MAX_ORACLE", "5")
    code, _, err = run(capsys, "congruences", "trivial", "2", "--verify")
    assert code == 4 and "exceeds the oracle bound 5" in err
    monkeypatch.setenv("PAMCONG_MAX_ORACLE", "40")
    code, out, _ = run(capsys, "congruences", "trivial", "3", "--verify")
    assert code == 0
    assert out.splitlines()[-1] == \
        "verified: classification matches the oracle (7 congruences)"


# -- the installed surface ----------------------------------------------------------


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pamcong.cli", "group", "C6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "C6: order 6, 4 normal subgroups, chief length 2\n"
    proc = subprocess.run([sys.executable, "-m", "pamcong.cli", "group", "nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
