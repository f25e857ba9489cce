"""Exit codes, report shapes, and determinism of the command-line front end."""

import io
import json

import pytest

from freemonoid import cli, engine


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


# --- compute: happy paths ---

def test_compute_finset_one_letter(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a"])
    code, out, _ = run(capsys, "compute", "--backend", "finset",
                       "--input", inp, "--stages", "4", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    block = rep["chains"]["reflexive"]
    assert block["sizes"] == [1, 2, 3, 4, 5]
    assert block["stabilized_at"] is None
    assert rep["oracle"]["agrees"] is True
    assert rep["oracle"]["expected_sizes"] == [1, 2, 3, 4, 5]


def test_compute_span_chain_graph(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json",
                     {"vertices": ["a", "b", "c"],
                      "edges": [["e", "a", "b"], ["f", "b", "c"]]})
    code, out, _ = run(capsys, "compute", "--backend", "span",
                       "--input", inp, "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    block = rep["chains"]["reflexive"]
    assert block["stabilized_at"] == 2
    assert len(block["stable_labels"]) == 6
    assert rep["oracle"]["expected_stabilized_at"] == 2


def test_compute_fingrp_by_name(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "s3")
    code, out, _ = run(capsys, "compute", "--backend", "fingrp",
                       "--input", inp, "--stages", "4", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["oracle"]["expected_order"] == 2
    assert rep["chains"]["reflexive"]["stable_labels"] == ["0", "1"]


def test_compute_fingrp_table_payload(capsys, tmp_path):
    inp = write_json(tmp_path, "t.json", {"table": [[0, 1], [1, 0]]})
    code, out, _ = run(capsys, "compute", "--backend", "fingrp",
                       "--input", inp, "--emit", "json")
    assert code == 0
    assert json.loads(out)["input"] == {"group": "table", "order": 2}


def test_compute_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO('["a","b"]'))
    code, out, _ = run(capsys, "compute", "--backend", "finset",
                       "--input", "-", "--stages", "2", "--emit", "json")
    assert code == 0
    assert json.loads(out)["chains"]["reflexive"]["sizes"] == [1, 3, 7]


def test_compute_text_report(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a"])
    code, out, _ = run(capsys, "compute", "--input", inp,
                       "--checks", "laws", "--stages", "3")
    assert code == 0
    assert "overall: PASS" in out
    assert "check laws: ok" in out
    assert "elapsed:" in out


def test_compute_modes_agree(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a", "b"])
    code, out, _ = run(capsys, "compute", "--input", inp, "--stages", "3",
                       "--mode", "both", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["modes_agree"] is True
    assert rep["chains"]["reflexive"] == rep["chains"]["dubuc"]


def test_compute_checks_run(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a"])
    code, out, _ = run(capsys, "compute", "--input", inp, "--stages", "3",
                       "--checks", "laws,universal,alg-free", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    assert set(rep["checks"]) == {"laws", "universal", "alg-free"}
    assert all(b["ok"] for b in rep["checks"].values())


def test_compute_parallel_pool(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a", "b"])
    code, out, _ = run(capsys, "compute", "--input", inp, "--stages", "3",
                       "--parallel", "4", "--emit", "json")
    assert code == 0
    assert json.loads(out)["chains"]["reflexive"]["sizes"] == [1, 3, 7, 15]


def test_json_report_is_byte_identical(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json",
                     {"vertices": ["a", "b"], "edges": [["e", "a", "b"]]})
    argv = ("compute", "--backend", "span", "--input", inp,
            "--checks", "laws,universal", "--seed", "9", "--emit", "json")
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


# --- emit dot ---

def test_dot_emits_digraph_for_span(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json",
                     {"vertices": ["a", "b", "c"],
                      "edges": [["e", "a", "b"], ["f", "b", "c"]]})
    code, out, _ = run(capsys, "compute", "--backend", "span",
                       "--input", inp, "--emit", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 6
    assert '"a" -> "c" [label="(e,f)"];' in out


def test_dot_falls_back_to_table_elsewhere(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "z2")
    code, out, _ = run(capsys, "compute", "--backend", "fingrp",
                       "--input", inp, "--emit", "dot")
    assert code == 0
    assert "digraph" not in out
    assert "# stage 1 object (2 elements)" in out
    assert "# multiplication" in out


# --- env overrides ---

def test_env_override_and_flag_precedence(capsys, tmp_path, monkeypatch):
    inp = write_json(tmp_path, "x.json", ["a"])
    monkeypatch.setenv("FREEMONOID_STAGES", "2")
    code, out, _ = run(capsys, "compute", "--input", inp, "--emit", "json")
    assert code == 0
    assert json.loads(out)["config"]["stages"] == 2
    code, out, _ = run(capsys, "compute", "--input", inp, "--emit", "json",
                       "--stages", "3")
    assert json.loads(out)["config"]["stages"] == 3


def test_env_bad_value_is_usage_error(capsys, tmp_path, monkeypatch):
    inp = write_json(tmp_path, "x.json", ["a"])
    monkeypatch.setenv("FREEMONOID_STAGES", "soon")
    code, _, err = run(capsys, "compute", "--input", inp)
    assert code == 2
    assert "FREEMONOID_STAGES" in err


# --- usage errors (exit 2) ---

def test_missing_input(capsys):
    code, _, err = run(capsys, "compute")
    assert code == 2
    assert "--input" in err


def test_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    code, _, err = run(capsys, "compute", "--input", str(p))
    assert code == 2
    assert "not valid JSON" in err


def test_wrong_payload_shape(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", {"letters": ["a"]})
    assert run(capsys, "compute", "--input", inp)[0] == 2
    inp2 = write_json(tmp_path, "y.json", ["a"])
    assert run(capsys, "compute", "--backend", "span", "--input", inp2)[0] == 2


def test_stages_must_be_positive(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a"])
    code, _, err = run(capsys, "compute", "--input", inp, "--stages", "0")
    assert code == 2
    assert "at least 1" in err


def test_unknown_check_name(capsys, tmp_path):
    inp = write_json(tmp_path, "x.json", ["a"])
    code, _, err = run(capsys, "compute", "--input", inp, "--checks", "vibes")
    assert code == 2
    assert "unknown check" in err


def test_unknown_group_name(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "e8")
    code, _, err = run(capsys, "compute", "--backend", "fingrp", "--input", inp)
    assert code == 2


def test_check_lemmas_rejects_dot(capsys):
    code, _, err = run(capsys, "check-lemmas", "--emit", "dot", "--count", "1")
    assert code == 2


# --- capability refusals (exit 3) ---

def test_dubuc_fingrp_refused(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "s3")
    code, _, err = run(capsys, "compute", "--backend", "fingrp",
                       "--input", inp, "--mode", "dubuc")
    assert code == 3
    assert "preserve plain coequalizers" in err


def test_group_order_bound(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "s4")
    code, _, err = run(capsys, "compute", "--backend", "fingrp", "--input", inp)
    assert code == 3
    assert "exceeds bound" in err
    code, _, _ = run(capsys, "compute", "--backend", "fingrp", "--input", inp,
                     "--max-order", "24")
    assert code == 0


def test_fingrp_lemma_suites_refused(capsys, tmp_path):
    inp = write_json(tmp_path, "g.json", "z2")
    code, _, err = run(capsys, "compute", "--backend", "fingrp",
                       "--input", inp, "--checks", "lemmas")
    assert code == 3
    assert "coproducts" in err
    assert run(capsys, "check-lemmas", "--backend", "fingrp", "--count", "1")[0] == 3


# --- check failures (exit 1) ---

def test_failing_check_exits_one(capsys, tmp_path, monkeypatch):
    inp = write_json(tmp_path, "x.json", ["a"])

    def broken_laws(trunc):
        rep = engine.LawReport()
        rep.note(False, "assoc (1,1,1)")
        return rep

    monkeypatch.setattr(engine, "monoid_laws", broken_laws)
    code, out, _ = run(capsys, "compute", "--input", inp, "--checks", "laws")
    assert code == 1
    assert "overall: FAIL" in out


# --- check-lemmas subcommand ---

def test_check_lemmas_all_backends(capsys):
    code, out, _ = run(capsys, "check-lemmas", "--count", "4", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    names = [s["name"] for s in rep["suites"]]
    assert len(names) == 4  # three cartesian suites + one anchored
    assert any("span" in n for n in names)
    assert rep["ok"] is True


def test_check_lemmas_single_backend_text(capsys):
    code, out, _ = run(capsys, "check-lemmas", "--backend", "span",
                       "--count", "3")
    assert code == 0
    assert "overall: PASS" in out
