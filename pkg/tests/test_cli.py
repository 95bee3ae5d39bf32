import json
import subprocess
import sys

import pytest

from sullivan_lab.cli import run_command
from sullivan_lab.documents import (
    DocumentError, corpus_entry, corpus_ids, parse_algebra_document, parse_algebra_file, serialize,
)


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_b4(capsys):
    code, out, _ = run(capsys, "cohomology", "corpus:b4", "--degrees", "0..4")
    assert code == 0
    assert "betti: 1 2 2 2 1" in out


def test_massey_m7(capsys):
    code, out, _ = run(capsys, "massey", "corpus:m7", "--classes", "a,a,b")
    assert code == 0
    assert "verdict: nonzero_certified" in out


def test_gysin_s2cubed(capsys):
    code, out, _ = run(capsys, "gysin", "corpus:s2cubed", "--fiber", "1", "--euler", "a1+a2+a3", "--degree", "4")
    assert code == 0
    assert out.strip().endswith("Z_2")


def test_formality_exit_codes(capsys):
    assert run(capsys, "formality", "corpus:m7", "--s", "3")[0] == 1
    assert run(capsys, "formality", "corpus:m5", "--s", "2", "--cap", "5")[0] == 0
    assert run(capsys, "formality", "corpus:m5", "--dim", "5")[0] == 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "cohomology", "corpus:nosuch")[0] == 2
    assert run(capsys, "cohomology", "corpus:b4", "--degrees", "4..1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "kind": "free_dga", "cap": 3,\n "generators": [["a", 1]],\n'
                   ' "differential": {"a": "q"}}\n')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "'q'" in err and "line 3" in err


def test_massey_not_defined_exit(capsys):
    code, out, _ = run(capsys, "massey", "corpus:b4", "--classes", "gamma,mu,mu")
    assert code == 1


def test_lefschetz_and_report(capsys):
    assert run(capsys, "lefschetz", "corpus:s2xs2")[0] == 0
    assert run(capsys, "report", "--betti", "1,1,0,0,1,1")[0] == 1
    code, out, _ = run(capsys, "report", "corpus:m7", "--dim", "7")
    assert code == 0 and "verdict: no obstruction found" in out


def test_json_output_sorted(capsys):
    code, out, _ = run(capsys, "massey", "corpus:m7", "--classes", "a,a,b", "--json")
    data = json.loads(out)
    assert data["verdict"] == "nonzero_certified"
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"


def test_corpus_check(capsys):
    code, out, _ = run(capsys, "corpus", "check")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_corpus_provenance_tags():
    for cid in corpus_ids():
        for item in corpus_entry(cid).expected:
            assert item["provenance"] in ("published", "derived", "trivial")


@pytest.mark.parametrize("cid", corpus_ids())
def test_round_trip(cid):
    doc = corpus_entry(cid).document
    text = serialize(doc)
    again = parse_algebra_document(text)
    assert serialize(again) == text
    assert serialize(parse_algebra_document(serialize(again))) == text


def test_parse_examples():
    doc = parse_algebra_file("corpus:heisenberg3")
    D = doc.build()
    assert [g.degree for g in D.algebra.generators] == [1, 1, 1]
    assert str(D.diff["gamma"]) == "-alpha*beta"
    D = parse_algebra_file("corpus:m7").build()
    assert len(D.algebra.generators) == 5
    assert str(D.diff["z"]) == "2*a*b"


def test_undeclared_generator_named():
    text = '{"version": 1, "kind": "free_dga", "cap": 4, "generators": [["a", 2]], "differential": {"b": "a"}}'
    with pytest.raises(DocumentError, match="'b'"):
        parse_algebra_document(text)


def test_syntax_error_position():
    with pytest.raises(DocumentError) as exc:
        parse_algebra_document('{"version": 1,\n "kind": }')
    assert exc.value.line == 2


def test_deterministic_across_threads():
    def go(threads):
        env = {"SULLIVAN_LAB_THREADS": str(threads), "PATH": ""}
        return subprocess.run([sys.executable, "-m", "sullivan_lab.cli", "cohomology", "corpus:m7",
                               "--degrees", "0..7", "--json"], capture_output=True, env=env).stdout
    one = go(1)
    assert one and one == go(4) == go(1)


def test_bad_thread_setting(monkeypatch, capsys):
    monkeypatch.setenv("SULLIVAN_LAB_THREADS", "zero")
    assert run(capsys, "cohomology", "corpus:b4")[0] == 2
