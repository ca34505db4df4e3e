import json
import subprocess
import sys

import pytest

from protoalg.cli import main
from protoalg.fixtures import (choice, echo, echo_const0, fixture_path, parity, parity_pred,
                               parity_renamed, parity_unused_symbol)
from protoalg.io import read_definition, serialize_definition, write_definition
from protoalg.model import Interpretation, replace


@pytest.fixture
def files(tmp_path):
    made = {}
    for name, make in {"parity": parity, "choice": choice, "echo": echo,
                       "renamed": parity_renamed, "pred": parity_pred,
                       "unused": parity_unused_symbol, "const0": echo_const0}.items():
        path = tmp_path / f"{name}.pad"
        write_definition(make(), path)
        made[name] = str(path)
    return made


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate(capsys, files, tmp_path):
    code, doc = run(capsys, "validate", fixture_path("parity"))
    assert code == 0 and doc["verdict"] == "valid"
    pa = parity()
    i = pa.interpretation
    bad = replace(pa, interpretation=Interpretation(
        i.domain + (9,), i.input_domain, i.output_domain,
        dict(i.functions, fin={**i.functions["fin"], 9: "odd"})))
    write_definition(bad, tmp_path / "bad.pad")
    code, doc = run(capsys, "validate", tmp_path / "bad.pad")
    assert code == 1 and doc["verdict"] == "invalid"
    assert [v["rule"] for v in doc["violations"]] == ["interpretation.minimality"]
    code, doc = run(capsys, "validate", tmp_path / "missing.pad")
    assert code == 2 and "cannot read" in doc["error"]


def test_validate_reports_parse_errors(capsys, tmp_path):
    (tmp_path / "junk.pad").write_text("{ nope", encoding="utf-8")
    code, doc = run(capsys, "validate", tmp_path / "junk.pad")
    assert code == 2 and "malformed JSON" in doc["error"] and "line 1" in doc["error"]


def test_run_examples(capsys, files):
    code, doc = run(capsys, "run", files["parity"], "--input", "3")
    assert code == 0
    (r,) = doc["runs"]
    assert r["status"] == "complete" and r["output"] == "odd"

    code, doc = run(capsys, "run", files["choice"], "--input", "2")
    assert code == 0 and sorted(r["output"] for r in doc["runs"]) == [3, 4]

    code, doc = run(capsys, "run", files["echo"], "--input", "1", "0")
    assert code == 0
    (r,) = doc["runs"]
    assert r["inputs"] == [1, 0] and r["outputs"] == [1, 0]


def test_run_errors(capsys, files):
    code, doc = run(capsys, "run", files["parity"], "--input", "7")
    assert code == 2 and "not in the input domain" in doc["error"]
    code, _ = run(capsys, "run", files["parity"], "--input", "1", "2")
    assert code == 2
    code, _ = run(capsys, "run", files["parity"], "--input", "1", "--depth", "0")
    assert code == 2


def test_run_computational_mode(capsys, files):
    code, doc = run(capsys, "run", files["pred"], "--input", "1", "--mode", "computational")
    assert code == 0 and doc["runs"][0]["length"] == 3


def test_relation_examples(capsys, files):
    code, doc = run(capsys, "relation", files["parity"])
    assert code == 0 and doc["count"] == 4
    code, doc = run(capsys, "relation", files["choice"])
    assert [2, 3] in doc["pairs"] and [2, 4] in doc["pairs"]
    code, doc = run(capsys, "relation", files["echo"], "--max-stream-len", "3")
    assert doc["count"] == 7 and all(x == y for x, y in doc["pairs"])


@pytest.mark.parametrize("kind,a,b,expected", [
    ("iso", "parity", "renamed", 0),
    ("aeqv", "parity", "pred", 1),
    ("ceqv", "parity", "pred", 0),
    ("aeqv", "parity", "unused", 0),
    ("iso", "parity", "unused", 1),
    ("asim", "echo", "const0", 1),
    ("asim", "const0", "echo", 0),
    ("csim", "parity", "pred", 0),
])
def test_check_examples(capsys, files, tmp_path, kind, a, b, expected):
    out = tmp_path / "w.paw"
    code, doc = run(capsys, "check", "--kind", kind, files[a], files[b], "--emit-witness", out)
    assert code == expected and doc["holds"] == (expected == 0)
    if expected == 0:
        assert json.loads(out.read_text(encoding="utf-8")) == doc["witness"]
        code, doc = run(capsys, "verify-witness", files[a], files[b], out)
        assert code == 0 and doc == {"valid": True, "problems": []}
    else:
        assert doc["witness"] is None and not out.exists()


def test_check_rejects_mixed_kinds(capsys, files):
    code, doc = run(capsys, "check", "--kind", "aeqv", files["parity"], files["echo"])
    assert code == 2 and "cannot compare" in doc["error"]


def test_tampered_witness_is_rejected(capsys, files, tmp_path):
    out = tmp_path / "w.paw"
    run(capsys, "check", "--kind", "iso", files["parity"], files["renamed"], "--emit-witness", out)
    w = json.loads(out.read_text(encoding="utf-8"))
    w["vertices"] = [[x, y] for (x, _), (_, y) in zip(w["vertices"], reversed(w["vertices"]))]
    out.write_text(json.dumps(w), encoding="utf-8")
    code, doc = run(capsys, "verify-witness", files["parity"], files["renamed"], out)
    assert code == 1 and doc["problems"]


def test_embed(capsys, files, tmp_path):
    out = tmp_path / "parity_i.pad"
    code, doc = run(capsys, "embed", files["parity"], "--out", out)
    assert code == 0 and doc["ok"] and doc["triviality"] == "trivial"
    assert len(doc["singleton_pairs"]) == 4
    ia = read_definition(out)
    assert ia.interactive and ia.graph == parity().graph
    code, _ = run(capsys, "validate", out)
    assert code == 0


def test_embed_errors(capsys, files, tmp_path):
    code, _ = run(capsys, "embed", files["echo"], "--out", tmp_path / "x.pad")
    assert code == 2
    in_table = tmp_path / "in.json"
    out_table = tmp_path / "out.json"
    in_table.write_text(json.dumps({str(d): {str(x): d for x in range(4)} for d in range(4)}))
    out_table.write_text(json.dumps({"0": "even"}))
    code, doc = run(capsys, "embed", files["parity"], "--out", tmp_path / "x.pad",
                    "--in-table", in_table, "--out-table", out_table)
    assert code == 1 and not doc["ok"] and doc["problems"]
    code, _ = run(capsys, "embed", files["parity"], "--out", tmp_path / "x.pad",
                  "--in-table", in_table)
    assert code == 2


def test_embed_with_explicit_tables(capsys, files, tmp_path):
    in_table = tmp_path / "in.json"
    out_table = tmp_path / "out.json"
    in_table.write_text(json.dumps({str(d): {str(x): x for x in range(4)} for d in range(4)}))
    out_table.write_text(json.dumps({str(d): "even" for d in range(4)}))
    code, doc = run(capsys, "embed", files["parity"], "--out", tmp_path / "x.pad",
                    "--in-table", in_table, "--out-table", out_table)
    assert code == 0 and doc["ok"]


def test_invalid_models_are_usage_errors_outside_validate(capsys, files, tmp_path):
    pa = parity()
    i = pa.interpretation
    fin = dict(i.functions["fin"])
    del fin[3]
    path = tmp_path / "partial.pad"
    write_definition(replace(pa, interpretation=Interpretation(
        i.domain, i.input_domain, i.output_domain, dict(i.functions, fin=fin))), path)
    for argv in (("relation", path), ("run", path, "--input", "1"),
                 ("check", "--kind", "iso", path, files["parity"])):
        code, doc = run(capsys, *argv)
        assert code == 2 and "interpretation.tables" in doc["error"]


def test_output_is_byte_stable(capsys, files):
    outputs = []
    for _ in range(2):
        main(["check", "--kind", "ceqv", files["parity"], files["pred"]])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_entry_point_runs_as_a_module(files):
    proc = subprocess.run([sys.executable, "-m", "protoalg.cli", "relation", files["parity"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 4
    assert proc.stderr.strip() == "4 pair(s)"
    assert serialize_definition(parity()) == fixture_path("parity").read_text(encoding="utf-8")
