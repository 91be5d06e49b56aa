import json

import pytest

from rdsforge.cli import main
from rdsforge.field import make_field
from rdsforge.functions import family_special


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_paper_linear_gf8(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "3", "--family", "paper-linear", "--a", "1",
                       "--checks", "two-to-one,apn,rds", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert rep["verdicts"] == {"two_to_one": True, "apn": False, "rds": True}
    assert rep["rds"]["forbidden"] == [0, 1]
    assert [rep["rds"][k] for k in ("m", "n", "k", "lambda")] == [4, 2, 4, 2]


def test_analyze_gold(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "5", "--family", "gold", "--i", "1",
                       "--checks", "apn", "--json")
    assert code == 0 and json.loads(out)["verdicts"] == {"apn": True}


def test_analyze_hex_parameters(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "5", "--family", "paper-cubic", "--a", "0x1f",
                       "--json")
    assert code == 0
    assert all(json.loads(out)["verdicts"].values())


def test_analyze_even_n_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "--n", "4", "--family", "paper-linear", "--a", "1")
    assert code == 2 and "family requires odd n" in err


def test_analyze_bad_kgamma(capsys):
    code, _, err = run(capsys, "analyze", "--n", "3", "--family", "kgamma", "--alpha", "1",
                       "--beta", "1", "--gamma", "2")
    assert code == 2 and "gamma" in err


def test_analyze_large_apn_needs_flag(capsys):
    code, _, err = run(capsys, "analyze", "--n", "17", "--family", "gold", "--i", "1",
                       "--checks", "apn")
    assert code == 2 and "--allow-large" in err


@pytest.mark.parametrize("family,extra", [
    ("paper-cubic", ["--a", "3"]),
    ("x3x4", []),
    ("kgamma", ["--alpha", "1", "--beta", "1", "--gamma", "1"]),
])
def test_human_and_json_verdicts_agree(capsys, family, extra):
    base = ["analyze", "--n", "5" if family != "kgamma" else "3", "--family", family, *extra]
    _, js, _ = run(capsys, *base, "--json")
    _, human, _ = run(capsys, *base)
    rows = dict(line.split() for line in human.splitlines() if line.split()[-1:] in (["yes"], ["no"]))
    verdicts = json.loads(js)["verdicts"]
    assert {k: v == "yes" for k, v in rows.items()} == verdicts


def test_analyze_table_file_and_out(capsys, tmp_path):
    table = tmp_path / "f.json"
    family_special(make_field(5)).save(table)
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", "--table", str(table), "--json", "--spectrum",
                       "--out", str(dest))
    assert code == 0 and out == ""
    rep = json.loads(dest.read_text())
    assert rep["verdicts"] == {"two_to_one": True, "apn": True, "rds": True, "bent": True}
    assert rep["diff_spectrum"]["max_delta"] == 2


def test_analyze_missing_function(capsys):
    code, _, _ = run(capsys, "analyze", "--n", "3")
    assert code == 2


def test_verify_paper_range(capsys):
    assert run(capsys, "verify-paper", "--n-max", "2")[0] == 2
    code, out, _ = run(capsys, "verify-paper", "--n-max", "3")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out
    code, out, _ = run(capsys, "verify-paper", "--n-max", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and all(r["n"] == 3 for r in rep["results"])


def test_sweep_cli_x3x4_and_resume(capsys, tmp_path):
    out = tmp_path / "x.jsonl"
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"family": "x3x4", "n_values": [3, 5, 7, 9, 11],
                               "checks": ["rds"], "output": str(out)}))
    code, stdout, err = run(capsys, "sweep", "--job", str(job), "--jobs", "2")
    assert code == 0 and stdout == "" and "5 records" in err
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert {r["n"]: r["verdicts"]["rds"] for r in recs} == \
        {3: True, 5: False, 7: False, 9: False, 11: False}
    before = out.read_bytes()
    assert run(capsys, "sweep", "--job", str(job), "--resume")[0] == 0
    assert out.read_bytes() == before


def test_sweep_cli_errors(capsys, tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"family": "x3x4", "n_values": [4], "output": "x.jsonl"}))
    assert run(capsys, "sweep", "--job", str(job))[0] == 2
    assert run(capsys, "sweep", "--job", str(tmp_path / "missing.json"))[0] == 2
    job.write_text("{not json")
    assert run(capsys, "sweep", "--job", str(job))[0] == 2
