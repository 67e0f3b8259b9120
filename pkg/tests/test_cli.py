import json

import pytest

from exacthom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_presets_listing(capsys):
    code, out = run(capsys, "presets")
    assert code == 0
    names = [p["name"] for p in json.loads(out)["presets"]]
    assert "dual-numbers" in names and "trunc3" in names


def test_compute_harrison_table(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--theory", "harrison",
                    "--max-degree", "4", "--max-weight", "4")
    assert code == 0
    report = json.loads(out)
    table = {(r["n"], r["w"]): r["dim"] for r in report["tables"]}
    assert table[(1, 1)] == 1
    assert all(c["status"] == "pass" for c in report["certifications"])


def test_compute_gamma_weight_zero_empty(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--theory", "gamma", "--max-degree", "3",
                    "--max-weight", "0")
    assert code == 0
    report = json.loads(out)
    assert all(r["dim"] == 0 for r in report["tables"] if r["n"] > 0)


def test_compute_deterministic_bytes(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = main(["compute", "--preset", "trunc3", "--theory", "symmetric",
                     "--max-degree", "2", "--max-weight", "2",
                     "--output", str(p)])
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_compute_csv_format(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--theory", "hochschild", "--max-degree", "2",
                    "--max-weight", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theory,variant,n,w,dim"
    assert len(lines) == 1 + 9


def test_compute_timings_flag(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--theory", "hochschild", "--max-degree", "1",
                    "--max-weight", "1", "--timings")
    assert code == 0
    assert "timings" in json.loads(out)


def test_compute_basis_ceiling_guard(capsys):
    code = main(["compute", "--preset", "trunc3", "--theory", "symmetric",
                 "--max-degree", "3", "--max-weight", "3",
                 "--max-basis", "10"])
    assert code == 2


def test_compute_field_override(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--field", "Fp:7", "--theory", "harrison",
                    "--max-degree", "2", "--max-weight", "2")
    assert code == 0
    assert json.loads(out)["config"]["field"] == "F7"


def test_verify_eulerian(capsys):
    code, out = run(capsys, "verify", "--suite", "eulerian", "--max-n", "4")
    assert code == 0
    report = json.loads(out)
    assert all(c["status"] == "pass" for c in report["certifications"])


def test_verify_pruning_small(capsys):
    code, out = run(capsys, "verify", "--suite", "pruning",
                    "--preset", "trunc3",
                    "--max-degree", "2", "--max-weight", "2")
    assert code == 0


def test_verify_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nonsense"])


def test_validate_good_and_bad(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({
        "name": "z2", "field": "Q",
        "generators": [{"symbol": "z", "weight": 2}],
        "products": [],
    }))
    code, out = run(capsys, "validate", "--algebra-file", str(good))
    assert code == 0 and json.loads(out)["valid"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "broken", "field": "Q",
        "generators": [{"symbol": "x", "weight": 1}],
        "products": [{"left": "x", "right": "x", "result": {"1": "1"}}],
    }))
    code, out = run(capsys, "validate", "--algebra-file", str(bad))
    assert code == 1
    assert json.loads(out)["violations"]


def test_compute_rejects_bad_algebra_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "broken", "field": "Q",
        "generators": [{"symbol": "x", "weight": 1}],
        "products": [{"left": "x", "right": "x", "result": {"1": "1"}}],
    }))
    code = main(["compute", "--algebra-file", str(bad),
                 "--theory", "harrison"])
    assert code == 2


def test_compute_comparison_rows(capsys):
    code, out = run(capsys, "compute", "--preset", "dual-numbers",
                    "--theory", "comparison", "--max-degree", "1",
                    "--max-weight", "1")
    assert code == 0
    report = json.loads(out)
    theories = {r["theory"] for r in report["tables"]}
    assert theories == {"comparison/kernel", "comparison/symmetric",
                        "comparison/gamma"}
    assert all(c["status"] == "pass" for c in report["certifications"])


def test_jobs_parallel_matches_sequential(tmp_path):
    seq = tmp_path / "seq.json"
    par = tmp_path / "par.json"
    base = ["compute", "--preset", "dual-numbers", "--theory", "hochschild",
            "--max-degree", "2", "--max-weight", "2"]
    assert main(base + ["--output", str(seq)]) == 0
    assert main(base + ["--jobs", "2", "--output", str(par)]) == 0
    a = json.loads(seq.read_text())
    b = json.loads(par.read_text())
    assert a["tables"] == b["tables"]
