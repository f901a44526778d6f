import json

import pytest

from diagcat.cli import (EXIT_CONFIG, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK,
                         main)


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(argv, capsys):
    code, out, err = _run(argv, capsys)
    return code, json.loads(out), err


def test_version_banner(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    out = capsys.readouterr().out
    from diagcat import __version__
    assert __version__ in out


def test_gram_sym_generic(capsys):
    code, doc, _ = _run_json(
        ["gram", "--preset", "sym", "--pq", "2,2"], capsys)
    assert code == EXIT_OK
    assert doc["tool"] == "diagcat"
    assert doc["command"] == "gram"
    report = doc["report"]
    assert report["generic_rank"] == 15
    assert report["spanning"]["kind"] == "partition"
    assert report["spanning"]["size"] == 15
    assert report["probe"]["agree"]
    assert doc["config"]["seed"] == 0


def test_gram_numeric_rank(capsys):
    code, doc, _ = _run_json(
        ["gram", "--preset", "gl", "--pq", "2,2", "--t", "1"], capsys)
    assert code == EXIT_OK
    report = doc["report"]
    assert report["rank"] == 1
    assert report["radical_dim"] == 1


def test_gram_determinism_bytes(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for target in (a, b):
        code, _, _ = _run(["gram", "--preset", "orth", "--pq", "2,2",
                           "--out", str(target)], capsys)
        assert code == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().endswith(b"\n")


def test_gram_csv_golden(capsys):
    code, out, _ = _run(["gram", "--preset", "gl", "--pq", "2,2",
                         "--format", "csv"], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "p,q,spanning_kind,spanning_size,t,rank"
    assert lines[1] == "2,2,generic,2,generic,2"
    # exceptional parameter values follow the generic row
    assert any(line.startswith("2,2,generic,2,0,") for line in lines)


def test_homdims_csv_golden(capsys):
    code, out, _ = _run(["homdims", "--preset", "sym",
                         "--pq-list", "1,1;2,2", "--format", "csv"], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "p,q,dim,saturated,kind,size"
    assert lines[1] == "1,1,2,True,partition,2"
    assert lines[2] == "2,2,15,True,partition,15"


def test_homdims_gl_small(capsys):
    code, doc, _ = _run_json(
        ["homdims", "--preset", "gl", "--pq-list", "1,1;2,2;3,3"], capsys)
    assert code == EXIT_OK
    dims = {(row["p"], row["q"]): row["dim"] for row in
            doc["report"]["dims"]}
    assert dims == {(1, 1): 1, (2, 2): 2, (3, 3): 6}


def test_chareval_gl_loops(capsys):
    code, doc, _ = _run_json(
        ["chareval", "--preset", "gl",
         "--diagram", "boxes: []; wires: []; in: 0; out: 0; loops: 3"],
        capsys)
    assert code == EXIT_OK
    values = doc["report"]["values"]
    assert values[0]["value"] == "t^3"


def test_chareval_dvr_refusal_is_failure(capsys):
    literal = "boxes: [S#0]; wires: [(S#0.out[0], S#0.in[0])]; in: 0; out: 0"
    code, doc, _ = _run_json(
        ["chareval", "--preset", "dvr", "--diagram", literal], capsys)
    assert code == EXIT_FAIL
    assert "error" in doc["report"]["values"][0]


def test_simples_partition_algebra(capsys):
    code, doc, _ = _run_json(
        ["simples", "--preset", "sym", "--t", "7", "--pq", "1,1"], capsys)
    assert code == EXIT_OK
    report = doc["report"]
    assert report["dim"] == 2
    assert report["semisimple"] is True
    assert report["simple_count"] == 2


def test_loyal_finite_series(capsys):
    code, doc, _ = _run_json(["loyal", "--alpha", "0,2,0,0,0,0"], capsys)
    assert code == EXIT_OK
    assert doc["report"]["verdict"] == "loyal"


def test_loyal_not_loyal_exits_fail(capsys):
    code, doc, _ = _run_json(
        ["loyal", "--alpha", "1,2,3,4,5,6,7,8"], capsys)
    assert code == EXIT_FAIL
    assert doc["report"]["verdict"] == "not loyal"


def test_goodness_factorial_witness(tmp_path, capsys):
    alpha = tmp_path / "alpha.txt"
    import math
    alpha.write_text("# factorial genus values\n" + "\n".join(
        str(math.factorial(k)) for k in range(16)) + "\n")
    code, doc, _ = _run_json(
        ["goodness", "--preset", "frobenius", "--alpha-file", str(alpha),
         "--pq-list", "1,1", "--terms", "10", "--samples", "2"], capsys)
    assert code == EXIT_FAIL
    assert doc["report"]["verdict"] == "fail"
    assert doc["report"]["witness"] is not None


def test_goodness_gl_passes(capsys):
    code, doc, _ = _run_json(
        ["goodness", "--preset", "gl", "--t", "5", "--pq-list", "1,1",
         "--terms", "10", "--samples", "2"], capsys)
    assert code == EXIT_OK
    assert doc["report"]["verdict"] == "pass"


def test_gram_dvr_partial_character_fails_with_witness(capsys):
    code, doc, _ = _run_json(
        ["gram", "--preset", "dvr", "--pq", "1,1"], capsys)
    assert code == EXIT_FAIL
    assert doc["report"]["verdict"] == "fail"
    assert "witness" in doc["report"]


def test_presets_listing(capsys):
    code, doc, _ = _run_json(["presets", "list"], capsys)
    assert code == EXIT_OK
    names = [entry["name"] for entry in doc["report"]["presets"]]
    assert names == ["gl", "endo", "orth", "symp", "sym", "frobenius",
                     "wreath", "dvr"]


def test_interpolate_symp(capsys):
    code, doc, _ = _run_json(
        ["interpolate", "--preset", "symp", "--points", "2,4,6",
         "--pq-list", "1,1", "--count", "5"], capsys)
    assert code == EXIT_OK
    assert doc["report"]["verdict"] == "pass"


def test_bad_preset_is_config_error(capsys):
    code, out, err = _run(["gram", "--preset", "zz", "--pq", "1,1"], capsys)
    assert code == EXIT_CONFIG
    assert out == ""
    assert "diagcat" in err


def test_missing_numeric_parameter_is_config_error(capsys):
    code, _, err = _run(["simples", "--preset", "sym", "--pq", "1,1"],
                        capsys)
    assert code == EXIT_CONFIG
    assert "diagcat:" in err


def test_csv_unsupported_command(tmp_path, capsys):
    cfg = tmp_path / "fmt.json"
    cfg.write_text(json.dumps({"fmt": "csv", "preset": "gl", "t": "5"}))
    code, _, err = _run(["goodness", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG
    assert "csv" in err


def test_missing_config_file_is_config_error(capsys):
    code, _, err = _run(["homdims", "--preset", "sym",
                         "--config", "/nonexistent.json"], capsys)
    assert code == EXIT_CONFIG


def test_config_file_merge_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"preset": "sym", "pq_list": [[1, 1]],
                               "seed": 9}))
    code, doc, _ = _run_json(["homdims", "--config", str(cfg)], capsys)
    assert code == EXIT_OK
    assert doc["config"]["pq_list"] == [[1, 1]]
    assert doc["config"]["seed"] == 9
    code, doc, _ = _run_json(
        ["homdims", "--config", str(cfg), "--pq-list", "2,2"], capsys)
    assert code == EXIT_OK
    assert doc["config"]["pq_list"] == [[2, 2]]
    assert {(r["p"], r["q"]) for r in doc["report"]["dims"]} == {(2, 2)}


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"presett": "sym"}))
    code, _, err = _run(["homdims", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG
    assert "presett" in err
