import io
import json

import pytest

from rcdkit.cli import main
from rcdkit.core.instance import parse_instance


@pytest.fixture
def run(fake_home, capsys):
    def _run(*args):
        code = main(list(args))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def test_is_rcd_fails_by_stationarity(run, samples_dir):
    code, out, _ = run("is-rcd", str(samples_dir / "trivial_not_total.json"), "--json")
    assert code == 3
    verdict = json.loads(out)
    assert verdict["is_rcd"] is False
    assert verdict["failed_condition"] == "stationarity"


def test_is_rcd_under_stationary_measure(run, samples_dir):
    code, out, _ = run("is-rcd", str(samples_dir / "trivial_not_total_stationary.json"), "--json")
    assert code == 0
    assert json.loads(out)["conditioning"] == [[0], [1], [2, 3]]


def test_is_rcd_gcp_table_output(run, samples_dir):
    code, out, _ = run("is-rcd", str(samples_dir / "trivial_not_total_stationary.json"), "--gcp")
    assert code == 0
    assert out.strip()


def test_analyze_three_state_kernel(run, samples_dir):
    code, out, _ = run("analyze", str(samples_dir / "three_state_block.json"), "--json")
    assert code == 0
    result = json.loads(out)
    assert result["sigma"] == [[0], [1, 2]]
    assert all(verdict["holds"] for verdict in result["verdicts"].values())


def test_analyze_exits_zero_even_when_properties_fail(run, samples_dir):
    code, out, _ = run("analyze", str(samples_dir / "trivial_not_total.json"), "-p", "0,1/2,3")
    assert code == 0
    assert out.strip()


def test_check_single_property(run, samples_dir):
    path = str(samples_dir / "trivial_not_total.json")
    assert run("check", "SC", path)[0] == 0
    code, out, _ = run("check", "T", path, "--json")
    assert code == 3
    assert json.loads(out)["witness"]["x"] == 0


def test_check_restricted_stationarity(run, samples_dir):
    path = str(samples_dir / "trivial_not_total.json")
    assert run("check", "S", path, "--restricted", "-p", "0,1,2,3")[0] == 0
    assert run("check", "S", path, "--restricted")[0] == 3


def test_check_unknown_property(run, samples_dir):
    code, _, _ = run("check", "Q", str(samples_dir / "three_state_block.json"))
    assert code == 1


def test_make_rcd_emits_document(run, samples_dir):
    code, out, _ = run("make-rcd", str(samples_dir / "conditioning_request.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"] == {"null_blocks": "point-mass"}
    assert doc["R"] == [["1", "0", "0"], ["0", "1/2", "1/2"], ["0", "1/2", "1/2"]]


def test_make_rcd_needs_partition(run, samples_dir):
    code, _, err = run("make-rcd", str(samples_dir / "three_state_block.json"))
    assert code == 1
    assert "partition" in err


def test_stationarize(run, samples_dir):
    code, out, _ = run("stationarize", str(samples_dir / "trivial_not_total.json"), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pi"] == ["0", "1/3", "1/3", "1/3"]
    assert payload["verdict"]["is_rcd"] is True


def test_oracle(run, samples_dir):
    code, out, _ = run(
        "oracle", str(samples_dir / "trivial_not_total_stationary.json"), "--json"
    )
    assert code == 0
    assert json.loads(out)["accepted"] == [[[0], [1], [2, 3]]]
    assert run("oracle", str(samples_dir / "trivial_not_total.json"))[0] == 3


def test_oracle_refuses_beyond_cap(run, samples_dir):
    code, _, _ = run("oracle", str(samples_dir / "trivial_not_total.json"), "--max-n", "3")
    assert code == 2


def test_stdin_input(run, samples_dir, monkeypatch):
    text = (samples_dir / "three_state_block.json").read_text()
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert run("is-rcd", "-")[0] == 0


def test_falsify_theorem_law(run):
    code, out, _ = run(
        "falsify", "L8", "--trials", "20", "--n-max", "4", "--no-record", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["law"] == "L8"
    assert report["counterexamples"] == []


def test_falsify_sanity_law_and_history(run, fake_home):
    code, _, _ = run("falsify", "SANITY-2", "--trials", "10", "--seed", "3")
    assert code == 0
    assert (fake_home / ".rcdkit" / "reports.jsonl").exists()

    code, out, _ = run("history", "--json")
    assert code == 0
    entries = json.loads(out)
    assert [entry["report"]["law"] for entry in entries] == ["SANITY-2"]


def test_falsify_expectation_mismatch(run):
    code, out, _ = run(
        "falsify", "L1", "-t", "10", "--expect-counterexample", "--no-record", "--json"
    )
    assert code == 3
    report = json.loads(out)
    assert report["expect_counterexample"] is True
    assert report["counterexamples"] == []
    code, out, _ = run("falsify", "L1", "-t", "10", "--expect-counterexample", "--no-record")
    assert code == 3
    assert "UNEXPECTED" in out


def test_falsify_bad_range(run):
    assert run("falsify", "L1", "--n-min", "5", "--n-max", "3", "--no-record")[0] == 1


def test_falsify_unknown_law(run):
    code, _, err = run("falsify", "L99", "--no-record")
    assert code == 1
    assert "L99" in err


def test_laws_listing(run):
    code, out, _ = run("laws", "--json")
    assert code == 0
    ids = [law["id"] for law in json.loads(out)]
    assert "L18" in ids and "SANITY-1" in ids


def test_gen_emits_parseable_documents(run):
    for kind in ("measure", "kernel", "partition", "rcd", "near-rcd"):
        code, out, _ = run("gen", "--kind", kind, "--n", "4", "--seed", "5")
        assert code == 0
        inst = parse_instance(out)
        assert inst.n == 4
        assert (inst.kernel is not None) == (kind in ("kernel", "rcd", "near-rcd"))


def test_gen_is_deterministic(run):
    first = run("gen", "-k", "rcd", "--n", "5", "-s", "8", "--zeros")[1]
    second = run("gen", "-k", "rcd", "--n", "5", "-s", "8", "--zeros")[1]
    assert first == second


def test_missing_file_and_unknown_command(run, tmp_path):
    assert run("is-rcd", str(tmp_path / "missing.json"))[0] == 1
    assert run("frobnicate")[0] == 1


def test_usage_errors_exit_one_with_a_message(run, samples_dir):
    code, out, err = run("is-rcd", str(samples_dir / "three_state_block.json"), "--bogus")
    assert code == 1
    assert out == ""
    assert "--bogus" in err
    code, _, err = run("frobnicate")
    assert code == 1
    assert err.strip()


def test_version(run):
    code, out, _ = run("version")
    assert code == 0
    assert out.startswith("rcdkit ")


def test_analyze_block_kernel(run, samples_dir):
    path = str(samples_dir / "trivial_not_total.json")
    code, out, _ = run("analyze", path, "--blocks", "--json")
    assert code == 0
    assert json.loads(out)["block_kernel"] == [
        ["0", "1/3", "2/3"],
        ["0", "1", "0"],
        ["0", "0", "1"],
    ]
    assert run("analyze", path, "--blocks")[0] == 0


@pytest.mark.parametrize(
    "args",
    [
        ("analyze",),
        ("check", "T"),
        ("is-rcd",),
        ("stationarize",),
        ("oracle",),
    ],
)
def test_reports_echo_rational_mode(run, samples_dir, args):
    code, out, _ = run(*args, str(samples_dir / "three_state_block.json"), "--json")
    assert code in (0, 3)
    report = json.loads(out)
    assert report["mode"] == "rational"
    assert "epsilon" not in report


def test_float_reports_echo_epsilon(run, tmp_path):
    doc = {
        "n": 2,
        "nu": ["0.5", "0.5"],
        "R": [["1", "0"], ["0", "1"]],
        "mode": "float",
        "epsilon": "1e-6",
    }
    path = tmp_path / "float.json"
    path.write_text(json.dumps(doc))
    for args in (("analyze",), ("check", "S")):
        code, out, _ = run(*args, str(path), "--json")
        assert code == 0
        report = json.loads(out)
        assert report["mode"] == "float"
        assert report["epsilon"] == "0.000001"


@pytest.mark.parametrize("kind", ["measure", "kernel", "partition", "rcd", "near-rcd"])
def test_generated_documents_analyze_cleanly(run, tmp_path, kind):
    code, doc, _ = run("gen", "-k", kind, "--n", "4", "-s", "3", "--zeros")
    assert code == 0
    path = tmp_path / f"{kind}.json"
    path.write_text(doc)
    code, out, _ = run("analyze", str(path), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["mode"] == "rational"
    if kind in ("measure", "partition"):
        assert report["n"] == 4
        assert report["support"]
        assert ("trace" in report) == (kind == "partition")
    else:
        assert "verdicts" in report
    code, out, _ = run("analyze", str(path))
    assert code == 0
    assert out.strip()
