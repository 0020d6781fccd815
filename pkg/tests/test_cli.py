import json

import pytest

from qpfaff.cli import ALL_SUITES, SweepConfig, UsageError, main, qps_box


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_qps(capsys):
    code, out, _ = run(capsys, "verify", "--suites", "qps", "--max", "3")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    cfg = SweepConfig(max_m=3, max_s=3, max_t=3)
    assert len(lines) == len(list(qps_box(cfg)))
    assert all(r["equal"] and r["lhs"] == r["rhs"] for r in lines)
    params = [tuple(r["params"][k] for k in "mste") for r in lines]
    assert params == sorted(params)


def test_verify_lines_over_f3(capsys):
    code, out, _ = run(capsys, "verify", "--suites", "subspaces", "--primes", "3", "--max-n", "2")
    reps = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    lines = [r for r in reps if r["suite"] == "subspaces" and r["params"] == {"n": 2, "k": 1, "p": 3}]
    assert lines[0]["lhs"] == "4"
    comps = [r for r in reps if r["suite"] == "count_complements"]
    assert len(comps) == 4 and all(r["lhs"] == "3" for r in comps)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suites", "qps", "--max", "-1"],
        ["verify", "--primes", "4"],
        ["verify", "--budget", "0"],
        ["verify", "--suites", "nonsense"],
        ["nf", "K[1;"],
        ["straighten", "E(x)"],
        ["straighten", "E(1)", "--check", "weyl=a"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_budget_exceeded_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--suites", "subspaces", "--primes", "3", "--max-n", "4", "--budget", "10")
    assert code == 2


def test_json_file(tmp_path, capsys):
    path = tmp_path / "out.ndjson"
    code, out, _ = run(capsys, "verify", "--suites", "symmetry", "--max", "2", "--json", str(path))
    assert code == 0
    assert path.read_text() == out


@pytest.mark.parametrize(
    "expr,expected",
    [
        ("K[2;1]", "(q^-1 + q)*K[1;1] - K[0;1]"),
        ("K[0;1] * K[0;1]", "K[1;2] + K[0;2]"),
        ("K", "K[1;1] - (q^-1)*K[0;1]"),
    ],
)
def test_nf(capsys, expr, expected):
    code, out, _ = run(capsys, "nf", expr, "--check", "oracle")
    assert code == 0
    assert out.splitlines() == [expected, "oracle: ok"]


@pytest.mark.parametrize(
    "word,expected",
    [
        ("E(1) F(1)", "F(1)*E(1) + K[0;1]"),
        ("E(1) E(1)", "(q^-1 + q)*E(2)"),
        ("K[0;1] E(2)", "K[0;1]*E(2)"),
    ],
)
def test_straighten(capsys, word, expected):
    code, out, _ = run(capsys, "straighten", word, "--check", "weyl=1,2,3")
    assert code == 0
    assert out.splitlines() == [expected, "weyl [1, 2, 3]: ok"]


def test_config_validation():
    with pytest.raises(UsageError):
        SweepConfig(primes=[1])
    assert set(SweepConfig(suites=list(ALL_SUITES)).suites) == set(ALL_SUITES)


def test_exit_code_tracks_equal_fields(capsys, monkeypatch):
    from qpfaff import cli
    from qpfaff.report import VerificationReport

    monkeypatch.setitem(cli.SUITES, "qps", lambda cfg: iter([VerificationReport("x", {}, "1", "2")]))
    code, out, _ = run(capsys, "verify", "--suites", "qps")
    assert code == 1 and json.loads(out)["equal"] is False
