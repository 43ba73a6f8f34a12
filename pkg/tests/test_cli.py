import csv
import io
import json

import pytest

from absum import identities as ids
from absum.cli import ConfigError, RunConfig, TABLE_HEADER, main, run


def run_to_text(**kwargs):
    buf = io.StringIO()
    status = run(RunConfig(**kwargs), buf)
    return status, buf.getvalue()


def test_table_csv_values():
    status, out = run_to_text(command="table", k_min=0, k_max=4, fmt="csv")
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert out.splitlines()[0] == "k,S0,S1,S2,S3"
    assert rows[0] == TABLE_HEADER
    assert rows[3] == ["2", "12", "288", "192", "96"]
    assert len(rows) == 6


def test_big_integers_are_decimal_strings():
    status, out = run_to_text(command="table", k_min=20, k_max=20, fmt="json")
    rec = json.loads(out)["records"][0]
    assert rec["S1"] == str(ids.s1_closed(20))
    assert ids.s1_closed(20) > 2**64


def test_verify_json_single_document():
    status, out = run_to_text(command="verify", k_min=0, k_max=6, fmt="json")
    doc = json.loads(out)
    assert status == 0 and doc["passed"] is True
    assert len(doc["records"]) == 7 * len(ids.IdentityId)
    ks = [r["k"] for r in doc["records"]]
    assert ks == sorted(ks)


def test_verify_identity_filter_and_csv():
    status, out = run_to_text(command="verify", k_min=1, k_max=3, identities=["decomp", "RECOMBINE"], fmt="csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert status == 0
    assert [(r["k"], r["identity"]) for r in rows] == [
        ("1", "DECOMP"), ("1", "RECOMBINE"), ("2", "DECOMP"), ("2", "RECOMBINE"),
        ("3", "DECOMP"), ("3", "RECOMBINE"),
    ]


def test_oracle_command():
    status, out = run_to_text(command="oracle", k_min=8, k_max=8, fmt="json")
    rec = json.loads(out)["records"][0]
    assert status == 0
    assert rec["oracle_s1"] == rec["s1_closed"] == str(ids.s1_closed(8))


def test_mc_command_reproducible():
    a = run_to_text(command="mc", k_min=1, k_max=3, samples=20_000, seed=99, fmt="json")
    b = run_to_text(command="mc", k_min=1, k_max=3, samples=20_000, seed=99, fmt="json")
    assert a == b and a[0] == 0
    recs = json.loads(a[1])["records"]
    assert {r["estimate"] for r in recs} == {"mean_abs", "mean_absdiffsq", "offset_law"}
    status, out = run_to_text(command="mc", k_min=1, k_max=1, samples=1000, fmt="csv")
    assert out.splitlines()[0].startswith("k,estimate,n,mean")


def test_identity_failure_exit_code(monkeypatch):
    monkeypatch.setattr(ids, "s1_closed", lambda k: 2 * k * k * ids.binomial(2 * k, k) ** 2 + (k == 3))
    status, out = run_to_text(command="verify", k_min=0, k_max=5, identities=["THEOREM1"], fmt="text")
    assert status == 1
    assert "FAIL k=3" in out
    status, out = run_to_text(command="verify", k_min=0, k_max=5, identities=["THEOREM1"], fail_fast=True)
    assert status == 1 and "k=4" not in out


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--k-min", "5", "--k-max", "2"],
        ["mc", "--samples", "1"],
        ["verify", "--identity", "NOPE"],
        ["oracle", "--k", "11"],
        ["frobnicate"],
        ["table", "--format", "xml"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    try:
        status = main(argv)
    except SystemExit as exc:  # argparse-level errors
        status = exc.code
    assert status == 2


def test_main_table_stdout(capsys):
    assert main(["table", "--k-min", "0", "--k-max", "2", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "k,S0,S1,S2,S3\n0,0,0,0,0\n1,2,8,8,0\n2,12,288,192,96\n"


def test_threads_do_not_change_output(monkeypatch, capsys):
    main(["verify", "--k-max", "8", "--format", "json"])
    serial = capsys.readouterr().out
    monkeypatch.setenv("ABSUM_THREADS", "3")
    main(["verify", "--k-max", "8", "--format", "json"])
    assert capsys.readouterr().out == serial


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(command="table", k_min=-1, k_max=3)
    cfg = RunConfig(command="oracle")
    assert (cfg.k_min, cfg.k_max) == (0, 10)
