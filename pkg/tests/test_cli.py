import json

import pytest

from qsuper.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_qybe_passes(capsys):
    code, out = run(capsys, "qybe", "--size", "1", "1")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["PASS"] * 4


def test_size_out_of_range_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["qybe", "--size", "3", "2"])
    assert exc.value.code == 2


def test_bad_tolerance_and_jobs(capsys):
    for argv in (["qybe", "--tol", "0"], ["qybe", "--jobs", "0"], ["vell-check", "--ell", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_json_schema_and_sorting(capsys):
    code, out = run(capsys, "qybe", "--size", "2", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    ids = [r["check_id"] for r in doc["reports"]]
    assert ids == sorted(ids)
    assert all(r["status"] == "pass" for r in doc["reports"])


def test_pairing_value(capsys):
    code, out = run(capsys, "pairing", "--size", "1", "1", "--left", "a12", "--right", "b21")
    assert code == 0
    assert out.strip() == "phi(a12, b21) = s^-1 - r^-1"


def test_pairing_json_and_orders(capsys):
    _, out1 = run(capsys, "pairing", "--size", "2", "0", "--left", "a12 a12", "--right", "b21 b21", "--json")
    _, out2 = run(capsys, "pairing", "--size", "2", "0", "--left", "a12 a12", "--right", "b21 b21", "--json",
                  "--order", "a_first")
    assert json.loads(out1)["value"] == json.loads(out2)["value"]


def test_pairing_bad_word_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["pairing", "--left", "q12", "--right", "b21"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["pairing", "--left", "a12"])
    assert exc.value.code == 2


def test_pairing_without_words_runs_root_check(capsys):
    code, out = run(capsys, "pairing", "--size", "2", "2")
    assert code == 0
    assert "root-pairing" in out


def test_rmatrix_dump_json(capsys):
    code, out = run(capsys, "rmatrix-dump", "--size", "1", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["M"] == 1 and doc["N"] == 1


@pytest.mark.parametrize("argv", [
    ["rtt-check", "--size", "1", "1", "--rep", "vector^2"],
    ["rtt-check", "--size", "2", "2", "--backend", "complex"],
    ["dj-check", "--size", "2", "2"],
    ["orthogonality", "--size", "1", "1", "--cap", "2"],
    ["universal-r", "--size", "1", "1", "--dump"],
    ["thm41", "--size", "1", "1", "--backend", "complex"],
    ["example42", "--size", "2", "1"],
    ["extension-check"],
    ["vell-check", "--ell", "2"],
])
def test_commands_pass(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0, out


def test_unknown_rep_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["rtt-check", "--rep", "adjoint"])
    assert exc.value.code == 2


def test_failing_check_exits_one(capsys, monkeypatch):
    from qsuper import cli
    from qsuper.report import ReportBuilder

    def failing(args):
        b = ReportBuilder("forced-failure")
        b.expect("always", False, "forced")
        return [b.build()], []

    monkeypatch.setitem(cli.COMMANDS, "example42", (failing, "forced"))
    code, out = run(capsys, "example42")
    assert code == 1
    assert "forced-failure" in out
