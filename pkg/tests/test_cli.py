import json

import pytest

from classforge.cli import CommandConfig, UsageError, _split_remove, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mw(capsys):
    code, out, _ = run(capsys, "mw", "--curve", "y^2=x^3+6x", "--q", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["points"] == 8 and data["invariants"] == [2, 4]


def test_picard_both_oracles(capsys):
    code, out, _ = run(capsys, "picard", "--curve", "y^2=x^3+x+1", "--q", "5", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "ISOMORPHIC"


def test_text_and_json_carry_the_same_fields(capsys):
    args = ["picard", "--curve", "y^2=x^3+x+1", "--q", "5"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--format", "json")
    for key in json.loads(js):
        assert key in text


def test_overring_with_bracketed_points(capsys):
    code, out, _ = run(
        capsys, "overring", "--curve", "y^2=x^3+6x", "--q", "7", "--remove", "(0,0)", "--format", "json"
    )
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "ISOMORPHIC"


def test_split_remove_keeps_brackets():
    assert _split_remove("(1,2); [x^2+1; y=3x+1];[x-2; inert]") == ["(1,2)", "[x^2+1; y=3x+1]", "[x-2; inert]"]


def test_replete(capsys):
    code, out, _ = run(capsys, "replete", "--curve", "y^2=x^3+x+1", "--q", "5", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "replete-with-witnesses"
    code, _, _ = run(capsys, "replete", "--curve", "y^2=x^3+x+1", "--q", "5", "--D", "1")
    assert code == 1


def test_tower(capsys):
    code, out, _ = run(capsys, "tower", "--height", "2", "--M", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["group"] == "Z^2"
    assert [r["division_poly_degrees"] for r in data["multiples"]] == [[1, 0], [4, 3], [9, 8]]


def test_realize_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "realize", "--group", "Z^2+Z/2+Z/4", "--out", str(path))
    assert code == 0 and path.exists()
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_reports_math_failure(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "realize", "--group", "Z/4", "--out", str(path))
    cert = json.loads(path.read_text())
    cert["kill_generators"] = [[3]]
    path.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    assert code == 1 and json.loads(out)["first_failure"] == "snf"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "/nonexistent/cert.json"],
        ["realize", "--group", "Z/1"],
        ["realize", "--group", "Z/x"],
        ["mw", "--curve", "y^2=x^3", "--q", "5"],
        ["mw", "--curve", "y^2=x^3+x+1", "--q", "6"],
        ["mw", "--curve", "y^2=x^3+x+1"],
        ["overring", "--curve", "y^2=x^3+x+1", "--q", "5", "--remove", "(0,2)"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_certificate_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "verify", str(path))[0] == 2
    path.write_text(json.dumps({"version": "other"}))
    assert run(capsys, "verify", str(path))[0] == 2


def test_budget_exhaustion_exit_code(capsys):
    base = ["--curve", "y^2=x^3+x", "--q", "9", "--max-norm-degree", "4"]
    code, _, err = run(capsys, "picard", "--oracle", "ideal", *base)
    assert code == 3 and err.startswith("budget exhausted")
    assert run(capsys, "overring", *base, "--remove", "(0,0)")[0] == 3


def test_argparse_rejects_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_config_validation():
    with pytest.raises(UsageError):
        CommandConfig("picard", D=0)
