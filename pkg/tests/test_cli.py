import json
from pathlib import Path

from qeuler.cli import main
from qeuler.presented import bundled_ig26_path

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_grassmannian_euler_text(capsys):
    code, out, _ = run_cli(capsys, "grassmannian", "-k", "2", "-n", "4", "euler")
    assert code == 0
    assert out == "6*s[2,2] + 2*q\n"


def test_grassmannian_table_matches_golden(capsys):
    code, out, _ = run_cli(
        capsys, "grassmannian", "-k", "2", "-n", "4", "table", "--format", "md")
    assert code == 0
    assert out == (GOLDEN / "g24_table.md").read_text(encoding="utf-8")


def test_ig26_diagnose_matches_golden(capsys):
    code, out, _ = run_cli(
        capsys, "algebra", "--file", str(bundled_ig26_path()),
        "diagnose", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "ig26_diagnose.json").read_text(encoding="utf-8")
    payload = json.loads(out)
    assert payload["semisimple"] is False
    assert payload["field_factor"] is True


def test_diagnose_json_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "grassmannian", "-k", "2", "-n", "4", "diagnose",
        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {
        "rank", "euler_class", "f_of_euler", "euler_square",
        "semisimple", "field_factor"}
    assert json.dumps(payload, indent=2) + "\n" == out


def test_grassmannian_product(capsys):
    code, out, _ = run_cli(
        capsys, "grassmannian", "-k", "2", "-n", "4", "product", "2", "1,1")
    assert code == 0
    assert out == "q\n"


def test_table_json_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "grassmannian", "-k", "2", "-n", "4", "table",
        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["2|1,1"] == {"0": "q"}
    assert len(payload) == 36


def test_un_capacity(capsys):
    code, out, _ = run_cli(capsys, "un-capacity", "--lambda", "3,1,0")
    assert code == 0
    assert out == "3\n"


def test_un_capacity_rational(capsys):
    code, out, _ = run_cli(capsys, "un-capacity", "--lambda", "1/2,0")
    assert code == 0
    assert out == "1/2\n"


def test_orbit_chern(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--family", "A", "--rank", "3",
        "--parabolic", "1,3", "chern")
    assert code == 0
    assert out == "n(a2) = 4; N = 4\n"


def test_orbit_monotone_weight(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--family", "A", "--rank", "3",
        "--parabolic", "1,3", "monotone-weight")
    assert code == 0
    assert out == "2,2,-2,-2\n"


def test_orbit_hz_bound(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--family", "A", "--rank", "2",
        "--lambda", "3,1,0", "hz-bound")
    assert code == 0
    assert out == "3\n"


def test_orbit_hz_bound_json(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--family", "A", "--rank", "3",
        "--parabolic", "1,3", "--lambda", "2,2,-2,-2", "hz-bound",
        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == "8"
    assert len(payload["chain"]) == 2


def test_orbit_gkm_dot(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--family", "A", "--rank", "1",
        "--lambda", "1,-1", "gkm")
    assert code == 0
    assert out.startswith("graph gkm {")
    assert "a1 | 2" in out


def test_usage_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "grassmannian", "-k", "2", "euler")
    assert code == 1
    assert "usage error" in err
    code, _, _ = run_cli(capsys, "grassmannian", "-k", "2", "-n", "4",
                         "product", "2")
    assert code == 1


def test_validation_error_exits_2(capsys):
    code, _, err = run_cli(capsys, "grassmannian", "-k", "4", "-n", "8", "euler")
    assert code == 2
    assert "TooLarge" in err
    code, _, err = run_cli(capsys, "un-capacity", "--lambda", "1,1,0")
    assert code == 2
    assert "NotRegular" in err
    code, _, err = run_cli(capsys, "algebra", "--file", "/no/such/file.json",
                           "euler")
    assert code == 2


def test_arithmetic_error_exits_3(capsys, monkeypatch):
    from qeuler import cli
    from qeuler.errors import NotAUnit

    def boom(args):
        raise NotAUnit("synthetic")

    monkeypatch.setattr(cli, "run", boom)
    code, _, err = run_cli(capsys, "un-capacity", "--lambda", "1,0")
    assert code == 3
    assert "NotAUnit" in err


def test_allow_large_lifts_guard(capsys):
    code, out, _ = run_cli(
        capsys, "grassmannian", "-k", "2", "-n", "9", "--allow-large",
        "product", "1", "1")
    assert code == 0
    assert out == "s[1,1] + s[2]\n"
