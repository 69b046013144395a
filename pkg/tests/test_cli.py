import json
from pathlib import Path

from canonical_section.cli import main
from canonical_section.padic import make_field

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
TOY = str(CONFIGS / "toy.toml")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_pi_toy(capsys):
    code, out, _ = run(capsys, "eval-pi", "--config", TOY, "--x", "pi")
    rec = json.loads(out)
    assert code == 0
    assert rec["nu_X"] == "1/3" and rec["nu_Y"] == "1/3"
    F = make_field(5, 3, 20)
    t = F.from_pi_digits(rec["t"]["pi_digits"], rec["t"]["abs_prec"])
    assert t == F.pi_power(1) + F.pi_power(4)
    assert "seconds" not in rec


def test_eval_pi_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "eval-pi", "--config", TOY, "--x", "pi", "--timing")
    assert "seconds" in json.loads(out)


def test_malformed_config(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("p = 5\nn = 3\n")
    code, _, err = run(capsys, "eval-pi", "--config", str(bad), "--x", "pi")
    assert code == 2 and "ConfigError" in err


def test_point_off_annulus(capsys):
    code, _, err = run(capsys, "eval-pi", "--config", TOY, "--x", "1+pi")
    assert code == 6 and "AnnulusViolation" in err


def test_section_toy(capsys):
    code, out, _ = run(capsys, "section", "--config", TOY, "--t", "pi")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "solved" and rec["reduction"] is True
    F = make_field(5, 3, 20)
    x = F.from_pi_digits(rec["x"]["pi_digits"], rec["x"]["abs_prec"])
    assert x.agrees_with(F.pi_power(1) - F.pi_power(4), 7)
    assert rec["iterations"] <= rec["iteration_bound"]


def test_section_out_of_region(capsys):
    code, _, err = run(capsys, "section", "--config", TOY, "--t", "2/3")
    assert code == 3 and "OutOfRegion" in err


def test_section_ordinary(capsys):
    code, out, _ = run(capsys, "section", "--config", TOY, "--t", "0/1")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "ordinary" and rec["image"] == "Z_inf"


def test_classify_and_fiber(capsys):
    _, out, _ = run(capsys, "classify", "--nu", "1/3", "--e", "2")
    assert json.loads(out)["branch"] == 3
    _, out, _ = run(capsys, "fiber", "--config", TOY, "--nu", "1/3")
    assert json.loads(out)["fiber"] == ["1/3", "5/6", "5/6"]


def test_wmap(capsys):
    code, out, _ = run(capsys, "wmap", "--config", TOY, "--x", "pi")
    rec = json.loads(out)
    assert code == 0 and rec["branch"] == 3 and rec["passed"]


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--e", "2", "--grid", "6")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("nu_Y,")
    assert lines[6] == "5/6,1/3,anti-canonical,1/6,1/6,canonical"


def test_table_bad_grid(capsys):
    code, _, err = run(capsys, "table", "--e", "2", "--grid", "7")
    assert code == 2 and "GridError" in err


def test_csv_record(capsys):
    code, out, _ = run(capsys, "section", "--config", TOY, "--t", "pi", "--format", "csv")
    header, row = out.splitlines()
    assert "x.pi_digits" in header.split(",") and code == 0


def test_verify_toy_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--config", TOY, "--seed", "7", "--cases", "20", "--out", str(a)]) == 0
    assert main(["verify", "--config", TOY, "--seed", "7", "--cases", "20", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["ok"] is True


def test_verify_corrupted(capsys):
    code, out, _ = run(capsys, "verify", "--config", str(CONFIGS / "corrupted.toml"), "--cases", "5")
    report = json.loads(out)
    assert code == 5
    assert report["suites"]["validate"]["failed"] == 1


def test_overrides_flow_through(capsys):
    _, out, _ = run(capsys, "eval-pi", "--config", TOY, "--x", "pi", "--precision", "4")
    assert json.loads(out)["t"]["abs_prec"] == 12
