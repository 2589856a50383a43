import json
import subprocess
import sys
from fractions import Fraction

import pytest

from beliefcalc.cli import main, split_labels
from beliefcalc.io import save_model
from beliefcalc.scenarios import croupier_factor, forensic_ignorant_model, parents_model

F = Fraction

COIN = """{
  "frame": ["h", "t"],
  "masses": [
    {"set": ["h"], "mass": "2/5"},
    {"set": ["t"], "mass": "2/5"},
    {"set": ["h", "t"], "mass": "1/5"}
  ],
  "random_variables": {"X": {"h": "1", "t": "0"}}
}
"""

SUPERADDITIVE = """{
  "frame": ["a", "b", "c"],
  "prices": [
    {"set": ["b"], "price": "1/2"},
    {"set": ["a", "b"], "price": "1"},
    {"set": ["b", "c"], "price": "1"},
    {"set": ["a", "b", "c"], "price": "1"}
  ]
}
"""


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "coin": COIN,
        "superadditive": SUPERADDITIVE,
        "parents": save_model(parents_model()),
        "forensic": save_model(forensic_ignorant_model(F(1, 10))),
        "factor": save_model(croupier_factor(F(1, 2))),
        "tails": '{"frame": ["h", "t"], "masses": [{"set": ["t"], "mass": "1"}]}',
        "bad": '{"frame": ["h", "t"], "masses": [{"set": ["h"], "mass": "0.9"}]}',
    }.items():
        path = tmp_path / f"{name}.json"
        path.write_text(text)
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSplitLabels:
    def test_plain(self):
        assert split_labels("a, b,c") == ["a", "b", "c"]

    def test_braces_and_pairs(self):
        assert split_labels("{(h,t),(t,h)}") == ["(h,t)", "(t,h)"]

    def test_empty(self):
        assert split_labels("{}") == []


class TestCommands:
    def test_validate(self, capsys, files):
        code, out, _ = run(capsys, "validate", files["coin"])
        assert code == 0 and out.startswith("valid: 3 focal sets")

    def test_validate_invalid(self, capsys, files):
        code, _, err = run(capsys, "validate", files["bad"])
        assert code == 1 and "masses" in err

    def test_belief_json(self, capsys, files):
        code, out, _ = run(capsys, "--json", "belief", files["coin"], "--set", "h")
        assert code == 0
        assert json.loads(out) == {"set": ["h"], "belief": "2/5", "plausibility": "3/5"}

    def test_json_after_subcommand(self, capsys, files):
        code, out, _ = run(capsys, "belief", files["coin"], "--set", "h", "--json")
        assert json.loads(out)["belief"] == "2/5"

    def test_float_mode(self, capsys, files):
        code, out, _ = run(capsys, "--numeric", "float", "--json", "belief", files["coin"], "--set", "h")
        assert float(json.loads(out)["belief"]) == pytest.approx(0.4)

    def test_condition(self, capsys, files):
        code, out, _ = run(capsys, "condition", files["forensic"], "--on", "(E,Gc),(E,G)", "--query", "(Ec,G),(E,G)")
        assert code == 0 and out.strip().endswith("= 9/10")

    def test_marginal(self, capsys, files):
        code, out, _ = run(capsys, "--json", "marginal", files["forensic"], "--axis", "left")
        doc = json.loads(out)
        assert doc["frame"] == ["Ec", "E"]
        assert {"set": ["Ec"], "mass": "9/10"} in doc["masses"]

    def test_product_and_dempster(self, capsys, files):
        code, out, _ = run(capsys, "product", files["factor"], files["factor"])
        assert code == 0 and '"left": ["h", "t"]' in out
        code, out, _ = run(capsys, "dempster", files["coin"], files["coin"])
        assert code == 0 and '{"set": ["h"], "mass": "8/17"}' in out

    def test_dempster_help_marks_reference_use(self, capsys):
        with pytest.raises(SystemExit):
            main(["dempster", "--help"])
        assert "reference/critique only" in capsys.readouterr().out

    def test_credal(self, capsys, files):
        code, out, _ = run(capsys, "credal", files["parents"], "--lower", "Father", "--given", "Father,Son")
        assert code == 0 and out.strip().endswith("[fh] = 0")
        code, out, _ = run(capsys, "credal", files["parents"], "--lower", "Father", "--given", "Father,Son",
                           "--mode", "compatible")
        assert out.strip().endswith("= 9/10")
        code, out, _ = run(capsys, "--json", "credal", files["parents"], "--lower", "Father")
        assert json.loads(out) == {"set": ["Father"], "lower": "0", "upper": "9/10"}

    def test_expect(self, capsys, files):
        code, out, _ = run(capsys, "expect", files["coin"], "--rv", "X")
        assert code == 0 and out.strip() == "E(X) = 2/5"

    def test_unknown_rv(self, capsys, files):
        code, _, err = run(capsys, "expect", files["coin"], "--rv", "Y")
        assert code == 2 and "'Y'" in err

    def test_lln(self, capsys, files):
        argv = ["--json", "lln", files["coin"], "--rv", "X", "-n", "200", "--trials", "50", "--eps", "1/20",
                "--seed", "9", "--exact"]
        code, out, _ = run(capsys, *argv)
        first = json.loads(out)
        assert code == 0 and first["seed"] == 9 and first["generator"] == "numpy.PCG64"
        assert 0 <= first["empirical_upper"] <= first["empirical_lower"] <= 1
        assert json.loads(run(capsys, *argv)[1]) == first

    def test_bets_find(self, capsys, files):
        code, out, _ = run(capsys, "bets", files["superadditive"], "--mode", "b2star", "--find")
        assert code == 1 and out.startswith("b2star violation: buy")
        code, out, _ = run(capsys, "bets", files["parents"], "--mode", "b2star", "--find")
        assert code == 0 and out.startswith("no b2star violation")

    def test_bets_family(self, capsys, files):
        argv = ["bets", files["superadditive"], "--mode", "b2star", "--buy", "a,b,c", "--buy", "b", "--sell", "a,b",
                "--sell", "b,c"]
        code, out, _ = run(capsys, *argv)
        assert code == 1 and out.strip() == "b2star: Violation"
        code, out, _ = run(capsys, "bets", files["coin"], "--mode", "p2", "--buy", "h,t", "--sell", "h")
        assert code == 0 and out.strip() == "p2: ConstraintHolds"

    def test_bets_needs_a_family(self, capsys, files):
        code, _, err = run(capsys, "bets", files["coin"], "--mode", "p2")
        assert code == 2 and "--find" in err

    def test_scenario(self, capsys):
        code, out, _ = run(capsys, "scenario", "forensic-ignorant", "--p", "1/4")
        assert code == 0 and out.startswith("PASS  forensic-ignorant")
        code, out, _ = run(capsys, "--json", "scenario", "croupier")
        assert code == 1
        report = json.loads(out)[0]
        assert report["passed"] is False
        failing = [c["name"] for c in report["checks"] if not c["passed"]]
        assert failing == ["B_S(hh) + B_S(tt) = 1 - p^2"]


class TestErrors:
    def test_unknown_label(self, capsys, files):
        code, _, err = run(capsys, "belief", files["coin"], "--set", "x")
        assert code == 2 and "x" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2 and "cannot read" in err

    def test_bad_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        code, _, err = run(capsys, "validate", str(path))
        assert code == 2 and "line 1" in err

    def test_unknown_scenario(self, capsys):
        code, _, _ = run(capsys, "scenario", "casino")
        assert code == 2

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["belief"])
        assert info.value.code == 2

    def test_conditioning_undefined(self, capsys, files):
        code, _, err = run(capsys, "condition", files["tails"], "--on", "h")
        assert code == 1 and err.startswith("error:")


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "beliefcalc.cli", "belief", files["coin"], "--set", "h"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("B({h}) = 2/5")
