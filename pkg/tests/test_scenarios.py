import itertools
import json
from fractions import Fraction

import pytest

import oracles
from beliefcalc.errors import UnknownScenario
from beliefcalc.scenarios import (
    EXACT,
    STATISTICAL,
    croupier_formula,
    croupier_interval,
    run_all,
    run_scenario,
    scenario_names,
)

F = Fraction
SAMPLED_P = [F(1, 10), F(1, 4), F(1, 2), F(3, 4), F(9, 10)]


def croupier_oracle(p):
    """Conditional masses on S = {hh, tt} from a hand-built product of the two croupier factors."""
    factor = {frozenset("h"): (1 - p) / 2, frozenset("t"): (1 - p) / 2, frozenset("ht"): p}
    product = {}
    for (a, x), (b, y) in itertools.product(factor.items(), repeat=2):
        rect = frozenset((u, v) for u in a for v in b)
        product[rect] = product.get(rect, 0) + x * y
    s = frozenset({("h", "h"), ("t", "t")})
    return oracles.condition(product, s), s


def forensic_oracle(p):
    """B_E(G) by the conditioning closed form on hand-built masses without a prior on guilt."""
    omega = frozenset(itertools.product(["Ec", "E"], ["Gc", "G"]))
    ec = frozenset(w for w in omega if w[0] == "Ec")
    e = omega - ec
    g = frozenset(w for w in omega if w[1] == "G")
    masses = {ec: 1 - p, e: p * p, ec | (e & g): p * (1 - p)}
    return oracles.closed_form_conditional(masses, omega, e, g)


class TestRegistry:
    def test_names(self):
        assert scenario_names() == [
            "island",
            "forensic-uniform",
            "forensic-ignorant",
            "croupier",
            "dempster-coin",
            "paradox-xy",
            "fh-vs-dempster",
            "lln-coin",
        ]

    def test_unknown(self):
        with pytest.raises(UnknownScenario):
            run_scenario("casino")

    def test_tolerance_classes(self):
        reports = {r.name: r for r in run_all()}
        assert reports["lln-coin"].tolerance == STATISTICAL
        assert all(r.tolerance == EXACT for name, r in reports.items() if name != "lln-coin")

    def test_every_check_has_a_note(self):
        for report in run_all():
            assert report.checks
            assert all(c.note for c in report.checks)

    def test_to_dict_is_json_ready(self):
        for report in run_all():
            json.dumps(report.to_dict())


class TestGoldens:
    def test_island(self):
        report = run_scenario("island")
        assert report.check("B(each individual)").actual == [0] * 5
        assert report.check("B(population)").actual == 1
        assert report.passed

    def test_forensic_uniform(self):
        report = run_scenario("forensic-uniform")
        assert report.check("B_E(G)").actual == F(10, 11)
        assert report.passed

    def test_forensic_ignorant(self):
        report = run_scenario("forensic-ignorant")
        assert report.check("B_E(G)").actual == F(9, 10)
        assert report.check("B(G)").actual == 0
        assert report.passed

    def test_croupier_values(self):
        report = run_scenario("croupier")
        assert report.check("B_S(hh)").actual == F(5, 14)
        assert report.check("B_S(tt)").actual == F(5, 14)
        assert report.check("classical interval").actual == (F(1, 10), F(9, 10))
        assert report.check("B_S(hh) + B_S(tt) = 1 - m_S(S)").passed

    def test_croupier_sum_is_three_quarters(self):
        report = run_scenario("croupier")
        assert report.check("B_S(hh) + B_S(tt) = 1 - p^2").actual == F(3, 4)

    def test_croupier_sum_matches_oracle(self):
        conditioned, s = croupier_oracle(F(1, 2))
        hh, tt = frozenset({("h", "h")}), frozenset({("t", "t")})
        total = oracles.belief(conditioned, hh) + oracles.belief(conditioned, tt)
        assert total == F(5, 7) == 1 - conditioned[s]
        assert run_scenario("croupier").check("B_S(hh) + B_S(tt) = 1 - p^2").actual == total

    def test_dempster_coin(self):
        report = run_scenario("dempster-coin")
        assert report.check("(m1+m2)({h})").actual == F(9, 13)
        assert report.check("(m1+m2)({t})").actual == F(4, 13)
        assert F(4, 13) < F(2, 5)
        assert report.passed

    def test_paradox(self):
        report = run_scenario("paradox-xy")
        assert report.check("B(x=y)").actual == 0
        assert report.check("B_{y=0}(x=y)").actual == F(1, 2)
        assert report.check("first decomposition failure for the y-partition").actual.bits == 0b0011
        assert report.passed

    def test_fh_vs_dempster(self):
        report = run_scenario("fh-vs-dempster")
        assert report.check("B_H({Father})").actual == F(9, 10)
        assert report.check("inf P({Father} | H)").actual == 0
        assert report.passed

    def test_lln_coin(self):
        report = run_scenario("lln-coin")
        assert report.check("empirical_lower >= 0.99").actual >= 0.99
        assert report.check("empirical_upper <= 0.01").actual <= 0.01
        assert report.passed


class TestSymbolicSampling:
    @pytest.mark.parametrize("p", SAMPLED_P)
    def test_forensic_ignorant(self, p):
        report = run_scenario("forensic-ignorant", p)
        assert report.check("B_E(G)").actual == 1 - p == forensic_oracle(p)

    @pytest.mark.parametrize("p", SAMPLED_P)
    def test_forensic_uniform(self, p):
        assert run_scenario("forensic-uniform", p).check("B_E(G)").actual == 1 / (1 + p)

    @pytest.mark.parametrize("p", SAMPLED_P)
    def test_croupier_formula(self, p):
        conditioned, _ = croupier_oracle(p)
        actual = run_scenario("croupier", p).check("B_S(hh)").actual
        assert actual == croupier_formula(p) == oracles.belief(conditioned, frozenset({("h", "h")}))

    @pytest.mark.parametrize("p", SAMPLED_P)
    def test_croupier_interval_contains_answer(self, p):
        low, high = croupier_interval(p)
        assert low <= croupier_formula(p) <= high

    def test_parameter_forms(self):
        assert run_scenario("croupier", "1/4").parameter == F(1, 4)
        assert run_scenario("croupier", 0.25).parameter == F(1, 4)
        assert run_scenario("island", 3).check("B(each individual)").actual == [0] * 3
