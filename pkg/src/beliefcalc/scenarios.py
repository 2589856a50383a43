"""Named, executable reproductions of the worked examples.

Each scenario builds its models, computes the quantities of interest with
the library, and compares them to expected values.  Exact scenarios compare
rationals for equality; the statistical one applies the LLN bounds.  Every
expected value carries a note saying where it comes from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .combination import dempster_combine, diagonal_equivalence_check
from .conditioning import condition_mass, conditional_belief, lift_to_powerset, total_belief_check
from .credal import fh_conditional_lower
from .errors import UnknownScenario
from .expectation import indicator, simulate_lln
from .frame import SubsetMask, build_frame
from .mass import MassFunction, belief, vacuous
from .numeric import format_scalar
from .products import LEFT, RIGHT, ProductFrame, independent_product

EXACT = "exact"
STATISTICAL = "statistical"


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    note: str
    passed: bool

    @classmethod
    def equal(cls, name: str, expected, actual, note: str) -> "Check":
        return cls(name, expected, actual, note, expected == actual)

    @classmethod
    def holds(cls, name: str, condition: bool, actual, note: str) -> "Check":
        return cls(name, True, actual, note, bool(condition))


@dataclass
class ScenarioReport:
    name: str
    description: str
    tolerance: str
    parameter: object = None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        def show(v):
            if isinstance(v, (Fraction, float)):
                return format_scalar(v)
            if isinstance(v, (list, tuple)):
                return [show(x) for x in v]
            if isinstance(v, SubsetMask):
                return v.bits
            return v

        return {
            "name": self.name,
            "description": self.description,
            "tolerance": self.tolerance,
            "parameter": show(self.parameter),
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "expected": show(c.expected),
                    "actual": show(c.actual),
                    "passed": c.passed,
                    "note": c.note,
                }
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    tolerance: str
    runner: Callable[[object], list[Check]]
    default: object = None


# model builders
def forensic_uniform_model(p: Fraction) -> MassFunction:
    """Uniform prior on guilt; outcomes are (evidence, guilt) pairs."""
    pf = ProductFrame.of(build_frame(["Ec", "E"]), build_frame(["Gc", "G"]))
    half = Fraction(1, 2)
    return MassFunction(pf, {
        ("(E,G)",): half * p,
        ("(Ec,G)",): half * (1 - p),
        ("(E,Gc)",): half * p * p,
        ("(Ec,Gc)",): half * (1 - p * p),
    })


def forensic_ignorant_model(p: Fraction) -> MassFunction:
    pf = ProductFrame.of(build_frame(["Ec", "E"]), build_frame(["Gc", "G"]))
    e_c = pf.cylinder(pf.left.mask(["Ec"]), LEFT)
    e = pf.cylinder(pf.left.mask(["E"]), LEFT)
    g = pf.cylinder(pf.right.mask(["G"]), RIGHT)
    return MassFunction(pf, [(e_c, 1 - p), (e, p * p), (e_c | g, p * (1 - p))])


def croupier_factor(p: Fraction) -> MassFunction:
    """A fair flip that, with probability p, someone may have overridden."""
    coin = build_frame(["h", "t"])
    half = (1 - p) / 2
    return MassFunction(coin, {("h",): half, ("t",): half, ("h", "t"): p})


def croupier_model(p: Fraction) -> MassFunction:
    f = croupier_factor(p)
    return independent_product(f, f)


def bernoulli_factor(q: Fraction) -> MassFunction:
    """Heads with probability q."""
    return MassFunction(build_frame(["h", "t"]), {("h",): q, ("t",): 1 - q})


def parents_model() -> MassFunction:
    frame = build_frame(["Father", "Mother", "Son"])
    return MassFunction(frame, {("Father", "Mother"): Fraction(9, 10), ("Son",): Fraction(1, 10)})


def paradox_model() -> MassFunction:
    """x is a fair coin; nothing is known about y."""
    bit = build_frame(["0", "1"])
    pf = ProductFrame.of(bit, bit)
    return MassFunction(pf, [
        (pf.cylinder(bit.mask(["0"]), LEFT), Fraction(1, 2)),
        (pf.cylinder(bit.mask(["1"]), LEFT), Fraction(1, 2)),
    ])


# closed forms
def croupier_formula(p: Fraction) -> Fraction:
    return (Fraction(1, 4) * (1 - p) ** 2 + p * (1 - p)) / (1 - Fraction(1, 2) * (1 - p) ** 2)


def croupier_interval(p: Fraction) -> tuple[Fraction, Fraction]:
    return (
        Fraction(1, 2) * (1 - p) ** 2 / (1 + p * p),
        Fraction(1, 2) * (1 + p) ** 2 / (1 + p * p),
    )


# runners
def _island(n) -> list[Check]:
    frame = build_frame([f"i{k}" for k in range(1, n + 1)])
    m = vacuous(frame)
    singles = [belief(m, frame.singleton(w)) for w in frame.names]
    note = "vacuous prior: belief 1 on the population, 0 on each individual"
    return [
        Check.equal("B(each individual)", [Fraction(0)] * n, singles, note),
        Check.equal("B(population)", Fraction(1), belief(m, frame.full), note),
    ]


def _forensic_uniform(p) -> list[Check]:
    m = forensic_uniform_model(p)
    pf = m.frame
    e = pf.cylinder(pf.left.mask(["E"]), LEFT)
    g = pf.cylinder(pf.right.mask(["G"]), RIGHT)
    return [
        Check.equal("B_E(G)", 1 / (1 + p), conditional_belief(m, e, g),
                    "Bayes' rule with a uniform prior gives 1/(1+p)"),
        Check.equal("B_E(G) via lift", 1 / (1 + p), lift_to_powerset(m).conditional_belief(e, g),
                    "same value through the lifted distribution"),
    ]


def _forensic_ignorant(p) -> list[Check]:
    m = forensic_ignorant_model(p)
    pf = m.frame
    e = pf.cylinder(pf.left.mask(["E"]), LEFT)
    g = pf.cylinder(pf.right.mask(["G"]), RIGHT)
    bg = conditional_belief(m, e, g)
    return [
        Check.equal("B(G)", Fraction(0), belief(m, g), "no prior belief in guilt"),
        Check.equal("B(Gc)", Fraction(0), belief(m, ~g), "no prior belief in innocence"),
        Check.equal("B_E(G)", 1 - p, bg, "p(1-p)/(p(1-p)+p^2) = 1-p"),
        Check.holds("B_E(G) below the uniform-prior answer", bg < 1 / (1 + p), bg,
                    "1-p < 1/(1+p) for 0 < p < 1"),
    ]


def _croupier(p) -> list[Check]:
    m = croupier_model(p)
    pf = m.frame
    hh, tt = pf.mask(["(h,h)"]), pf.mask(["(t,t)"])
    s = hh | tt
    m_s = condition_mass(m, s)
    b_hh, b_tt = belief(m_s, hh), belief(m_s, tt)
    low, high = croupier_interval(p)
    # classical endpoints: both croupiers push towards the same side
    classical = []
    for q in ((1 - p) / 2, (1 + p) / 2):
        bayes = independent_product(bernoulli_factor(q), bernoulli_factor(q))
        classical.append(conditional_belief(bayes, s, hh))
    return [
        Check.equal("B_S(hh)", croupier_formula(p), b_hh,
                    "closed form (1/4(1-p)^2 + p(1-p)) / (1 - 1/2(1-p)^2)"),
        Check.equal("B_S(tt)", b_hh, b_tt, "symmetry between heads and tails"),
        Check.equal("B_S(hh) + B_S(tt) = 1 - m_S(S)", 1 - m_s[s], b_hh + b_tt,
                    "conditional masses on hh, tt and S sum to one"),
        Check.equal("B_S(hh) + B_S(tt) = 1 - p^2", 1 - p * p, b_hh + b_tt,
                    "identifies m_S(S) with p^2; it is p^2 / (1 - 1/2(1-p)^2)"),
        Check.equal("classical interval", (low, high), tuple(classical),
                    "P(hh | S) for Bayesian croupiers with p1 = p2 = (1 -/+ p)/2"),
        Check.holds("B_S(hh) inside the classical interval", low <= b_hh <= high, b_hh,
                    "the belief answer lies between the classical extremes"),
    ]


def _dempster_coin(q) -> list[Check]:
    m1 = bernoulli_factor(q)
    combined = dempster_combine(m1, m1)
    frame = m1.frame
    h, t = frame.mask(["h"]), frame.mask(["t"])
    expected_h = q * q / (q * q + (1 - q) ** 2)
    return [
        Check.equal("(m1+m2)({h})", expected_h, combined[h], "q^2 / (q^2 + (1-q)^2)"),
        Check.equal("(m1+m2)({t})", 1 - expected_h, combined[t], "(1-q)^2 / (q^2 + (1-q)^2)"),
        Check.holds("combined belief in t falls below each source", combined[t] < m1[t], combined[t],
                    "agreeing sources lower the belief in tails"),
        Check.holds("diagonal conditioning agrees", diagonal_equivalence_check(m1, m1), True,
                    "conditioning the independent product on the diagonal"),
    ]


def _paradox(_) -> list[Check]:
    m = paradox_model()
    pf = m.frame
    bit = pf.left
    same = pf.mask(["(0,0)", "(1,1)"])
    y0 = pf.cylinder(bit.mask(["0"]), RIGHT)
    y1 = pf.cylinder(bit.mask(["1"]), RIGHT)
    x0 = pf.cylinder(bit.mask(["0"]), LEFT)
    x1 = pf.cylinder(bit.mask(["1"]), LEFT)
    by_y = total_belief_check(m, [y0, y1])
    by_x = total_belief_check(m, [x0, x1])
    half = Fraction(1, 2)
    return [
        Check.equal("B(x=y)", Fraction(0), belief(m, same), "no evidence links x and y"),
        Check.equal("B_{y=0}(x=y)", half, conditional_belief(m, y0, same), "given y, x=y is a fair coin"),
        Check.equal("B_{y=1}(x=y)", half, conditional_belief(m, y1, same), "given y, x=y is a fair coin"),
        Check.holds("y-partition fails the total-belief premise", not by_y.premise_holds, by_y.premise_failures,
                    "focal sets cut across y=0 and y=1"),
        Check.equal("first decomposition failure for the y-partition", x0, by_y.counterexample,
                    "A = {x=0}: B(x=0) = 1/2 but both parts have belief 0"),
        Check.holds("x-partition satisfies the lemma", by_x.premise_holds and by_x.decomposition_holds, True,
                    "every focal set lies inside x=0 or x=1"),
    ]


def _fh_vs_dempster(_) -> list[Check]:
    m = parents_model()
    frame = m.frame
    h = frame.mask(["Father", "Son"])
    father = frame.mask(["Father"])
    return [
        Check.equal("m_H({Father})", Fraction(9, 10), condition_mass(m, h)[father],
                    "evidence against the parents becomes evidence against the father"),
        Check.equal("B_H({Father})", Fraction(9, 10), conditional_belief(m, h, father), "belief conditioning"),
        Check.equal("inf P({Father} | H)", Fraction(0), fh_conditional_lower(m, father, h),
                    "P_c(Father | H) = c/(c + 1/10) with c down to 0"),
    ]


LLN_N = 2000
LLN_TRIALS = 200
LLN_EPSILON = Fraction(1, 20)
LLN_SEED = 20240917


def _lln_coin(p) -> list[Check]:
    m = croupier_factor(p)
    x = indicator(m.frame, m.frame.mask(["h"]))
    report = simulate_lln(m, x, LLN_N, LLN_TRIALS, LLN_EPSILON, LLN_SEED, exact=True)
    checks = [
        Check.holds("empirical_lower >= 0.99", report.empirical_lower >= 0.99, report.empirical_lower,
                    f"n={LLN_N}, trials={LLN_TRIALS}, eps={LLN_EPSILON}, seed={LLN_SEED}"),
        Check.holds("empirical_upper <= 0.01", report.empirical_upper <= 0.01, report.empirical_upper,
                    "sample mean rarely clears E + eps"),
    ]
    for which, emp, ex in (
        ("lower", report.empirical_lower, report.exact_lower),
        ("upper", report.empirical_upper, report.exact_upper),
    ):
        bound = 4 * report.sigma(which) + 0.02
        checks.append(Check.holds(f"empirical_{which} within 4 sigma + 0.02 of exact",
                                  abs(emp - float(ex)) <= bound, float(ex),
                                  "exact value from the Xhat convolution"))
    return checks


REGISTRY: dict[str, Scenario] = {
    s.name: s
    for s in [
        Scenario("island", "vacuous prior over the inhabitants", EXACT, _island, 5),
        Scenario("forensic-uniform", "uniform prior on guilt", EXACT, _forensic_uniform, Fraction(1, 10)),
        Scenario("forensic-ignorant", "no prior on guilt", EXACT, _forensic_ignorant, Fraction(1, 10)),
        Scenario("croupier", "two croupiers, told the results agree", EXACT, _croupier, Fraction(1, 2)),
        Scenario("dempster-coin", "Dempster's rule on two agreeing coin reports", EXACT, _dempster_coin,
                 Fraction(3, 5)),
        Scenario("paradox-xy", "conditioning on y versus on x", EXACT, _paradox),
        Scenario("fh-vs-dempster", "belief conditioning versus lower conditional probability", EXACT,
                 _fh_vs_dempster),
        Scenario("lln-coin", "weak law of large numbers for a partly known coin", STATISTICAL, _lln_coin,
                 Fraction(1, 5)),
    ]
}


def scenario_names() -> list[str]:
    return list(REGISTRY)


def run_scenario(name: str, p=None) -> ScenarioReport:
    """Run a registered scenario; ``p`` overrides its default parameter."""
    if name not in REGISTRY:
        raise UnknownScenario(f"no scenario named {name!r}; known: {', '.join(REGISTRY)}")
    scenario = REGISTRY[name]
    param = scenario.default if p is None else p
    if isinstance(param, (str, float)):
        param = Fraction(param) if isinstance(param, str) else Fraction(repr(param))
    if name == "island":
        param = int(param)
    report = ScenarioReport(scenario.name, scenario.description, scenario.tolerance, param)
    report.checks = scenario.runner(param)
    return report


def run_all() -> list[ScenarioReport]:
    return [run_scenario(name) for name in REGISTRY]
