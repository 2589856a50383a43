import logging
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from beliefcalc import belief_table, build_frame, is_belief_function
from beliefcalc.betting import (
    B2STAR,
    P2,
    BetFamily,
    Verdict,
    check_b2star,
    check_family,
    check_p2,
    find_violation,
    multisets,
)
from beliefcalc.errors import FrameMismatch, FrameTooLarge
from beliefcalc.mass import SetFunction
from beliefcalc.sampling import random_mass, random_normalized_set_function, random_probability_mass
from beliefcalc.scenarios import croupier_model, forensic_uniform_model, parents_model, paradox_model

F = Fraction
log = logging.getLogger(__name__)


def ignorant_prices():
    frame = build_frame(["w0", "w1"])
    return SetFunction(frame, [0, 0, 0, 1])


def superadditive_prices():
    frame = build_frame(["a", "b", "c"])
    return SetFunction.from_mapping(
        frame, {("a", "b", "c"): 1, ("a", "b"): 1, ("b", "c"): 1, ("b",): F(1, 2)}
    )


def family(frame, buys, sells):
    return BetFamily([frame.mask(list(b)) for b in buys], [frame.mask(list(s)) for s in sells])


def premise_pairs(n, max_bets, mode):
    """Index pairs (buy family, sell family) of multisets(n, max_bets) whose premise holds."""
    width = n if mode == P2 else 1 << n
    if mode == P2:
        cov = np.array([[b >> w & 1 for w in range(n)] for b in range(1 << n)], dtype=np.int16)
    else:
        cov = np.array([[int(s & ~b == 0) for s in range(1 << n)] for b in range(1 << n)], dtype=np.int16)
    fams = multisets(n, max_bets)
    cover = np.zeros((len(fams), width), dtype=np.int16)
    for k, fam in enumerate(fams):
        for b in fam:
            cover[k] += cov[b]
    buys, sells = [], []
    for s in range(len(fams)):
        ok = np.flatnonzero(np.all(cover >= cover[s], axis=1))
        buys.append(ok)
        sells.append(np.full(len(ok), s))
    return fams, np.concatenate(buys), np.concatenate(sells)


def integer_family_prices(prices, fams):
    """Family prices scaled to integers by the common denominator, so comparisons are exact."""
    d = math.lcm(*(F(v).denominator for v in prices.values))
    ints = [int(F(v) * d) for v in prices.values]
    return np.array([sum(ints[b] for b in fam) for fam in fams], dtype=np.int64)


class TestBetFamily:
    def test_describe(self):
        frame = build_frame(["a", "b"])
        assert family(frame, ["a", "b"], ["ab"]).describe(frame) == "buy {a}, {b}; sell {a,b}"
        assert BetFamily().describe(frame) == "buy nothing; sell nothing"

    def test_frame_mismatch(self):
        prices = ignorant_prices()
        other = build_frame(["x", "y", "z"])
        with pytest.raises(FrameMismatch):
            check_p2(prices, family(other, ["xyz"], []))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            check_family(ignorant_prices(), BetFamily(), "p3")


class TestCheckP2:
    def test_ignorance_violates(self):
        prices = ignorant_prices()
        fam = family(prices.frame, [["w0"], ["w1"]], [["w0", "w1"]])
        assert check_p2(prices, fam) == Verdict.VIOLATION

    def test_whole_frame_against_singletons(self):
        prices = ignorant_prices()
        fam = family(prices.frame, [["w0", "w1"]], [["w0"], ["w1"]])
        assert check_p2(prices, fam) == Verdict.CONSTRAINT_HOLDS

    def test_premise_fails(self):
        prices = ignorant_prices()
        fam = family(prices.frame, [["w0"]], [["w0", "w1"]])
        assert check_p2(prices, fam) == Verdict.PREMISE_FAILS

    def test_probability_sound(self):
        rng = random.Random(1)
        frame = build_frame(["a", "b", "c"])
        for _ in range(5):
            prices = belief_table(random_probability_mass(frame, rng))
            for buys in multisets(3, 2):
                for sells in multisets(3, 2):
                    verdict = check_p2(prices, BetFamily(buys, sells))
                    assert verdict != Verdict.VIOLATION


class TestCheckB2Star:
    def test_ignorance_is_coherent(self):
        prices = ignorant_prices()
        fam = family(prices.frame, [["w0"], ["w1"]], [["w0", "w1"]])
        assert check_b2star(prices, fam) == Verdict.PREMISE_FAILS

    def test_superadditive_violation(self):
        prices = superadditive_prices()
        fam = family(prices.frame, ["abc", "b"], ["ab", "bc"])
        assert check_b2star(prices, fam) == Verdict.VIOLATION

    def test_premise_implies_p2_premise(self):
        for n in (1, 2, 3):
            frame = build_frame([f"w{i}" for i in range(n)])
            prices = SetFunction(frame, [0] * (1 << n))
            for buys in multisets(n, 2):
                for sells in multisets(n, 2):
                    fam = BetFamily(buys, sells)
                    if check_b2star(prices, fam) != Verdict.PREMISE_FAILS:
                        assert check_p2(prices, fam) != Verdict.PREMISE_FAILS

    @pytest.mark.parametrize("model", [parents_model, paradox_model, lambda: croupier_model(F(1, 2))])
    def test_registry_beliefs_sound(self, model):
        prices = belief_table(model())
        n = prices.frame.size
        if n > 4:
            pytest.skip("exhaustive scan is sized for small frames")
        for buys in multisets(n, 2):
            for sells in multisets(n, 2):
                assert check_b2star(prices, BetFamily(buys, sells)) != Verdict.VIOLATION


class TestPremiseOracle:
    @pytest.mark.parametrize("mode", [P2, B2STAR])
    def test_matches_checkers(self, mode):
        n = 3
        fams, buys, sells = premise_pairs(n, 2, mode)
        frame = build_frame(["a", "b", "c"])
        prices = SetFunction(frame, [0] * 8)
        holding = set(zip(buys.tolist(), sells.tolist()))
        for i, bf in enumerate(fams):
            for j, sf in enumerate(fams):
                verdict = check_family(prices, BetFamily(bf, sf), mode)
                assert (verdict != Verdict.PREMISE_FAILS) == ((i, j) in holding)


class TestSoundnessSweeps:
    def test_beliefs_never_violate_b2star(self):
        rng = random.Random(2)
        for n in (1, 2, 3, 4):
            fams, buys, sells = premise_pairs(n, 3, B2STAR)
            frame = build_frame([f"w{i}" for i in range(n)])
            for _ in range(10):
                prices = integer_family_prices(belief_table(random_mass(frame, rng)), fams)
                assert np.all(prices[buys] >= prices[sells])

    def test_probabilities_never_violate_p2(self):
        rng = random.Random(3)
        for n in (1, 2, 3, 4):
            fams, buys, sells = premise_pairs(n, 3, P2)
            frame = build_frame([f"w{i}" for i in range(n)])
            for _ in range(10):
                prices = integer_family_prices(belief_table(random_probability_mass(frame, rng)), fams)
                assert np.all(prices[buys] >= prices[sells])

    def test_non_additive_beliefs_violate_p2(self):
        m = parents_model()
        assert find_violation(belief_table(m), 2, P2) is not None


class TestFindViolation:
    def test_superadditive_prices(self):
        prices = superadditive_prices()
        fam = find_violation(prices, 2, B2STAR)
        assert fam is not None
        assert check_b2star(prices, fam) == Verdict.VIOLATION
        assert not is_belief_function(prices)

    def test_ignorance_under_p2(self):
        prices = ignorant_prices()
        fam = find_violation(prices, 2, P2)
        assert fam == family(prices.frame, [["w0"], ["w1"]], [["w0", "w1"]])
        assert find_violation(prices, 2, B2STAR) is None

    @pytest.mark.parametrize(
        "model", [parents_model, paradox_model, lambda: croupier_model(F(1, 4)), lambda: forensic_uniform_model(F(1, 10))]
    )
    def test_registry_beliefs(self, model):
        prices = belief_table(model())
        if prices.frame.size > 5:
            pytest.skip("search is bounded to five outcomes")
        assert find_violation(prices, 2, B2STAR) is None

    def test_deterministic(self):
        prices = superadditive_prices()
        assert find_violation(prices, 2, B2STAR) == find_violation(prices, 2, B2STAR)

    def test_bounds(self):
        frame = build_frame([f"w{i}" for i in range(6)])
        with pytest.raises(FrameTooLarge):
            find_violation(SetFunction(frame, [0] * 64), 1, P2)
        with pytest.raises(ValueError):
            find_violation(ignorant_prices(), 4, P2)
        with pytest.raises(ValueError):
            find_violation(ignorant_prices(), 1, "b2")

    def test_float_prices(self):
        prices = superadditive_prices()
        floats = SetFunction(prices.frame, [float(v) for v in prices.values], "float")
        assert check_b2star(floats, find_violation(floats, 2, B2STAR)) == Verdict.VIOLATION

    def test_completeness_sweep(self):
        rng = random.Random(4)
        found = missed = 0
        for _ in range(60):
            frame = build_frame([f"w{i}" for i in range(rng.randint(2, 3))])
            prices = random_normalized_set_function(frame, rng)
            if is_belief_function(prices):
                assert find_violation(prices, 2, B2STAR) is None
                continue
            fam = find_violation(prices, 3, B2STAR)
            if fam is None:
                missed += 1
                log.warning("no witness within 3 bets for %s", prices.values)
            else:
                found += 1
                assert check_b2star(prices, fam) == Verdict.VIOLATION
        assert found > 0
        log.info("completeness sweep: %d witnessed, %d missed", found, missed)
