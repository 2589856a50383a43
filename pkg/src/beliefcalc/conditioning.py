"""Conditioning of masses and beliefs, the lifted distribution, total belief.

Conditioning on ``H`` moves the mass of every focal set ``B`` that meets
``H`` onto ``B & H``, drops the rest, and renormalizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import ConditioningUndefined, NotAPartition
from .frame import Subset, SubsetMask, as_bits
from .mass import MassFunction, belief, belief_table
from .numeric import COND_TOL, RATIONAL, format_scalar, is_close, zero


def _check_denominator(denominator, numeric: str, what: str) -> None:
    if numeric == RATIONAL:
        undefined = denominator == 0
    else:
        undefined = denominator < COND_TOL
    if undefined:
        raise ConditioningUndefined(f"no evidence is consistent with {what}")


def condition_mass(m: MassFunction, hypothesis: Subset) -> MassFunction:
    h = as_bits(m.frame, hypothesis)
    kept: dict[int, object] = {}
    for b, v in m.raw().items():
        meet = b & h
        if meet:
            kept[meet] = kept.get(meet, zero(m.numeric)) + v
    denominator = sum(kept.values(), zero(m.numeric))
    _check_denominator(denominator, m.numeric, m.frame.format(h))
    return MassFunction._trusted(m.frame, {b: v / denominator for b, v in kept.items()}, m.numeric)


def conditional_belief(m: MassFunction, hypothesis: Subset, subset: Subset):
    """(B(A | H^c) - B(H^c)) / (1 - B(H^c)), without building the conditional mass."""
    n = m.frame.size
    full = (1 << n) - 1
    h = as_bits(m.frame, hypothesis)
    a = as_bits(m.frame, subset)
    hc = full & ~h
    b_hc = belief(m, hc)
    _check_denominator(1 - b_hc, m.numeric, m.frame.format(h))
    return (belief(m, a | hc) - b_hc) / (1 - b_hc)


# the lifted distribution over focal sets
@dataclass(frozen=True)
class LiftedDistribution:
    """A classical distribution whose outcomes are the focal sets of a mass.

    Kept separate from :class:`~beliefcalc.frame.Frame` because the number of
    focal sets is not bounded by the frame-size cap.
    """

    source: MassFunction
    outcomes: tuple  # focal bits, in mask order
    weights: tuple

    def prob(self, event: Callable[[int], bool]):
        """Probability of the collection of focal sets selected by ``event``."""
        return sum((w for c, w in zip(self.outcomes, self.weights) if event(c)), zero(self.source.numeric))

    def belief(self, subset: Subset):
        a = as_bits(self.source.frame, subset)
        return self.prob(lambda c: c & ~a == 0)

    def conditional_mass(self, hypothesis: Subset) -> MassFunction:
        """Classically condition on the focal sets meeting H, then lump by C & H."""
        m = self.source
        h = as_bits(m.frame, hypothesis)
        consistent = self.prob(lambda c: c & h != 0)
        _check_denominator(consistent, m.numeric, m.frame.format(h))
        lumped: dict[int, object] = {}
        for c in self.outcomes:
            target = c & h
            if target and target not in lumped:
                lumped[target] = self.prob(lambda d, t=target: d & h == t) / consistent
        return MassFunction._trusted(m.frame, lumped, m.numeric)

    def conditional_belief(self, hypothesis: Subset, subset: Subset):
        m = self.source
        h = as_bits(m.frame, hypothesis)
        a = as_bits(m.frame, subset)
        consistent = self.prob(lambda c: c & h != 0)
        _check_denominator(consistent, m.numeric, m.frame.format(h))
        return self.prob(lambda c: c & h != 0 and (c & h) & ~a == 0) / consistent


def lift_to_powerset(m: MassFunction) -> LiftedDistribution:
    raw = m.raw()
    return LiftedDistribution(m, tuple(raw), tuple(raw.values()))


# total belief
@dataclass
class TotalBeliefReport:
    premise_holds: bool
    premise_failures: list[str] = field(default_factory=list)
    beliefs_sum_to_one: bool | None = None
    decomposition_holds: bool | None = None
    counterexamples: list[SubsetMask] = field(default_factory=list)

    @property
    def counterexample(self) -> SubsetMask | None:
        return self.counterexamples[0] if self.counterexamples else None


def _check_partition(m: MassFunction, parts: Sequence[Subset]) -> list[int]:
    bits = [as_bits(m.frame, p) for p in parts]
    covered = 0
    for p in bits:
        if p == 0:
            raise NotAPartition("a partition cannot contain the empty set")
        if covered & p:
            raise NotAPartition(f"part {m.frame.format(p)} overlaps an earlier part")
        covered |= p
    if covered != (1 << m.frame.size) - 1:
        missing = ((1 << m.frame.size) - 1) & ~covered
        raise NotAPartition(f"parts do not cover {m.frame.format(missing)}")
    return bits


def _weighted_conditional(m: MassFunction, table, part: int, a: int):
    """B(part) * B_part(A), reading 0 when conditioning on the part is undefined.

    Undefined conditioning means B(part^c) = 1, which forces B(part) = 0.
    """
    weight = table[part]
    if weight == 0 or (m.numeric != RATIONAL and weight < COND_TOL):
        return zero(m.numeric)
    return weight * conditional_belief(m, part, a)


def total_belief_check(m: MassFunction, parts: Sequence[Subset], *, find_counterexamples: bool = True) -> TotalBeliefReport:
    """Test the premise of the total-belief law and scan every A for the identity."""
    bits = _check_partition(m, parts)
    table = belief_table(m).values
    failures = []
    for p in bits:
        if table[p] == 0 or (m.numeric != RATIONAL and table[p] < COND_TOL):
            failures.append(f"B({m.frame.format(p)}) = 0")
    for c in m.raw():
        if not any(c & ~p == 0 for p in bits):
            failures.append(f"focal set {m.frame.format(c)} straddles parts")
    report = TotalBeliefReport(premise_holds=not failures, premise_failures=failures)
    if report.premise_holds or find_counterexamples:
        total = sum((table[p] for p in bits), zero(m.numeric))
        report.beliefs_sum_to_one = is_close(total, 1, m.numeric)
        n = m.frame.size
        for a in range(1 << n):
            rhs = sum((_weighted_conditional(m, table, p, a) for p in bits), zero(m.numeric))
            if not is_close(table[a], rhs, m.numeric):
                report.counterexamples.append(SubsetMask(a, n))
        report.decomposition_holds = report.beliefs_sum_to_one and not report.counterexamples
    return report


def describe_counterexample(m: MassFunction, parts: Sequence[Subset], subset: Subset) -> str:
    a = as_bits(m.frame, subset)
    bits = _check_partition(m, parts)
    table = belief_table(m).values
    rhs = sum((_weighted_conditional(m, table, p, a) for p in bits), zero(m.numeric))
    return f"B({m.frame.format(a)}) = {format_scalar(table[a])} but the decomposition gives {format_scalar(rhs)}"
