"""The set of distributions compatible with a mass function.

Every compatible distribution spreads each focal mass ``m(C)`` over the
members of ``C``.  Its extreme points put each ``m(C)`` on a single member,
so linear and linear-fractional objectives are optimized by scanning those
allocations; no LP solver is involved.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConditionImpossible, ConditioningUndefined, TooManyExtremePoints
from .frame import Subset, as_bits
from .mass import MassFunction, ProbabilityDistribution, belief
from .numeric import COND_TOL, RATIONAL, is_close, zero

MAX_ALLOCATIONS = 10**6


@dataclass(frozen=True)
class AllocationChoice:
    """For focal set number ``k`` (mask order), the outcome receiving all of its mass."""

    choices: tuple

    def distribution(self, m: MassFunction) -> ProbabilityDistribution:
        weights = [zero(m.numeric)] * m.frame.size
        for (c, v), i in zip(m.raw().items(), self.choices):
            if not c >> i & 1:
                raise ValueError(f"outcome {m.frame.names[i]!r} is not in {m.frame.format(c)}")
            weights[i] += v
        return ProbabilityDistribution(m.frame, tuple(weights), m.numeric)


def allocation_count(m: MassFunction) -> int:
    return math.prod(bin(c).count("1") for c in m.raw())


def allocations(m: MassFunction):
    """Every single-member allocation, in lexicographic order of choices."""
    count = allocation_count(m)
    if count > MAX_ALLOCATIONS:
        raise TooManyExtremePoints(f"{count} allocations exceed the cap of {MAX_ALLOCATIONS}")
    members = [[i for i in range(m.frame.size) if c >> i & 1] for c in m.raw()]
    for choice in itertools.product(*members):
        yield AllocationChoice(choice)


class CredalSet:
    """Vertices of the compatible set, deduplicated by exact weight vectors."""

    def __init__(self, m: MassFunction):
        self.mass = m
        n = m.frame.size
        masses = list(m.raw().values())
        seen = {}
        for alloc in allocations(m):
            weights = [zero(m.numeric)] * n
            for v, i in zip(masses, alloc.choices):
                weights[i] += v
            seen.setdefault(tuple(weights), None)
        self.vertices = list(seen)

    def __len__(self) -> int:
        return len(self.vertices)

    def distributions(self) -> list[ProbabilityDistribution]:
        m = self.mass
        return [ProbabilityDistribution(m.frame, w, m.numeric) for w in self.vertices]

    def _members(self, bits: int) -> list[int]:
        return [i for i in range(self.mass.frame.size) if bits >> i & 1]

    def probabilities(self, subset: Subset) -> list:
        idx = self._members(as_bits(self.mass.frame, subset))
        z = zero(self.mass.numeric)
        return [sum((w[i] for i in idx), z) for w in self.vertices]

    def lower(self, subset: Subset):
        return min(self.probabilities(subset))

    def upper(self, subset: Subset):
        return max(self.probabilities(subset))

    def _ratios(self, a: int, h: int, keep=None):
        numeric = self.mass.numeric
        num = self.probabilities(a & h)
        den = self.probabilities(h)
        for k, (x, y) in enumerate(zip(num, den)):
            if keep is not None and not keep[k]:
                continue
            if y == 0 or (numeric != RATIONAL and y < COND_TOL):
                continue
            yield x / y

    def fh_lower(self, subset: Subset, hypothesis: Subset):
        """inf P(A|H) over vertices; vertices with P(H) = 0 are skipped."""
        frame = self.mass.frame
        values = list(self._ratios(as_bits(frame, subset), as_bits(frame, hypothesis)))
        if not values:
            raise ConditionImpossible(f"every compatible distribution gives {frame.format(hypothesis)} probability 0")
        return min(values)

    def compatible_lower(self, subset: Subset, hypothesis: Subset):
        """inf P(A|H) over vertices that put the least possible probability on H^c."""
        m = self.mass
        frame = m.frame
        h = as_bits(frame, hypothesis)
        hc = ((1 << frame.size) - 1) & ~h
        floor = belief(m, hc)
        if floor == 1 or (m.numeric != RATIONAL and 1 - floor < COND_TOL):
            raise ConditioningUndefined(f"no evidence is consistent with {frame.format(h)}")
        keep = [is_close(p, floor, m.numeric) for p in self.probabilities(hc)]
        values = list(self._ratios(as_bits(frame, subset), h, keep))
        if not values:
            raise ConditionImpossible(f"no vertex attains P({frame.format(hc)}) = B({frame.format(hc)})")
        return min(values)


@lru_cache(maxsize=256)
def credal_set(m: MassFunction) -> CredalSet:
    return CredalSet(m)


def extreme_points(m: MassFunction) -> list[ProbabilityDistribution]:
    return credal_set(m).distributions()


def lower_probability(m: MassFunction, subset: Subset):
    return credal_set(m).lower(subset)


def upper_probability(m: MassFunction, subset: Subset):
    return credal_set(m).upper(subset)


def fh_conditional_lower(m: MassFunction, subset: Subset, hypothesis: Subset):
    return credal_set(m).fh_lower(subset, hypothesis)


def compatible_conditional_lower(m: MassFunction, subset: Subset, hypothesis: Subset):
    return credal_set(m).compatible_lower(subset, hypothesis)
