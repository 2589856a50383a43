"""Lower expectation and the law of large numbers for belief functions.

Under the iid product of a mass function, the belief that the sample mean
of ``X`` clears ``alpha`` equals the classical probability that the mean of
iid copies of ``Xhat`` clears ``alpha``, where ``Xhat`` takes the value
``min(X over C)`` with probability ``m(C)``.  :func:`exact_lln_belief` uses
that reduction; :func:`iid_power` builds the product explicitly for small
cases so the reduction can be checked.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FrameMismatch, FrameTooLarge, NumericModeMismatch
from .frame import MAX_FRAME_SIZE, Frame, Subset, SubsetMask, as_bits
from .mass import MassFunction, belief
from .numeric import FLOAT, RATIONAL, check_mode, to_scalar, zero

MAX_REPETITIONS = 10**4
# convolution table length above which the sparse fallback is used
MAX_LATTICE = 5 * 10**7
# float values are snapped to this grid before convolution
FLOAT_BUCKET = Fraction(1, 10**12)
GENERATOR = "numpy.PCG64"


@dataclass(frozen=True)
class RandomVariable:
    frame: Frame
    values: tuple
    numeric: str = RATIONAL

    def __post_init__(self):
        check_mode(self.numeric)
        vals = tuple(to_scalar(v, self.numeric) for v in self.values)
        if len(vals) != self.frame.size:
            raise ValueError(f"expected {self.frame.size} values, got {len(vals)}")
        if self.numeric == FLOAT and not all(math.isfinite(v) for v in vals):
            raise ValueError("random variable values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, frame: Frame, mapping: dict, numeric: str = RATIONAL) -> "RandomVariable":
        missing = [w for w in frame.names if w not in mapping]
        if missing:
            raise ValueError(f"no value for outcomes {missing}")
        extra = [k for k in mapping if k not in frame.names]
        if extra:
            frame.index(extra[0])
        return cls(frame, tuple(mapping[w] for w in frame.names), numeric)

    def min_over(self, bits: int):
        return min(v for i, v in enumerate(self.values) if bits >> i & 1)

    def __add__(self, other: "RandomVariable") -> "RandomVariable":
        _require_compatible(self, other)
        return RandomVariable(self.frame, tuple(a + b for a, b in zip(self.values, other.values)), self.numeric)

    def scale(self, factor) -> "RandomVariable":
        factor = to_scalar(factor, self.numeric)
        return RandomVariable(self.frame, tuple(factor * v for v in self.values), self.numeric)


def indicator(frame: Frame, subset: Subset, numeric: str = RATIONAL) -> RandomVariable:
    bits = as_bits(frame, subset)
    return RandomVariable(frame, tuple(1 if bits >> i & 1 else 0 for i in range(frame.size)), numeric)


def _require_compatible(a, b) -> None:
    if a.frame != b.frame:
        raise FrameMismatch("operands live on different frames")
    if a.numeric != b.numeric:
        raise NumericModeMismatch(f"cannot mix {a.numeric} and {b.numeric} values")


def lower_expectation(m: MassFunction, x: RandomVariable):
    """Sum over focal C of m(C) times the smallest value of X on C."""
    _require_compatible(m, x)
    return sum((v * x.min_over(c) for c, v in m.raw().items()), zero(m.numeric))


def xhat_distribution(m: MassFunction, x: RandomVariable) -> list[tuple]:
    """(value, probability) pairs of Xhat, merged by value and sorted."""
    _require_compatible(m, x)
    out: dict = {}
    for c, v in m.raw().items():
        key = x.min_over(c)
        out[key] = out.get(key, zero(m.numeric)) + v
    return sorted(out.items())


# exact belief of the sample-mean event
def _lattice(values: list[Fraction]) -> tuple[int, int, int, list[int]]:
    """Write values as offset + step * index with integer indices (in units of 1/denominator)."""
    denom = math.lcm(*(v.denominator for v in values))
    ints = [int(v * denom) for v in values]
    low = min(ints)
    step = math.gcd(*(u - low for u in ints)) or 1
    return denom, low, step, [(u - low) // step for u in ints]


def _dense_tail(indices, weights, n: int, threshold: int, exact: bool):
    length = n * max(indices) + 1
    dtype = object if exact else float
    dist = np.zeros(1, dtype=dtype)
    dist[0] = 1 if exact else 1.0
    for _ in range(n):
        new = np.zeros(len(dist) + max(indices), dtype=dtype)
        for idx, w in zip(indices, weights):
            new[idx: idx + len(dist)] += w * dist
        dist = new
    assert len(dist) == length
    if threshold <= 0:
        return dist.sum()
    if threshold >= length:
        return 0 if exact else 0.0
    return dist[threshold:].sum()


def _sparse_tail(values, probs, n: int, target, exact: bool):
    dist = {0: 1} if exact else {0: 1.0}
    for _ in range(n):
        new: dict = {}
        for s, p in dist.items():
            for v, q in zip(values, probs):
                key = s + v
                new[key] = new.get(key, 0) + p * q
        dist = new
        if len(dist) > MAX_LATTICE // 10:
            raise ValueError("sample-mean distribution has too many distinct sums")
    return sum((p for s, p in dist.items() if s >= target), 0 if exact else 0.0)


def exact_lln_belief(m: MassFunction, x: RandomVariable, n: int, alpha):
    """Belief, under the n-fold iid product, that the mean of X over n copies is >= alpha."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_REPETITIONS:
        raise ValueError(f"n = {n} exceeds the cap of {MAX_REPETITIONS}")
    pairs = xhat_distribution(m, x)
    exact = m.numeric == RATIONAL
    if exact:
        values = [Fraction(v) for v, _ in pairs]
        alpha = to_scalar(alpha, RATIONAL)
    else:
        # snap to the bucket grid so lattice arithmetic is exact
        values = [Fraction(round(Fraction(v) / FLOAT_BUCKET)) * FLOAT_BUCKET for v, _ in pairs]
        alpha = Fraction(round(Fraction(float(alpha)) / FLOAT_BUCKET)) * FLOAT_BUCKET
    probs = [p for _, p in pairs]
    denom, low, step, indices = _lattice(values)
    # sum_j (low + step * idx_j) / denom >= n * alpha
    threshold = math.ceil((n * alpha * denom - n * low) / step)
    if n * max(indices) + 1 <= MAX_LATTICE:
        if exact:
            common = math.lcm(*(p.denominator for p in probs))
            weights = [int(p * common) for p in probs]
            count = _dense_tail(indices, weights, n, threshold, True)
            return Fraction(count, common**n)
        return float(_dense_tail(indices, probs, n, threshold, False))
    ints = [int(v * denom) for v in values]
    return _sparse_tail(ints, probs, n, n * alpha * denom, exact)


# explicit iid product, for small cross-checks
def power_frame(frame: Frame, n: int) -> Frame:
    if frame.size**n > MAX_FRAME_SIZE:
        raise FrameTooLarge(f"{frame.size}**{n} outcomes exceed the cap of {MAX_FRAME_SIZE}")
    names = ["(" + ",".join(t) + ")" for t in itertools.product(frame.names, repeat=n)]
    return Frame(tuple(names))


def _tuples(k: int, n: int):
    return list(itertools.product(range(k), repeat=n))


def iid_power(m: MassFunction, n: int) -> MassFunction:
    """Mass of C_1 x ... x C_n is the product of the m(C_j)."""
    frame = power_frame(m.frame, n)
    k = m.frame.size
    tuples = _tuples(k, n)
    out = {}
    for combo in itertools.product(m.raw().items(), repeat=n):
        bits = 0
        for pos, t in enumerate(tuples):
            if all(combo[j][0] >> t[j] & 1 for j in range(n)):
                bits |= 1 << pos
        weight = math.prod((v for _, v in combo), start=1 if m.numeric == RATIONAL else 1.0)
        out[bits] = out.get(bits, zero(m.numeric)) + weight
    return MassFunction._trusted(frame, out, m.numeric)


def mean_event(x: RandomVariable, n: int, alpha) -> SubsetMask:
    """{(w_1..w_n) : mean of X(w_j) >= alpha} on the power frame."""
    frame = power_frame(x.frame, n)
    alpha = to_scalar(alpha, x.numeric)
    bits = 0
    for pos, t in enumerate(_tuples(x.frame.size, n)):
        if sum(x.values[i] for i in t) >= n * alpha:
            bits |= 1 << pos
    return SubsetMask(bits, frame.size)


def product_lln_belief(m: MassFunction, x: RandomVariable, n: int, alpha):
    """Dense oracle for :func:`exact_lln_belief` via the explicit product."""
    return belief(iid_power(m, n), mean_event(x, n, alpha))


# Monte Carlo harness
@dataclass(frozen=True)
class LLNReport:
    n: int
    trials: int
    epsilon: float
    expectation: object
    empirical_lower: float
    empirical_upper: float
    exact_lower: object = None
    exact_upper: object = None
    seed: int = 0
    generator: str = GENERATOR

    def sigma(self, which: str) -> float:
        p = float(self.exact_lower if which == "lower" else self.exact_upper)
        return math.sqrt(p * (1 - p) / self.trials)


def simulate_lln(
    m: MassFunction,
    x: RandomVariable,
    n: int,
    trials: int,
    epsilon,
    seed: int,
    *,
    exact: bool = False,
) -> LLNReport:
    """Sample n focal sets iid per trial and count how often the mean of Xhat clears E -/+ eps.

    Trial ``t`` draws from its own substream spawned from ``seed``, so results
    do not depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    if not float(epsilon) > 0:
        raise ValueError("epsilon must be positive")
    expectation = lower_expectation(m, x)
    pairs = xhat_distribution(m, x)
    values = np.array([float(v) for v, _ in pairs])
    probs = np.array([float(p) for _, p in pairs])
    probs = probs / probs.sum()
    lo = n * (float(expectation) - float(epsilon))
    hi = n * (float(expectation) + float(epsilon))
    slack = 1e-9 * max(1.0, n)
    hits_lo = hits_hi = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.Generator(np.random.PCG64(child))
        total = values[rng.choice(len(values), size=n, p=probs)].sum()
        hits_lo += int(total >= lo - slack)
        hits_hi += int(total >= hi - slack)
    exact_lower = exact_upper = None
    if exact:
        eps = epsilon
        if m.numeric == RATIONAL and isinstance(eps, float):
            eps = Fraction(repr(eps))  # 0.05 means 1/20 here, not its binary expansion
        eps = to_scalar(eps, m.numeric)
        exact_lower = exact_lln_belief(m, x, n, expectation - eps)
        exact_upper = exact_lln_belief(m, x, n, expectation + eps)
    return LLNReport(
        n=n,
        trials=trials,
        epsilon=epsilon,
        expectation=expectation,
        empirical_lower=float(hits_lo) / trials,
        empirical_upper=float(hits_hi) / trials,
        exact_lower=exact_lower,
        exact_upper=exact_upper,
        seed=seed,
    )
