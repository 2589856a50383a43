"""Coherence checks for buying prices.

``prices[S]`` is the most an agent pays for a ticket paying 1 if the outcome
lies in ``S``.  A family of bets buys tickets on ``A_1..A_N`` and sells
tickets on ``B_1..B_M``.  Each check tests a premise (the bought tickets pay
at least as much as the sold ones) and, when it holds, the constraint
``sum P(A_i) >= sum P(B_j)``.

* ``p2`` compares payouts outcome by outcome; probability measures are
  exactly the prices that never violate it.
* ``b2star`` compares guaranteed payouts under every partial knowledge
  ``S``; belief functions are exactly the prices that never violate it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import FrameMismatch, FrameTooLarge
from .frame import MAX_FRAME_SIZE, Frame, SubsetMask, as_bits
from .mass import SetFunction
from .numeric import FLOAT_TOL, geq, zero

P2 = "p2"
B2STAR = "b2star"
MAX_SEARCH_FRAME = 5
MAX_SEARCH_BETS = 3


class Verdict(enum.Enum):
    PREMISE_FAILS = "PremiseFails"
    CONSTRAINT_HOLDS = "ConstraintHolds"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class BetFamily:
    buys: tuple = ()
    sells: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "buys", tuple(self.buys))
        object.__setattr__(self, "sells", tuple(self.sells))

    def bits(self, frame: Frame) -> tuple[list[int], list[int]]:
        try:
            return [as_bits(frame, a) for a in self.buys], [as_bits(frame, b) for b in self.sells]
        except FrameMismatch:
            raise FrameMismatch("bets and prices live on different frames") from None

    def describe(self, frame: Frame) -> str:
        buys, sells = self.bits(frame)
        fmt = lambda xs: ", ".join(frame.format(x) for x in xs) or "nothing"  # noqa: E731
        return f"buy {fmt(buys)}; sell {fmt(sells)}"


def _constraint(prices: SetFunction, buys: list[int], sells: list[int]) -> Verdict:
    z = zero(prices.numeric)
    paid = sum((prices.values[a] for a in buys), z)
    received = sum((prices.values[b] for b in sells), z)
    return Verdict.CONSTRAINT_HOLDS if geq(paid, received, prices.numeric) else Verdict.VIOLATION


def check_p2(prices: SetFunction, family: BetFamily) -> Verdict:
    buys, sells = family.bits(prices.frame)
    for w in range(prices.frame.size):
        if sum(a >> w & 1 for a in buys) < sum(b >> w & 1 for b in sells):
            return Verdict.PREMISE_FAILS
    return _constraint(prices, buys, sells)


def check_b2star(prices: SetFunction, family: BetFamily) -> Verdict:
    n = prices.frame.size
    if n > MAX_FRAME_SIZE:
        raise FrameTooLarge(f"premise scan over 2**{n} sets")
    buys, sells = family.bits(prices.frame)
    for s in range(1 << n):
        if sum(s & ~a == 0 for a in buys) < sum(s & ~b == 0 for b in sells):
            return Verdict.PREMISE_FAILS
    return _constraint(prices, buys, sells)


def check_family(prices: SetFunction, family: BetFamily, mode: str) -> Verdict:
    if mode == P2:
        return check_p2(prices, family)
    if mode == B2STAR:
        return check_b2star(prices, family)
    raise ValueError(f"mode must be {P2!r} or {B2STAR!r}, got {mode!r}")


def _coverage(frame_size: int, bits: int, mode: str) -> list[int]:
    if mode == P2:
        return [bits >> w & 1 for w in range(frame_size)]
    return [int(s & ~bits == 0) for s in range(1 << frame_size)]


def multisets(frame_size: int, max_bets: int) -> list[tuple[int, ...]]:
    """All multisets of at most ``max_bets`` subsets, by size then lexicographically."""
    out: list[tuple[int, ...]] = []
    for k in range(max_bets + 1):
        out.extend(itertools.combinations_with_replacement(range(1 << frame_size), k))
    return out


def find_violation(prices: SetFunction, max_bets: int, mode: str) -> BetFamily | None:
    """First violating family with at most ``max_bets`` bets per side, or None.

    Sell-sides are scanned in :func:`multisets` order and, for each, the first
    buy-side in the same order that dominates it and costs strictly less wins.
    """
    if mode not in (P2, B2STAR):
        raise ValueError(f"mode must be {P2!r} or {B2STAR!r}, got {mode!r}")
    n = prices.frame.size
    if n > MAX_SEARCH_FRAME:
        raise FrameTooLarge(f"violation search is limited to {MAX_SEARCH_FRAME} outcomes")
    if not 0 <= max_bets <= MAX_SEARCH_BETS:
        raise ValueError(f"max_bets must be between 0 and {MAX_SEARCH_BETS}")

    sets_cov = np.array([_coverage(n, b, mode) for b in range(1 << n)], dtype=np.int16)
    families = multisets(n, max_bets)
    width = sets_cov.shape[1]
    cover = np.zeros((len(families), width), dtype=np.int16)
    exact_price = []
    z = zero(prices.numeric)
    for k, fam in enumerate(families):
        for b in fam:
            cover[k] += sets_cov[b]
        exact_price.append(sum((prices.values[b] for b in fam), z))
    approx = np.array([float(p) for p in exact_price])
    cheapest = approx.min()

    for s_idx, sells in enumerate(families):
        if approx[s_idx] <= cheapest:
            continue
        candidates = np.flatnonzero(
            (approx < approx[s_idx] + FLOAT_TOL) & np.all(cover >= cover[s_idx], axis=1)
        )
        for b_idx in candidates:
            if not geq(exact_price[b_idx], exact_price[s_idx], prices.numeric):
                frame_size = prices.frame.size
                return BetFamily(
                    tuple(SubsetMask(b, frame_size) for b in families[b_idx]),
                    tuple(SubsetMask(b, frame_size) for b in sells),
                )
    return None
