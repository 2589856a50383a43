"""Dempster's rule of combination: reference and critique only.

Nothing else in the package uses this rule for inference.  It exists so the
diagonal-conditioning equivalence and the biased-coin counterexample can be
reproduced and tested.
"""

from __future__ import annotations

from .conditioning import condition_mass
from .errors import FrameTooLarge, TotalConflict
from .frame import MAX_FRAME_SIZE, SubsetMask
from .mass import MassFunction, require_same
from .numeric import COND_TOL, FLOAT_TOL, RATIONAL, zero
from .products import ProductFrame, independent_product


def dempster_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Normalized intersection product of two masses on the same frame."""
    require_same(m1, m2)
    numeric = m1.numeric
    acc: dict[int, object] = {}
    for b, vb in m1.raw().items():
        for c, vc in m2.raw().items():
            meet = b & c
            if meet:
                acc[meet] = acc.get(meet, zero(numeric)) + vb * vc
    agreement = sum(acc.values(), zero(numeric))
    if agreement == 0 or (numeric != RATIONAL and agreement < COND_TOL):
        raise TotalConflict("the two masses are in total conflict")
    return MassFunction._trusted(m1.frame, {a: v / agreement for a, v in acc.items()}, numeric)


def diagonal(frame: ProductFrame) -> SubsetMask:
    """{(w, w)} on the square of a frame."""
    n = frame.left.size
    bits = 0
    for i in range(n):
        bits |= 1 << frame.pair_index(i, i)
    return SubsetMask(bits, frame.size)


def diagonal_conditioning(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Condition the independent product on equal outcomes and map back to the base frame."""
    require_same(m1, m2)
    n = m1.frame.size
    if n * n > MAX_FRAME_SIZE:
        raise FrameTooLarge(f"the square of a {n}-outcome frame exceeds the cap of {MAX_FRAME_SIZE}")
    product = independent_product(m1, m2)
    pf = product.frame
    conditioned = condition_mass(product, diagonal(pf))
    back: dict[int, object] = {}
    for c, v in conditioned.raw().items():
        bits = 0
        for i in range(n):
            if c >> pf.pair_index(i, i) & 1:
                bits |= 1 << i
        back[bits] = v
    return MassFunction._trusted(m1.frame, back, m1.numeric)


def diagonal_equivalence_check(m1: MassFunction, m2: MassFunction) -> bool:
    """Whether Dempster's rule equals conditioning the independent product on the diagonal."""
    combined = dempster_combine(m1, m2)
    via_product = diagonal_conditioning(m1, m2)
    if m1.numeric == RATIONAL:
        return combined == via_product
    a, b = combined.raw(), via_product.raw()
    return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= FLOAT_TOL for k in set(a) | set(b))
