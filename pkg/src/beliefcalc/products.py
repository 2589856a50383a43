"""Product frames, marginals and independence.

Pairs are laid out row-major: the pair of left outcome ``i`` and right
outcome ``j`` has index ``i * len(right) + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FrameMismatch, NumericModeMismatch
from .frame import Frame, Subset, SubsetMask, as_bits
from .mass import MassFunction, belief_table
from .numeric import COND_TOL, RATIONAL, is_close, zero

LEFT = "left"
RIGHT = "right"


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass(frozen=True, eq=False)
class ProductFrame(Frame):
    """``left x right`` as a frame whose outcomes are ordered pairs."""

    left: Frame = None
    right: Frame = None

    @classmethod
    def of(cls, left: Frame, right: Frame) -> "ProductFrame":
        names = tuple(pair_label(a, b) for a in left.names for b in right.names)
        return cls(names, left, right)

    def __eq__(self, other):
        if not isinstance(other, ProductFrame):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def pair_index(self, i: int, j: int) -> int:
        return i * self.right.size + j

    def rectangle(self, a: Subset, b: Subset) -> SubsetMask:
        """``A x B`` for ``A`` on the left frame and ``B`` on the right frame."""
        a_bits = as_bits(self.left, a)
        b_bits = as_bits(self.right, b)
        bits = 0
        for i in range(self.left.size):
            if a_bits >> i & 1:
                bits |= b_bits << (i * self.right.size)
        return SubsetMask(bits, self.size)

    def cylinder(self, subset: Subset, axis: str) -> SubsetMask:
        """``{X in A}`` (axis left) or ``{Y in B}`` (axis right)."""
        if axis == LEFT:
            return self.rectangle(subset, self.right.full)
        if axis == RIGHT:
            return self.rectangle(self.left.full, subset)
        raise ValueError(f"axis must be 'left' or 'right', got {axis!r}")

    def project(self, subset: Subset, axis: str) -> SubsetMask:
        bits = as_bits(self, subset)
        nr = self.right.size
        row = (1 << nr) - 1
        if axis == LEFT:
            out = 0
            for i in range(self.left.size):
                if bits >> (i * nr) & row:
                    out |= 1 << i
            return SubsetMask(out, self.left.size)
        if axis == RIGHT:
            out = 0
            for i in range(self.left.size):
                out |= bits >> (i * nr) & row
            return SubsetMask(out, nr)
        raise ValueError(f"axis must be 'left' or 'right', got {axis!r}")


def product_frame(left: Frame, right: Frame) -> ProductFrame:
    return ProductFrame.of(left, right)


def _require_product(m: MassFunction) -> ProductFrame:
    if not isinstance(m.frame, ProductFrame):
        raise FrameMismatch("this operation needs a mass function on a product frame")
    return m.frame


def is_rectangle(frame: ProductFrame, subset: Subset) -> bool:
    bits = as_bits(frame, subset)
    if bits == 0:
        return True
    return frame.rectangle(frame.project(bits, LEFT), frame.project(bits, RIGHT)).bits == bits


def marginal(m: MassFunction, axis: str) -> MassFunction:
    """Mass of A is the total mass of focal sets projecting exactly onto A."""
    pf = _require_product(m)
    if axis not in (LEFT, RIGHT):
        raise ValueError(f"axis must be 'left' or 'right', got {axis!r}")
    target = pf.left if axis == LEFT else pf.right
    out: dict[int, object] = {}
    for c, v in m.raw().items():
        a = pf.project(c, axis).bits
        out[a] = out.get(a, zero(m.numeric)) + v
    return MassFunction._trusted(target, out, m.numeric)


def independent_product(m1: MassFunction, m2: MassFunction) -> MassFunction:
    if m1.numeric != m2.numeric:
        raise NumericModeMismatch(f"cannot mix {m1.numeric} and {m2.numeric} values")
    pf = ProductFrame.of(m1.frame, m2.frame)
    out = {}
    for a, va in m1.raw().items():
        for b, vb in m2.raw().items():
            out[pf.rectangle(a, b).bits] = va * vb
    return MassFunction._trusted(pf, out, m1.numeric)


@dataclass
class IndependenceReport:
    concentrates_on_rectangles: bool
    x_given_y_invariance: bool
    y_given_x_invariance: bool
    product_form: bool
    mass_factorizes: bool
    notes: list[str] = field(default_factory=list)

    @property
    def cond_invariance(self) -> bool:
        return self.x_given_y_invariance and self.y_given_x_invariance

    @property
    def independent(self) -> bool:
        return self.mass_factorizes


def _defined(denominator, numeric: str) -> bool:
    return denominator != 0 if numeric == RATIONAL else denominator >= COND_TOL


def check_independence(m: MassFunction) -> IndependenceReport:
    """Dense scans of the three independence statements and the rectangle condition."""
    pf = _require_product(m)
    numeric = m.numeric
    bel = belief_table(m).values
    full = (1 << pf.size) - 1
    nl, nr = 1 << pf.left.size, 1 << pf.right.size
    cyl_x = [pf.cylinder(a, LEFT).bits for a in range(nl)]
    cyl_y = [pf.cylinder(b, RIGHT).bits for b in range(nr)]
    notes: list[str] = []

    rectangles = all(is_rectangle(pf, c) for c in m.raw())
    if not rectangles:
        bad = next(c for c in m.raw() if not is_rectangle(pf, c))
        notes.append(f"focal set {pf.format(bad)} is not a rectangle")

    def invariant(cond_cyl, target_cyl) -> bool:
        # B_{cond}(target) == B(target) wherever conditioning is defined
        for h in cond_cyl:
            hc = full & ~h
            denominator = 1 - bel[hc]
            if not _defined(denominator, numeric):
                continue
            for t in target_cyl:
                conditional = (bel[t | hc] - bel[hc]) / denominator
                if not is_close(conditional, bel[t], numeric):
                    return False
        return True

    x_given_y = invariant(cyl_y, cyl_x)
    y_given_x = invariant(cyl_x, cyl_y)

    product_form = True
    for a in range(nl):
        for b in range(nr):
            if not is_close(bel[cyl_x[a] & cyl_y[b]], bel[cyl_x[a]] * bel[cyl_y[b]], numeric):
                product_form = False
                notes.append(
                    f"B(X in {pf.left.format(a)}; Y in {pf.right.format(b)}) differs from the product of marginals"
                )
                break
        if not product_form:
            break

    m1 = marginal(m, LEFT)
    m2 = marginal(m, RIGHT)
    factorizes = True
    for a in range(1, nl):
        for b in range(1, nr):
            rect = pf.rectangle(a, b)
            if not is_close(m[rect], m1[a] * m2[b], numeric):
                factorizes = False
                notes.append(
                    f"m(X in {pf.left.format(a)}; Y in {pf.right.format(b)}) = {m[rect]} "
                    f"but m1 * m2 = {m1[a] * m2[b]}"
                )
                break
        if not factorizes:
            break

    return IndependenceReport(rectangles, x_given_y, y_given_x, product_form, factorizes, notes)
