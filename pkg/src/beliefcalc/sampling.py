"""Random rational models for sweeps and property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .frame import Frame, build_frame
from .mass import MassFunction, SetFunction
from .products import ProductFrame
from .numeric import RATIONAL


def random_frame(rng: random.Random, min_size: int = 1, max_size: int = 4) -> Frame:
    return build_frame([f"w{i}" for i in range(rng.randint(min_size, max_size))])


def random_composition(rng: random.Random, parts: int, max_denominator: int = 12) -> list[Fraction]:
    """``parts`` positive fractions with a common denominator summing to one."""
    d = rng.randint(parts, max(parts, max_denominator))
    cuts = sorted(rng.sample(range(1, d), parts - 1))
    bounds = [0, *cuts, d]
    return [Fraction(b - a, d) for a, b in zip(bounds, bounds[1:])]


def random_mass(
    frame: Frame,
    rng: random.Random,
    max_focal: int = 4,
    max_denominator: int = 12,
    numeric: str = RATIONAL,
) -> MassFunction:
    full = (1 << frame.size) - 1
    k = rng.randint(1, min(max_focal, full, max_denominator))
    focal = rng.sample(range(1, full + 1), k)
    weights = random_composition(rng, k, max_denominator)
    m = MassFunction._trusted(frame, dict(zip(focal, weights)), RATIONAL)
    return m if numeric == RATIONAL else m.to_float()


def random_probability_mass(frame: Frame, rng: random.Random, max_denominator: int = 12) -> MassFunction:
    k = rng.randint(1, min(frame.size, max_denominator))
    support = rng.sample(range(frame.size), k)
    weights = random_composition(rng, k, max_denominator)
    return MassFunction._trusted(frame, {1 << i: w for i, w in zip(support, weights)}, RATIONAL)


def random_product_mass(
    left: Frame,
    right: Frame,
    rng: random.Random,
    max_focal: int = 4,
    rectangles_only: bool = False,
) -> MassFunction:
    pf = ProductFrame.of(left, right)
    if not rectangles_only:
        return random_mass(pf, rng, max_focal)
    rects = sorted(
        {pf.rectangle(a, b).bits for a in range(1, 1 << left.size) for b in range(1, 1 << right.size)}
    )
    k = rng.randint(1, min(max_focal, len(rects)))
    weights = random_composition(rng, k)
    return MassFunction._trusted(pf, dict(zip(rng.sample(rects, k), weights)), RATIONAL)


def random_normalized_set_function(frame: Frame, rng: random.Random, max_denominator: int = 4) -> SetFunction:
    """f(empty)=0, f(full)=1, other values drawn from multiples of 1/max_denominator in [0, 1]."""
    full = (1 << frame.size) - 1
    values = [Fraction(rng.randint(0, max_denominator), max_denominator) for _ in range(full + 1)]
    values[0] = Fraction(0)
    values[full] = Fraction(1)
    return SetFunction(frame, values)
