"""Independent reference computations on frozensets, for cross-checking."""

from __future__ import annotations

import itertools
from fractions import Fraction

from beliefcalc import MassFunction


def as_sets(m: MassFunction) -> dict[frozenset, Fraction]:
    return {frozenset(m.frame.labels(c)): v for c, v in m.items()}


def powerset(labels) -> list[frozenset]:
    labels = list(labels)
    return [frozenset(c) for k in range(len(labels) + 1) for c in itertools.combinations(labels, k)]


def belief(masses: dict[frozenset, Fraction], a: frozenset) -> Fraction:
    return sum((v for c, v in masses.items() if c <= a), Fraction(0))


def plausibility(masses: dict[frozenset, Fraction], a: frozenset) -> Fraction:
    return sum((v for c, v in masses.items() if c & a), Fraction(0))


def moebius(f: dict[frozenset, Fraction]) -> dict[frozenset, Fraction]:
    """m(A) = sum over B inside A of (-1)^|A - B| f(B)."""
    out = {}
    for a in f:
        total = Fraction(0)
        for k in range(len(a) + 1):
            for b in itertools.combinations(sorted(a), k):
                total += (-1) ** (len(a) - k) * f[frozenset(b)]
        out[a] = total
    return out


def condition(masses: dict[frozenset, Fraction], h: frozenset) -> dict[frozenset, Fraction]:
    kept: dict[frozenset, Fraction] = {}
    for c, v in masses.items():
        if c & h:
            kept[c & h] = kept.get(c & h, Fraction(0)) + v
    total = sum(kept.values())
    return {c: v / total for c, v in kept.items()}


def closed_form_conditional(masses, omega: frozenset, h: frozenset, a: frozenset):
    hc = omega - h
    b_hc = belief(masses, hc)
    return (belief(masses, a | hc) - b_hc) / (1 - b_hc)


def fh_lower(masses, a: frozenset, h: frozenset):
    """Lower conditional probability of a credal set: B(A&H) / (B(A&H) + Pl(A^c & H))."""
    if plausibility(masses, h) == 0:
        return None
    ah = belief(masses, a & h)
    other = plausibility(masses, h - a)
    if other == 0:
        return Fraction(1)
    return ah / (ah + other)


def dempster(m1: dict, m2: dict) -> dict[frozenset, Fraction] | None:
    """Normalized intersection product, or None under total conflict."""
    acc: dict[frozenset, Fraction] = {}
    for b, vb in m1.items():
        for c, vc in m2.items():
            if b & c:
                acc[b & c] = acc.get(b & c, Fraction(0)) + vb * vc
    k = sum(acc.values())
    if k == 0:
        return None
    return {a: v / k for a, v in acc.items()}


def multisets(items, max_size: int) -> list[tuple]:
    out = []
    for k in range(max_size + 1):
        out.extend(itertools.combinations_with_replacement(items, k))
    return out
