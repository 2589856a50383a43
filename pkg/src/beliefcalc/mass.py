"""Basic belief assignments, belief and plausibility, and the Moebius inverse.

A :class:`MassFunction` stores only its focal sets (sparse).  A
:class:`SetFunction` stores a value for every subset (dense), indexed by mask.
The two are linked by the subset-sum (zeta) transform and its inverse,
both computed in ``O(n * 2**n)`` with the usual in-place butterfly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    EmptySetMass,
    FrameMismatch,
    MassNotNormalized,
    NegativeMass,
    NonzeroEmptySet,
    NotABeliefFunction,
    NumericModeMismatch,
)
from .frame import Frame, Subset, SubsetMask, as_bits, encode_subset, popcount
from .numeric import (
    FLOAT,
    FLOAT_TOL,
    RATIONAL,
    check_mode,
    format_scalar,
    is_close,
    is_negative,
    one,
    to_scalar,
    zero,
)


def _key_bits(frame: Frame, key) -> int:
    if isinstance(key, (SubsetMask, int)) and not isinstance(key, bool):
        return as_bits(frame, key)
    return encode_subset(frame, key).bits


def _pairs(entries) -> Iterable[tuple]:
    if entries is None:
        return ()
    if isinstance(entries, Mapping):
        return entries.items()
    return entries


class MassFunction:
    """Map from focal subsets to strictly positive masses summing to one.

    ``masses`` is a mapping or an iterable of ``(subset, value)`` pairs where a
    subset is a :class:`SubsetMask`, raw bits, or an iterable of labels.
    Repeated subsets are summed.  With ``validate=False`` the raw entries are
    kept so :func:`validate_mass` can report what is wrong with them.
    """

    def __init__(self, frame: Frame, masses=None, numeric: str = RATIONAL, *, validate: bool = True):
        self.frame = frame
        self.numeric = check_mode(numeric)
        raw: dict[int, object] = {}
        for key, value in _pairs(masses):
            bits = _key_bits(frame, key)
            raw[bits] = raw.get(bits, zero(numeric)) + to_scalar(value, numeric)
        self._m = {b: v for b, v in sorted(raw.items()) if v != 0}
        if validate:
            validate_mass(self)
            if numeric == FLOAT:
                self._m = {b: v for b, v in self._m.items() if v > 0}

    @classmethod
    def _trusted(cls, frame: Frame, bits_to_mass: dict, numeric: str) -> "MassFunction":
        """Build from already-valid raw entries without re-validating."""
        m = cls.__new__(cls)
        m.frame = frame
        m.numeric = numeric
        m._m = {b: v for b, v in sorted(bits_to_mass.items()) if v != 0}
        return m

    # access
    def __getitem__(self, subset: Subset):
        return self._m.get(as_bits(self.frame, subset), zero(self.numeric))

    def raw(self) -> dict[int, object]:
        """Focal bits to mass; a copy."""
        return dict(self._m)

    def items(self) -> Iterator[tuple[SubsetMask, object]]:
        n = self.frame.size
        for bits, v in self._m.items():
            yield SubsetMask(bits, n), v

    @property
    def focal(self) -> dict[SubsetMask, object]:
        return dict(self.items())

    def __len__(self) -> int:
        return len(self._m)

    def is_bayesian(self) -> bool:
        return all(popcount(b) == 1 for b in self._m)

    def to_float(self) -> "MassFunction":
        return MassFunction._trusted(self.frame, {b: float(v) for b, v in self._m.items()}, FLOAT)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self.numeric == other.numeric and self._m == other._m

    def __hash__(self):
        return hash((self.frame, self.numeric, tuple(self._m.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{self.frame.format(b)}: {format_scalar(v)}" for b, v in self._m.items())
        return f"MassFunction({body})"


class SetFunction:
    """Dense table of one scalar per subset, indexed by mask."""

    def __init__(self, frame: Frame, values, numeric: str = RATIONAL):
        self.frame = frame
        self.numeric = check_mode(numeric)
        values = [to_scalar(v, numeric) for v in values]
        if len(values) != 1 << frame.size:
            raise ValueError(f"expected {1 << frame.size} values, got {len(values)}")
        self.values = tuple(values)

    @classmethod
    def from_mapping(cls, frame: Frame, entries, numeric: str = RATIONAL, default=0) -> "SetFunction":
        """Sparse description; unspecified subsets get ``default``."""
        values = [default] * (1 << frame.size)
        for key, value in _pairs(entries):
            values[_key_bits(frame, key)] = value
        return cls(frame, values, numeric)

    def __getitem__(self, subset: Subset):
        return self.values[as_bits(self.frame, subset)]

    def items(self) -> Iterator[tuple[SubsetMask, object]]:
        n = self.frame.size
        for bits, v in enumerate(self.values):
            yield SubsetMask(bits, n), v

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.frame == other.frame and self.numeric == other.numeric and self.values == other.values

    def __repr__(self) -> str:
        body = ", ".join(f"{self.frame.format(b)}: {format_scalar(v)}" for b, v in enumerate(self.values))
        return f"SetFunction({body})"


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Point masses on the outcomes of a frame."""

    frame: Frame
    weights: tuple
    numeric: str = RATIONAL

    def __post_init__(self):
        check_mode(self.numeric)
        w = tuple(to_scalar(x, self.numeric) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.frame.size:
            raise ValueError(f"expected {self.frame.size} weights, got {len(w)}")
        for i, x in enumerate(w):
            if is_negative(x, self.numeric):
                raise NegativeMass(f"negative probability {format_scalar(x)} on {self.frame.names[i]!r}")
        total = sum(w, zero(self.numeric))
        if not is_close(total, one(self.numeric), self.numeric):
            raise MassNotNormalized(f"probabilities sum to {format_scalar(total)}")

    def prob(self, subset: Subset):
        bits = as_bits(self.frame, subset)
        return sum((w for i, w in enumerate(self.weights) if bits >> i & 1), zero(self.numeric))

    def table(self) -> SetFunction:
        masses = [zero(self.numeric)] * (1 << self.frame.size)
        for i, w in enumerate(self.weights):
            masses[1 << i] = w
        return SetFunction(self.frame, _zeta(masses, self.frame.size, self.numeric), self.numeric)


def require_same(*items) -> None:
    """Binary operations never mix frames or numeric modes."""
    first = items[0]
    for other in items[1:]:
        if other.frame != first.frame:
            raise FrameMismatch("operands live on different frames")
        if other.numeric != first.numeric:
            raise NumericModeMismatch(f"cannot mix {first.numeric} and {other.numeric} values")


# validation
def validate_mass(m: MassFunction):
    """Check the basic belief assignment axioms; return the normalization defect."""
    numeric = m.numeric
    empty_mass = m._m.get(0, zero(numeric))
    if not is_close(empty_mass, zero(numeric), numeric):
        raise EmptySetMass(f"the empty set carries mass {format_scalar(empty_mass)}")
    for bits, v in m._m.items():
        if is_negative(v, numeric):
            raise NegativeMass(f"negative mass {format_scalar(v)} on {m.frame.format(bits)}")
    total = sum(m._m.values(), zero(numeric))
    defect = abs(total - 1)
    if not is_close(total, one(numeric), numeric):
        raise MassNotNormalized(f"masses sum to {format_scalar(total)}, not 1")
    return defect


# belief, plausibility
def belief(m: MassFunction, subset: Subset):
    a = as_bits(m.frame, subset)
    return sum((v for c, v in m._m.items() if c & ~a == 0), zero(m.numeric))


def plausibility(m: MassFunction, subset: Subset):
    a = as_bits(m.frame, subset)
    full = (1 << m.frame.size) - 1
    return one(m.numeric) - belief(m, full & ~a)


def _zeta(values, n: int, numeric: str):
    arr = np.array(values, dtype=object if numeric == RATIONAL else float)
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]
    return arr.tolist()


def _moebius(values, n: int, numeric: str):
    arr = np.array(values, dtype=object if numeric == RATIONAL else float)
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return arr.tolist()


def belief_table(m: MassFunction) -> SetFunction:
    n = m.frame.size
    dense = [zero(m.numeric)] * (1 << n)
    for bits, v in m._m.items():
        dense[bits] = v
    return SetFunction(m.frame, _zeta(dense, n, m.numeric), m.numeric)


def plausibility_table(m: MassFunction) -> SetFunction:
    bel = belief_table(m).values
    full = len(bel) - 1
    return SetFunction(m.frame, [one(m.numeric) - bel[full & ~a] for a in range(len(bel))], m.numeric)


def mobius_inverse(f: SetFunction) -> MassFunction:
    """Recover masses from a belief table by alternating sums over subsets.

    Raises :class:`NotABeliefFunction` carrying the first (mask order)
    subset whose recovered mass is negative.
    """
    numeric = f.numeric
    if not is_close(f.values[0], zero(numeric), numeric):
        raise NonzeroEmptySet(f"value at the empty set is {format_scalar(f.values[0])}, not 0")
    n = f.frame.size
    masses = _moebius(f.values, n, numeric)
    masses[0] = zero(numeric)
    for bits, v in enumerate(masses):
        if is_negative(v, numeric):
            raise NotABeliefFunction(
                f"Moebius mass of {f.frame.format(bits)} is {format_scalar(v)}",
                subset=SubsetMask(bits, n),
                value=v,
            )
    if numeric == FLOAT:
        masses = [v if v > FLOAT_TOL else 0.0 for v in masses]
    return MassFunction(f.frame, {b: v for b, v in enumerate(masses) if v != 0}, numeric)


@dataclass(frozen=True)
class BeliefCheck:
    """Outcome of :func:`is_belief_function`; truthy when the test passes."""

    is_belief: bool
    reason: str = ""
    negative_set: SubsetMask | None = None
    negative_mass: object = None
    violating_pair: tuple[SubsetMask, SubsetMask] | None = None

    def __bool__(self) -> bool:
        return self.is_belief


# the pair scan is quadratic in 2**n; past this size only the Moebius witness is given
PAIR_WITNESS_MAX_SIZE = 8


def two_monotone_violation(f: SetFunction) -> tuple[SubsetMask, SubsetMask] | None:
    """First pair (A, B) in mask order with f(A|B) + f(A&B) < f(A) + f(B)."""
    n = f.frame.size
    v = f.values
    for a in range(1 << n):
        for b in range(a + 1, 1 << n):
            lhs = v[a | b] + v[a & b]
            rhs = v[a] + v[b]
            if is_negative(lhs - rhs, f.numeric):
                return SubsetMask(a, n), SubsetMask(b, n)
    return None


def is_belief_function(f: SetFunction) -> BeliefCheck:
    """Decide by Moebius nonnegativity; add a 2-monotonicity witness when cheap."""
    numeric = f.numeric
    if not is_close(f.values[0], zero(numeric), numeric):
        return BeliefCheck(False, "value at the empty set is not 0")
    if not is_close(f.values[-1], one(numeric), numeric):
        return BeliefCheck(False, "value at the full set is not 1")
    try:
        mobius_inverse(f)
    except NotABeliefFunction as exc:
        pair = two_monotone_violation(f) if f.frame.size <= PAIR_WITNESS_MAX_SIZE else None
        return BeliefCheck(False, str(exc), exc.subset, exc.value, pair)
    return BeliefCheck(True)


# constructors
def from_probability(p: ProbabilityDistribution) -> MassFunction:
    return MassFunction(p.frame, {1 << i: w for i, w in enumerate(p.weights) if w != 0}, p.numeric)


def vacuous(frame: Frame, numeric: str = RATIONAL) -> MassFunction:
    return MassFunction(frame, {frame.full: 1}, numeric)


def point_mass(frame: Frame, label: str, numeric: str = RATIONAL) -> MassFunction:
    return MassFunction(frame, {frame.singleton(label): 1}, numeric)


def uniform(frame: Frame, numeric: str = RATIONAL) -> ProbabilityDistribution:
    w = Fraction(1, frame.size) if numeric == RATIONAL else 1.0 / frame.size
    return ProbabilityDistribution(frame, (w,) * frame.size, numeric)
