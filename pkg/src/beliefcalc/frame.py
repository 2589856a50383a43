"""Finite outcome spaces and subsets encoded as bitmasks.

Outcome ``i`` of a frame owns bit ``i`` of every mask on that frame.  The
bit order is the order in which labels were given and is never sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import (
    DuplicateLabel,
    EmptyLabel,
    FrameError,
    FrameMismatch,
    FrameTooLarge,
    UnknownLabel,
)

MAX_FRAME_SIZE = 24


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a frame; bit ``i`` set means outcome ``i`` is a member."""

    bits: int
    frame_size: int

    def __post_init__(self):
        if self.frame_size < 1:
            raise FrameError("frame_size must be positive")
        if not 0 <= self.bits < (1 << self.frame_size):
            raise ValueError(f"mask {self.bits:#b} out of range for frame of size {self.frame_size}")

    def _check(self, other: "SubsetMask") -> None:
        if not isinstance(other, SubsetMask):
            raise TypeError(f"expected SubsetMask, got {type(other).__name__}")
        if other.frame_size != self.frame_size:
            raise FrameMismatch(f"masks from frames of size {self.frame_size} and {other.frame_size}")

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.bits | other.bits, self.frame_size)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.bits & other.bits, self.frame_size)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.bits & ~other.bits, self.frame_size)

    def __invert__(self) -> "SubsetMask":
        return SubsetMask(~self.bits & ((1 << self.frame_size) - 1), self.frame_size)

    def issubset(self, other: "SubsetMask") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    @property
    def cardinality(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.cardinality

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        """Member indices in increasing order."""
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __repr__(self) -> str:
        return f"SubsetMask({self.bits:#0{self.frame_size + 2}b})"


@dataclass(frozen=True)
class Frame:
    """An ordered finite outcome space with distinct, non-empty labels."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise EmptyLabel("a frame needs at least one outcome")
        seen = set()
        for label in names:
            if not isinstance(label, str) or not label:
                raise EmptyLabel(f"invalid outcome label {label!r}")
            if label in seen:
                raise DuplicateLabel(f"outcome label {label!r} appears twice")
            seen.add(label)
        if len(names) > MAX_FRAME_SIZE:
            raise FrameTooLarge(f"{len(names)} outcomes exceeds the cap of {MAX_FRAME_SIZE}")
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(names)})

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"{label!r} is not an outcome of this frame") from None

    @property
    def empty(self) -> SubsetMask:
        return SubsetMask(0, self.size)

    @property
    def full(self) -> SubsetMask:
        return SubsetMask((1 << self.size) - 1, self.size)

    def mask(self, members: Iterable[str]) -> SubsetMask:
        return encode_subset(self, members)

    def singleton(self, label: str) -> SubsetMask:
        return SubsetMask(1 << self.index(label), self.size)

    def labels(self, subset: "SubsetMask | int") -> list[str]:
        bits = as_bits(self, subset)
        return [self.names[i] for i in range(self.size) if bits >> i & 1]

    def format(self, subset: "SubsetMask | int") -> str:
        return "{" + ",".join(self.labels(subset)) + "}"

    def subsets(self) -> Iterator[SubsetMask]:
        """All 2**size subsets in mask order."""
        for bits in range(1 << self.size):
            yield SubsetMask(bits, self.size)


def build_frame(labels: Iterable[str]) -> Frame:
    return Frame(tuple(labels))


def encode_subset(frame: Frame, members: Iterable[str]) -> SubsetMask:
    if isinstance(members, str):
        raise TypeError("members must be a collection of labels, not a single string")
    bits = 0
    for label in members:
        bits |= 1 << frame.index(label)
    return SubsetMask(bits, frame.size)


Subset = Union[SubsetMask, int]


def as_bits(frame: Frame, subset: Subset) -> int:
    """Raw bits of ``subset`` after checking it belongs to ``frame``."""
    if isinstance(subset, SubsetMask):
        if subset.frame_size != frame.size:
            raise FrameMismatch(
                f"mask from a frame of size {subset.frame_size} used on a frame of size {frame.size}"
            )
        return subset.bits
    if isinstance(subset, bool) or not isinstance(subset, int):
        raise TypeError(f"expected SubsetMask or int, got {type(subset).__name__}")
    if not 0 <= subset < (1 << frame.size):
        raise ValueError(f"mask {subset:#b} out of range for frame of size {frame.size}")
    return subset


# set algebra as free functions
def union(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    return a | b


def intersection(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    return a & b


def complement(a: SubsetMask) -> SubsetMask:
    return ~a


def is_subset(a: SubsetMask, b: SubsetMask) -> bool:
    return a.issubset(b)


def cardinality(a: SubsetMask) -> int:
    return a.cardinality


def popcount(bits: int) -> int:
    return bin(bits).count("1")
