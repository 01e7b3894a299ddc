"""Finite universes, subsets as bit masks, and powerset enumeration.

Element ``i`` of a universe is bit ``i`` of a subset mask. Canonical order for
enumeration and output is ascending mask value, so element 0 varies fastest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import CapExceeded, IntervalStructError, UniverseMismatch


@dataclass(frozen=True)
class Universe:
    """An ordered, finite set of distinct labels."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise IntervalStructError("universe must have at least one element")
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if not isinstance(lab, str) or not lab:
                raise IntervalStructError(f"empty or non-string label at position {i}")
            if lab in index:
                raise IntervalStructError(f"duplicate label {lab!r}")
            index[lab] = i
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise IntervalStructError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable[str] = ()) -> Subset:
        if isinstance(labels, str):
            labels = [labels]
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return Subset(self, mask)

    def from_mask(self, mask: int) -> Subset:
        return Subset(self, mask)

    @property
    def empty(self) -> Subset:
        return Subset(self, 0)

    @property
    def full(self) -> Subset:
        return Subset(self, self.full_mask)

    def labels_of(self, mask: int) -> list[str]:
        return [lab for i, lab in enumerate(self.labels) if mask >> i & 1]

    def render(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"


def make_universe(labels: Sequence[str]) -> Universe:
    return Universe(tuple(labels))


@dataclass(frozen=True)
class Subset:
    """A subset of a :class:`Universe`, stored as a membership mask."""

    universe: Universe
    mask: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mask", int(self.mask))
        if self.mask < 0 or self.mask >> self.universe.size:
            raise IntervalStructError(
                f"mask {self.mask:#x} out of range for universe of size {self.universe.size}"
            )

    def _other(self, other: Subset) -> int:
        if not isinstance(other, Subset):
            raise TypeError(f"expected Subset, got {type(other).__name__}")
        check_same(self.universe, other.universe)
        return other.mask

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask | self._other(other))

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask & self._other(other))

    def __sub__(self, other: Subset) -> Subset:
        return Subset(self.universe, self.mask & ~self._other(other))

    def __invert__(self) -> Subset:
        return Subset(self.universe, self.universe.full_mask ^ self.mask)

    def __le__(self, other: Subset) -> bool:
        return self.mask & ~self._other(other) == 0

    def __lt__(self, other: Subset) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: Subset) -> bool:
        return other <= self

    def __gt__(self, other: Subset) -> bool:
        return other < self

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        return iter(self.universe.labels_of(self.mask))

    def __contains__(self, label: object) -> bool:
        return label in self.universe and bool(self.mask >> self.universe.index(label) & 1)

    def __str__(self) -> str:
        return self.universe.render(self.mask)

    def __repr__(self) -> str:
        return f"Subset({self})"


def check_same(u: Universe, v: Universe) -> None:
    if u is not v and u != v:
        raise UniverseMismatch(f"universe mismatch: {u.labels} vs {v.labels}")


# set_algebra as plain functions, for callers who prefer them to operators

def union(a: Subset, b: Subset) -> Subset:
    return a | b


def intersect(a: Subset, b: Subset) -> Subset:
    return a & b


def difference(a: Subset, b: Subset) -> Subset:
    return a - b


def complement(a: Subset) -> Subset:
    return ~a


def is_subset(a: Subset, b: Subset) -> bool:
    return a <= b


def cardinality(a: Subset) -> int:
    return len(a)


def require_dense(u: Universe, cap: int | None = None) -> None:
    cap = config.get_dense_cap() if cap is None else cap
    if u.size > cap:
        raise CapExceeded(f"universe of size {u.size} exceeds dense-enumeration cap {cap}")


def powerset(u: Universe, cap: int | None = None) -> Iterator[Subset]:
    """Iterate every subset of ``u`` in ascending mask order.

    Raises :class:`CapExceeded` immediately, not on first iteration.
    """
    require_dense(u, cap)
    return (Subset(u, mask) for mask in range(1 << u.size))


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, largest first, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
