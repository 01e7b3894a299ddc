"""Pawlak approximation spaces viewed through the coarsening theta -> theta/R.

The quotient (one label per equivalence block) plays the role of W: block
``w`` is compatible with exactly its own members, so the inner and outer
reductions of A are the lower and upper inverse images of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .compatibility import CompatibilityRelation, Element, _index, interval_from_compatibility
from .errors import IntervalStructError
from .finite_sets import Subset, Universe, check_same
from .interval_core import DETERMINISTIC, NON_DETERMINISTIC, IntervalStructure, Rule


@dataclass(frozen=True)
class Partition:
    theta: Universe
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = 0
        for b in self.blocks:
            if b == 0:
                raise IntervalStructError("partition block is empty")
            if b >> self.theta.size:
                raise IntervalStructError("partition block out of range")
            if seen & b:
                raise IntervalStructError(
                    f"blocks overlap in {self.theta.render(seen & b)}"
                )
            seen |= b
        if seen != self.theta.full_mask:
            raise IntervalStructError(
                f"blocks do not cover {self.theta.render(self.theta.full_mask & ~seen)}"
            )

    def block_subsets(self) -> list[Subset]:
        return [Subset(self.theta, b) for b in self.blocks]

    def block_of(self, element: Element) -> int:
        i = _index(self.theta, element)
        return next(k for k, b in enumerate(self.blocks) if b >> i & 1)


def partition_from_blocks(theta: Universe, blocks: Iterable[Subset | Iterable[str]]) -> Partition:
    masks = []
    for b in blocks:
        if isinstance(b, Subset):
            check_same(b.universe, theta)
            masks.append(b.mask)
        else:
            masks.append(theta.subset(b).mask)
    masks.sort(key=lambda m: (m & -m))
    return Partition(theta, tuple(masks))


def partition_from_pairs(theta: Universe, pairs: Iterable[tuple[Element, Element]]) -> Partition:
    """Blocks of the equivalence closure of ``pairs``, ordered by least member."""
    rows, cols = [], []
    for a, b in pairs:
        rows.append(_index(theta, a))
        cols.append(_index(theta, b))
    n = theta.size
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    blocks: dict[int, int] = {}
    for i, lab in enumerate(labels):
        blocks[int(lab)] = blocks.get(int(lab), 0) | (1 << i)
    return Partition(theta, tuple(sorted(blocks.values(), key=lambda m: (m & -m))))


@dataclass(frozen=True)
class ApproximationSpace:
    partition: Partition
    quotient: Universe

    def __post_init__(self) -> None:
        if self.quotient.size != len(self.partition.blocks):
            raise IntervalStructError(
                f"quotient has {self.quotient.size} labels for {len(self.partition.blocks)} blocks"
            )

    @property
    def theta(self) -> Universe:
        return self.partition.theta


def make_space(partition: Partition, names: Sequence[str] | None = None) -> ApproximationSpace:
    """Quotient labels default to ``b0, b1, ...`` in block order."""
    if names is None:
        names = [f"b{i}" for i in range(len(partition.blocks))]
    return ApproximationSpace(partition, Universe(tuple(names)))


def coarsening_relation(space: ApproximationSpace) -> CompatibilityRelation:
    """Block ``w`` is compatible with each of its members."""
    return CompatibilityRelation(space.quotient, space.theta, space.partition.blocks)


def interval_from_space(space: ApproximationSpace) -> IntervalStructure:
    return interval_from_compatibility(coarsening_relation(space))


def reductions(space: ApproximationSpace, A: Subset) -> tuple[Subset, Subset]:
    """Inner (blocks inside A) and outer (blocks meeting A) reductions, as quotient subsets."""
    check_same(A.universe, space.theta)
    inner = outer = 0
    for k, b in enumerate(space.partition.blocks):
        if b & ~A.mask == 0:
            inner |= 1 << k
        if b & A.mask:
            outer |= 1 << k
    return Subset(space.quotient, inner), Subset(space.quotient, outer)


def expand(space: ApproximationSpace, blocks: Subset) -> Subset:
    """Union of the theta-blocks named by a quotient subset."""
    check_same(blocks.universe, space.quotient)
    acc = 0
    for k, b in enumerate(space.partition.blocks):
        if blocks.mask >> k & 1:
            acc |= b
    return Subset(space.theta, acc)


def lower_approx(space: ApproximationSpace, A: Subset) -> Subset:
    check_same(A.universe, space.theta)
    acc = 0
    for b in space.partition.blocks:
        if b & ~A.mask == 0:
            acc |= b
    return Subset(space.theta, acc)


def upper_approx(space: ApproximationSpace, A: Subset) -> Subset:
    check_same(A.universe, space.theta)
    acc = 0
    for b in space.partition.blocks:
        if b & A.mask:
            acc |= b
    return Subset(space.theta, acc)


def decision_rules(space: ApproximationSpace, A: Subset) -> tuple[Rule, Rule]:
    inner, outer = reductions(space, A)
    return Rule(DETERMINISTIC, inner, A), Rule(NON_DETERMINISTIC, outer, A)
