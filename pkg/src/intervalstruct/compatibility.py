"""Compatibility relations between W and theta and the interval structure they induce."""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from . import _kernels as K
from . import config
from .errors import IntervalStructError, NonSerialRelation
from .finite_sets import Subset, Universe, check_same
from .interval_core import BasicSetAssignment, IntervalStructure, SetValuedMap

Element = Union[str, int]


def _index(u: Universe, x: Element) -> int:
    if isinstance(x, str):
        return u.index(x)
    i = int(x)
    if not 0 <= i < u.size:
        raise IntervalStructError(f"index {i} out of range for universe of size {u.size}")
    return i


class CompatibilityRelation:
    """A serial relation stored as ``gammas[k]``, the theta-mask compatible with ``w_k``."""

    __slots__ = ("w", "theta", "gammas")

    def __init__(self, w: Universe, theta: Universe, gammas: Iterable[int]) -> None:
        self.w = w
        self.theta = theta
        self.gammas = tuple(int(g) for g in gammas)
        if len(self.gammas) != w.size:
            raise IntervalStructError(f"need {w.size} gamma masks, got {len(self.gammas)}")
        covered = 0
        for k, g in enumerate(self.gammas):
            if g == 0:
                raise NonSerialRelation(f"{w.labels[k]} is compatible with no element of theta")
            if g >> theta.size:
                raise IntervalStructError(f"gamma mask for {w.labels[k]} out of range")
            covered |= g
        if covered != theta.full_mask:
            missing = theta.render(theta.full_mask & ~covered)
            raise NonSerialRelation(f"{missing} compatible with no element of W")

    @classmethod
    def from_pairs(cls, w: Universe, theta: Universe, pairs: Iterable[tuple[Element, Element]]):
        gammas = [0] * w.size
        for a, b in pairs:
            gammas[_index(w, a)] |= 1 << _index(theta, b)
        return cls(w, theta, gammas)

    @classmethod
    def from_gamma(cls, w: Universe, theta: Universe, gamma: Mapping[Element, Subset]):
        gammas = [0] * w.size
        for a, s in gamma.items():
            check_same(s.universe, theta)
            gammas[_index(w, a)] = s.mask
        return cls(w, theta, gammas)

    @classmethod
    def from_bsa(cls, j: BasicSetAssignment):
        """Inverse of :func:`bsa_from_gamma`: ``w in j(A)`` iff ``gamma(w) == A``."""
        return cls(j.w, j.theta, j.gamma())

    def pairs(self) -> list[tuple[str, str]]:
        return [
            (self.w.labels[k], self.theta.labels[i])
            for k, g in enumerate(self.gammas)
            for i in range(self.theta.size)
            if g >> i & 1
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompatibilityRelation):
            return NotImplemented
        return (self.w, self.theta, self.gammas) == (other.w, other.theta, other.gammas)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CompatibilityRelation({len(self.pairs())} pairs)"


def gamma(rel: CompatibilityRelation, w: Element) -> Subset:
    return Subset(rel.theta, rel.gammas[_index(rel.w, w)])


def big_gamma(rel: CompatibilityRelation, X: Subset) -> Subset:
    check_same(X.universe, rel.w)
    acc = 0
    for k, g in enumerate(rel.gammas):
        if X.mask >> k & 1:
            acc |= g
    return Subset(rel.theta, acc)


def lower_inverse(rel: CompatibilityRelation, A: Subset) -> Subset:
    """Elements of W compatible only with members of A."""
    check_same(A.universe, rel.theta)
    return Subset(rel.w, sum(1 << k for k, g in enumerate(rel.gammas) if g & ~A.mask == 0))


def upper_inverse(rel: CompatibilityRelation, A: Subset) -> Subset:
    """Elements of W compatible with at least one member of A."""
    check_same(A.universe, rel.theta)
    return Subset(rel.w, sum(1 << k for k, g in enumerate(rel.gammas) if g & A.mask))


def interval_from_compatibility(rel: CompatibilityRelation) -> IntervalStructure:
    if rel.theta.size <= config.get_dense_cap():
        lo, up = K.inverse_images(list(rel.gammas), rel.theta.size)
        return IntervalStructure(SetValuedMap(rel.theta, rel.w, lo), SetValuedMap(rel.theta, rel.w, up))
    return IntervalStructure(
        SetValuedMap(rel.theta, rel.w, func=lambda a: lower_inverse(rel, Subset(rel.theta, a)).mask),
        SetValuedMap(rel.theta, rel.w, func=lambda a: upper_inverse(rel, Subset(rel.theta, a)).mask),
        bsa_from_gamma(rel),
    )


def bsa_from_gamma(rel: CompatibilityRelation) -> BasicSetAssignment:
    """j(A) = every w whose compatible set is exactly A."""
    focal: dict[int, int] = {}
    for k, g in enumerate(rel.gammas):
        focal[g] = focal.get(g, 0) | (1 << k)
    return BasicSetAssignment(rel.theta, rel.w, focal)
