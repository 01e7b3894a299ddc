"""Basic probability assignments, belief and plausibility functions.

Complete monotonicity of a belief table is tested through its Moebius
transform: a table with ``Bel(empty) = 0`` and ``Bel(theta) = 1`` is a belief
function exactly when the transform is non-negative everywhere.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from . import _kernels as K
from .errors import IntervalStructError, InvalidAssignment, NotBeliefFunction
from .finite_sets import Subset, Universe, check_same, require_dense
from .interval_core import (
    BasicSetAssignment,
    IntervalStructure,
    SubsetLike,
    _mask,
    bounds_from_bsa,
)

EPS = 1e-9


class BasicProbabilityAssignment:
    """Masses on non-empty subsets of ``theta`` summing to one. Zero masses are dropped."""

    __slots__ = ("theta", "masses")

    def __init__(self, theta: Universe, masses: Mapping[SubsetLike, float], eps: float = EPS):
        self.theta = theta
        out: dict[int, float] = {}
        for k, v in masses.items():
            km, v = _mask(k, theta), float(v)
            if not np.isfinite(v) or v < 0 or v > 1 + eps:
                raise InvalidAssignment(f"mass {v} for {theta.render(km)} outside [0, 1]")
            if v == 0:
                continue
            if km == 0:
                raise InvalidAssignment(f"M1: m(empty) = {v}, must be 0")
            out[km] = out.get(km, 0.0) + v
        total = sum(out.values())
        if abs(total - 1.0) > eps:
            raise InvalidAssignment(f"M2: masses sum to {total!r}, not 1")
        self.masses = dict(sorted(out.items()))

    def __getitem__(self, a: SubsetLike) -> float:
        return self.masses.get(_mask(a, self.theta), 0.0)

    def focal_elements(self) -> list[Subset]:
        return [Subset(self.theta, k) for k in self.masses]

    def table(self) -> np.ndarray:
        require_dense(self.theta)
        t = np.zeros(1 << self.theta.size)
        for k, v in self.masses.items():
            t[k] = v
        return t

    def __repr__(self) -> str:
        body = ", ".join(f"{self.theta.render(k)}: {v:g}" for k, v in self.masses.items())
        return f"BasicProbabilityAssignment({body})"


class SetFunction:
    """A dense real-valued table over the subsets of ``theta``."""

    __slots__ = ("theta", "values")

    def __init__(self, theta: Universe, values: Sequence[float]) -> None:
        require_dense(theta)
        values = np.array(values, dtype=np.float64)
        if values.shape != (1 << theta.size,):
            raise IntervalStructError(f"need {1 << theta.size} values, got {values.shape}")
        values.setflags(write=False)
        self.theta = theta
        self.values = values

    def __getitem__(self, a: SubsetLike) -> float:
        return float(self.values[_mask(a, self.theta)])

    def items(self):
        for a, v in enumerate(self.values):
            yield Subset(self.theta, a), float(v)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(|theta|={self.theta.size})"


def _moebius_checked(theta: Universe, values: np.ndarray, eps: float) -> np.ndarray:
    n = theta.size
    full = theta.full_mask
    if abs(values[0]) > eps:
        raise NotBeliefFunction(f"B1: Bel(empty) = {values[0]!r}", theta.empty, float(values[0]))
    if abs(values[full] - 1.0) > eps:
        raise NotBeliefFunction(f"B2: Bel(theta) = {values[full]!r}", theta.full, float(values[full]))
    m = K.moebius(values, n)
    bad = np.nonzero(m < -eps)[0]
    if len(bad):
        a = int(bad[0])
        raise NotBeliefFunction(
            f"Moebius transform is {m[a]:.3g} at {theta.render(a)}", Subset(theta, a), float(m[a])
        )
    return m


class BeliefTable(SetFunction):
    """A validated belief function: B1, B2 and a non-negative Moebius transform."""

    __slots__ = ()

    def __init__(self, theta: Universe, values: Sequence[float], eps: float = EPS) -> None:
        super().__init__(theta, values)
        _moebius_checked(theta, self.values, eps)


class ProbabilityOnW:
    __slots__ = ("w", "point_masses")

    def __init__(self, w: Universe, point_masses: Sequence[float], eps: float = EPS) -> None:
        p = np.array(point_masses, dtype=np.float64)
        if p.shape != (w.size,):
            raise IntervalStructError(f"need {w.size} point masses, got {p.shape}")
        if (p < 0).any() or not np.isfinite(p).all():
            raise InvalidAssignment("point masses must be finite and non-negative")
        if abs(p.sum() - 1.0) > eps:
            raise InvalidAssignment(f"point masses sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        self.w = w
        self.point_masses = p

    @classmethod
    def uniform(cls, w: Universe) -> ProbabilityOnW:
        return cls(w, np.full(w.size, 1.0 / w.size))

    def __call__(self, X: Subset) -> float:
        check_same(X.universe, self.w)
        return float(sum(self.point_masses[k] for k in range(self.w.size) if X.mask >> k & 1))


def bel_from_bpa(m: BasicProbabilityAssignment) -> BeliefTable:
    return BeliefTable(m.theta, K.zeta_sum(m.table(), m.theta.size))


def pl_from_bel(bel: SetFunction) -> SetFunction:
    """Pl(A) = 1 - Bel(~A)."""
    return SetFunction(bel.theta, 1.0 - bel.values[::-1])


def bpa_from_bel(bel: SetFunction, eps: float = EPS) -> BasicProbabilityAssignment:
    """Moebius inversion. Raises :class:`NotBeliefFunction` with the offending subset."""
    m = _moebius_checked(bel.theta, bel.values, eps)
    keep = np.nonzero(m > eps)[0]
    return BasicProbabilityAssignment(bel.theta, {int(a): float(m[a]) for a in keep}, eps)


def bel_from_interval(F: IntervalStructure, P: ProbabilityOnW) -> tuple[BeliefTable, SetFunction]:
    """Bel(A) = P(lower(A)) and Pl(A) = P(upper(A))."""
    check_same(F.w, P.w)
    bel = K.measure(F.lower.table, P.point_masses)
    pl = K.measure(F.upper.table, P.point_masses)
    return BeliefTable(F.theta, bel), SetFunction(F.theta, pl)


def canonical_model(bel: SetFunction) -> tuple[Universe, ProbabilityOnW, IntervalStructure]:
    """One W-element per focal element A, carrying probability m(A), with j(A) = {w_A}."""
    m = bpa_from_bel(bel)
    theta = bel.theta
    focal = list(m.masses.items())
    w = Universe(tuple("w" + theta.render(k) for k, _ in focal))
    P = ProbabilityOnW(w, [v for _, v in focal])
    j = BasicSetAssignment(theta, w, {k: 1 << i for i, (k, _) in enumerate(focal)})
    return w, P, bounds_from_bsa(j)
