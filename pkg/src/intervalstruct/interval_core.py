"""Interval structures, their axioms, and basic set assignments.

An interval structure over frames ``theta`` and ``w`` is a pair of maps
``lower, upper : 2^theta -> 2^w``. The lower map satisfies L1-L4, the upper
map U1-U4, and ``upper(A) == W - lower(~A)``. A basic set assignment is a
partition of ``W`` labelled by non-empty subsets of ``theta``; the two views
are interconvertible (:func:`bounds_from_bsa`, :func:`bsa_from_interval`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Union

import numpy as np

from . import _kernels as K
from . import config
from .errors import (
    AxiomViolation,
    CapExceeded,
    DualityViolation,
    IntervalStructError,
    InvalidAssignment,
)
from .finite_sets import Subset, Universe, check_same, require_dense

SubsetLike = Union[Subset, int]


def _mask(x: SubsetLike, u: Universe) -> int:
    if isinstance(x, Subset):
        check_same(x.universe, u)
        return x.mask
    m = int(x)
    if m < 0 or m >> u.size:
        raise IntervalStructError(f"mask {m:#x} out of range for universe of size {u.size}")
    return m


class SetValuedMap:
    """A total map from subsets of ``theta`` to subsets of ``w``.

    Backed by a dense ``2^|theta|`` table when ``theta`` is within the dense
    cap. Larger frames use either a sparse table with a default value or a
    function of the argument mask.
    """

    __slots__ = ("theta", "w", "_table", "_entries", "_default", "_func")

    def __init__(
        self,
        theta: Universe,
        w: Universe,
        table: np.ndarray | None = None,
        *,
        entries: Mapping[int, int] | None = None,
        default: int = 0,
        func: Callable[[int], int] | None = None,
    ) -> None:
        self.theta = theta
        self.w = w
        self._table = None
        self._entries = None
        self._default = default
        self._func = func
        if table is not None:
            table = np.asarray(table, dtype=K.mask_dtype(w.size))
            if table.shape != (1 << theta.size,):
                raise IntervalStructError(
                    f"dense table must have {1 << theta.size} entries, got {table.shape}"
                )
            if w.size <= K.MAX_INT_WIDTH and ((table < 0) | (table > w.full_mask)).any():
                raise IntervalStructError("table entry out of range for W")
            table.setflags(write=False)
            self._table = table
        elif entries is not None:
            self._entries = dict(entries)
        elif func is None:
            raise IntervalStructError("SetValuedMap needs a table, entries, or a function")

    # construction helpers --------------------------------------------------

    @classmethod
    def from_mapping(
        cls,
        theta: Universe,
        w: Universe,
        mapping: Mapping[SubsetLike, SubsetLike],
        default: SubsetLike = 0,
    ) -> SetValuedMap:
        """Explicit entries plus a default for every other argument."""
        d = _mask(default, w)
        entries = {_mask(k, theta): _mask(v, w) for k, v in mapping.items()}
        if theta.size <= config.get_dense_cap():
            table = np.full(1 << theta.size, d, dtype=K.mask_dtype(w.size))
            for k, v in entries.items():
                table[k] = v
            return cls(theta, w, table)
        return cls(theta, w, entries=entries, default=d)

    @classmethod
    def from_function(cls, theta: Universe, w: Universe, fn: Callable[[int], int]) -> SetValuedMap:
        if theta.size <= config.get_dense_cap():
            table = np.array([fn(a) for a in range(1 << theta.size)], dtype=K.mask_dtype(w.size))
            return cls(theta, w, table)
        return cls(theta, w, func=fn)

    @classmethod
    def constant(cls, theta: Universe, w: Universe, value: SubsetLike) -> SetValuedMap:
        return cls.from_mapping(theta, w, {}, value)

    # access ----------------------------------------------------------------

    @property
    def is_dense(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise CapExceeded(
                f"map over a frame of size {self.theta.size} has no dense table"
            )
        return self._table

    def at(self, a: int) -> int:
        if self._table is not None:
            return int(self._table[a])
        if self._entries is not None:
            return self._entries.get(a, self._default)
        return self._func(a)

    def __getitem__(self, a: SubsetLike) -> Subset:
        return Subset(self.w, self.at(_mask(a, self.theta)))

    def __call__(self, a: SubsetLike) -> Subset:
        return self[a]

    def items(self) -> Iterator[tuple[Subset, Subset]]:
        t = self.table
        for a in range(len(t)):
            yield Subset(self.theta, a), Subset(self.w, int(t[a]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetValuedMap):
            return NotImplemented
        if self.theta != other.theta or self.w != other.w:
            return False
        if self.is_dense and other.is_dense:
            return bool(np.array_equal(self._table, other._table))
        if self._entries is not None and other._entries is not None:
            keys = set(self._entries) | set(other._entries)
            return self._default == other._default and all(
                self.at(k) == other.at(k) for k in keys
            )
        raise CapExceeded("cannot compare non-dense maps over large frames")

    __hash__ = None

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "sparse" if self._entries is not None else "lazy"
        return f"SetValuedMap({kind}, |theta|={self.theta.size}, |W|={self.w.size})"


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom outcome. ``results[name]`` is ``None`` on pass, else a witness tuple."""

    results: dict

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.results.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.results.items() if v is not None]

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = []
        for name, wit in self.results.items():
            if wit is None:
                out.append(f"{name} pass")
            else:
                out.append(f"{name} FAIL " + " ".join(str(s) for s in wit))
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _pair_witness(theta: Universe, hit: tuple[int, int] | None):
    if hit is None:
        return None
    return (Subset(theta, hit[0]), Subset(theta, hit[1]))


def check_lower_axioms(f: SetValuedMap) -> AxiomReport:
    """Exhaustively check L1-L4; each failure records the first offending pair."""
    require_dense(f.theta)
    t = f.table
    full = f.theta.full_mask
    return AxiomReport({
        "L1": _pair_witness(f.theta, K.first_pair_violation(t, K.UNION_SUPERSET)),
        "L2": _pair_witness(f.theta, K.first_pair_violation(t, K.MEET_EQUAL)),
        "L3": None if int(t[0]) == 0 else (f.theta.empty,),
        "L4": None if int(t[full]) == f.w.full_mask else (f.theta.full,),
    })


def check_upper_axioms(f: SetValuedMap) -> AxiomReport:
    require_dense(f.theta)
    t = f.table
    full = f.theta.full_mask
    return AxiomReport({
        "U1": _pair_witness(f.theta, K.first_pair_violation(t, K.UNION_EQUAL)),
        "U2": _pair_witness(f.theta, K.first_pair_violation(t, K.MEET_SUBSET)),
        "U3": None if int(t[0]) == 0 else (f.theta.empty,),
        "U4": None if int(t[full]) == f.w.full_mask else (f.theta.full,),
    })


def _dual_table(t: np.ndarray, w: Universe) -> np.ndarray:
    # index full ^ A is the reversed position of A
    return w.full_mask ^ t[::-1]


def duality_witness(lower: SetValuedMap, upper: SetValuedMap) -> Subset | None:
    """First A (canonical order) with ``upper(A) != W - lower(~A)``."""
    bad = np.nonzero(upper.table != _dual_table(lower.table, lower.w))[0]
    return Subset(lower.theta, int(bad[0])) if len(bad) else None


class IntervalStructure:
    """A validated (lower, upper) pair. Build with :func:`make_interval_structure`."""

    __slots__ = ("lower", "upper", "_bsa")

    def __init__(self, lower: SetValuedMap, upper: SetValuedMap, _bsa=None) -> None:
        self.lower = lower
        self.upper = upper
        self._bsa = _bsa

    @property
    def theta(self) -> Universe:
        return self.lower.theta

    @property
    def w(self) -> Universe:
        return self.lower.w

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalStructure):
            return NotImplemented
        return self.lower == other.lower and self.upper == other.upper

    __hash__ = None

    def __repr__(self) -> str:
        return f"IntervalStructure(|theta|={self.theta.size}, |W|={self.w.size})"


def make_interval_structure(lower: SetValuedMap, upper: SetValuedMap) -> IntervalStructure:
    """Validate L1-L4, U1-U4 and duality exhaustively, then wrap the pair.

    Refuses frames above the dense cap; build those through
    :func:`bounds_from_bsa` instead.
    """
    check_same(lower.theta, upper.theta)
    check_same(lower.w, upper.w)
    lo = check_lower_axioms(lower)
    if not lo.ok:
        raise AxiomViolation("lower map violates " + ", ".join(lo.failed), lo)
    up = check_upper_axioms(upper)
    if not up.ok:
        raise AxiomViolation("upper map violates " + ", ".join(up.failed), up)
    wit = duality_witness(lower, upper)
    if wit is not None:
        raise DualityViolation(f"upper({wit}) != W - lower(~{wit})", wit)
    return IntervalStructure(lower, upper)


def check_properties(F: IntervalStructure) -> AxiomReport:
    """P1 (lower <= upper), P2 (both duality forms), P3 (monotonicity of both maps)."""
    require_dense(F.theta)
    lo, up = F.lower.table, F.upper.table
    th = F.theta

    def first(mask_arr):
        idx = np.nonzero(mask_arr)[0]
        return (Subset(th, int(idx[0])),) if len(idx) else None

    p2 = first(lo[::-1] != (F.w.full_mask ^ up))
    if p2 is None:
        p2 = first(up[::-1] != (F.w.full_mask ^ lo))
    return AxiomReport({
        "P1": first((lo & ~up) != 0),
        "P2": p2,
        "P3-lower": _pair_witness(th, K.first_pair_violation(lo, K.MONOTONE)),
        "P3-upper": _pair_witness(th, K.first_pair_violation(up, K.MONOTONE)),
    })


def dualize(f: SetValuedMap, direction: str = "lower-to-upper") -> SetValuedMap:
    """``g(A) = W - f(~A)``; the same formula serves both directions."""
    if direction not in ("lower-to-upper", "upper-to-lower"):
        raise ValueError(f"unknown direction {direction!r}")
    if f.is_dense:
        return SetValuedMap(f.theta, f.w, _dual_table(f.table, f.w))
    full_t, full_w = f.theta.full_mask, f.w.full_mask
    return SetValuedMap(f.theta, f.w, func=lambda a: full_w ^ f.at(full_t ^ a))


# --------------------------------------------------------------------------
# basic set assignments
# --------------------------------------------------------------------------

class BasicSetAssignment:
    """A map from non-empty subsets of ``theta`` to disjoint subsets covering ``w``.

    Entries with an empty value are dropped, so every stored key is a focal set.
    """

    __slots__ = ("theta", "w", "_focal")

    def __init__(self, theta: Universe, w: Universe, focal: Mapping[SubsetLike, SubsetLike]) -> None:
        self.theta = theta
        self.w = w
        entries: dict[int, int] = {}
        for k, v in focal.items():
            km, vm = _mask(k, theta), _mask(v, w)
            if vm == 0:
                continue
            if km in entries:
                raise InvalidAssignment(f"duplicate key {theta.render(km)}")
            entries[km] = vm
        if 0 in entries:
            raise InvalidAssignment(f"A1: j(empty) = {w.render(entries[0])}, must be empty")
        seen = 0
        for km in sorted(entries):
            vm = entries[km]
            if seen & vm:
                raise InvalidAssignment(
                    f"A3: j({theta.render(km)}) overlaps earlier values in {w.render(seen & vm)}"
                )
            seen |= vm
        if seen != w.full_mask:
            raise InvalidAssignment(f"A2: values miss {w.render(w.full_mask & ~seen)}")
        self._focal = dict(sorted(entries.items()))

    def __getitem__(self, a: SubsetLike) -> Subset:
        return Subset(self.w, self._focal.get(_mask(a, self.theta), 0))

    def items(self) -> Iterator[tuple[Subset, Subset]]:
        for k, v in self._focal.items():
            yield Subset(self.theta, k), Subset(self.w, v)

    @property
    def masks(self) -> dict[int, int]:
        return dict(self._focal)

    def focal_sets(self) -> list[Subset]:
        return [Subset(self.theta, k) for k in self._focal]

    def __len__(self) -> int:
        return len(self._focal)

    def table(self) -> np.ndarray:
        require_dense(self.theta)
        t = np.zeros(1 << self.theta.size, dtype=K.mask_dtype(self.w.size))
        for k, v in self._focal.items():
            t[k] = v
        return t

    def gamma(self) -> list[int]:
        """Per-w focal set mask: the unique A with w in j(A)."""
        out = [0] * self.w.size
        for k, v in self._focal.items():
            i = 0
            while v:
                if v & 1:
                    out[i] = k
                v >>= 1
                i += 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasicSetAssignment):
            return NotImplemented
        return self.theta == other.theta and self.w == other.w and self._focal == other._focal

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{self.theta.render(k)}: {self.w.render(v)}" for k, v in self._focal.items())
        return f"BasicSetAssignment({body})"


def bounds_from_bsa(j: BasicSetAssignment) -> IntervalStructure:
    """Lower bound = union of j over subsets of A; upper = union over sets meeting A.

    Correct by construction, so no exhaustive validation is run. Frames above
    the dense cap get lazily evaluated maps.
    """
    if j.theta.size <= config.get_dense_cap():
        lo = K.or_over_submasks(j.table(), j.theta.size)
        lower = SetValuedMap(j.theta, j.w, lo)
        upper = SetValuedMap(j.theta, j.w, _dual_table(lower.table, j.w))
        return IntervalStructure(lower, upper, j)
    focal = list(j.masks.items())

    def lo_fn(a: int) -> int:
        acc = 0
        for k, v in focal:
            if k & ~a == 0:
                acc |= v
        return acc

    def up_fn(a: int) -> int:
        acc = 0
        for k, v in focal:
            if k & a:
                acc |= v
        return acc

    return IntervalStructure(
        SetValuedMap(j.theta, j.w, func=lo_fn), SetValuedMap(j.theta, j.w, func=up_fn), j
    )


def bsa_from_interval(F: IntervalStructure) -> BasicSetAssignment:
    """Recover j(A) = lower(A) minus the lower bounds of every proper subset of A."""
    if not F.lower.is_dense:
        if F._bsa is not None:
            return F._bsa
        raise CapExceeded("cannot extract a basic set assignment from a non-dense structure")
    jt = K.strip_below(F.lower.table, F.theta.size)
    nz = np.nonzero(jt)[0]
    return BasicSetAssignment(F.theta, F.w, {int(k): int(jt[k]) for k in nz})


# --------------------------------------------------------------------------
# decision rules
# --------------------------------------------------------------------------

DETERMINISTIC = "deterministic"
NON_DETERMINISTIC = "non-deterministic"


@dataclass(frozen=True)
class Rule:
    """``lhs -> rhs`` (deterministic) or ``lhs ~> rhs`` (non-deterministic)."""

    kind: str
    lhs: Subset
    rhs: Subset

    def __post_init__(self) -> None:
        if self.kind not in (DETERMINISTIC, NON_DETERMINISTIC):
            raise ValueError(f"unknown rule kind {self.kind!r}")

    @property
    def arrow(self) -> str:
        return "→" if self.kind == DETERMINISTIC else "⇝"

    def __str__(self) -> str:
        return f"{self.lhs} {self.arrow} {self.rhs}"


def rules_from_interval(F: IntervalStructure, include_trivial: bool = False) -> list[Rule]:
    """``lower(A) -> A`` and ``upper(A) ~> A`` for every A, canonical order.

    Trivial rules are skipped unless requested: those with an empty lower
    bound or an upper bound equal to W, and the axiomatic ones for the empty
    set and theta.
    """
    out = []
    for a, lo in F.lower.items():
        if not include_trivial and a.mask in (0, F.theta.full_mask):
            continue
        up = F.upper[a]
        if include_trivial or lo:
            out.append(Rule(DETERMINISTIC, lo, a))
        if include_trivial or up.mask != F.w.full_mask:
            out.append(Rule(NON_DETERMINISTIC, up, a))
    return out
