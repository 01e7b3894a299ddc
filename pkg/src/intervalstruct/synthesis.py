"""Knowledge synthesis: expert lower/upper assignments to tightest interval bounds.

An :class:`Assignment` gives, for some propositions A, a lower assignment
``G(A)`` (rule ``G(A) -> A``) and an upper assignment ``Gu(A)`` (rule
``Gu(A) ~> A``). Unlisted values default to the empty set and to W.

:func:`synthesize` builds the basic set assignment of the max-min bounds in
``O(|W| * entries)`` without touching the powerset. :func:`closure_oracle`
computes the same bounds by closing the rule set under the seven inference
axioms; it is exponential and meant for cross-checking on tiny frames.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _kernels as K
from .errors import CapExceeded, Inconsistent
from .finite_sets import Subset, Universe, check_same, require_dense
from .interval_core import (
    DETERMINISTIC,
    NON_DETERMINISTIC,
    AxiomReport,
    BasicSetAssignment,
    IntervalStructure,
    Rule,
    SetValuedMap,
    SubsetLike,
    _mask,
    _pair_witness,
    bounds_from_bsa,
    rules_from_interval,
)

ORACLE_MAX_THETA = 3
ORACLE_MAX_W = 4


class Assignment:
    """Sparse expert lower and upper assignments.

    Explicit entries are kept in the order given. ``lower(A) <= upper(A)`` is
    not enforced here: a crossing pair is a contradiction between rules and
    is reported by :func:`synthesize` like any other.
    """

    __slots__ = ("theta", "w", "lower", "upper")

    def __init__(
        self,
        theta: Universe,
        w: Universe,
        lower: Mapping[SubsetLike, SubsetLike] | None = None,
        upper: Mapping[SubsetLike, SubsetLike] | None = None,
    ) -> None:
        self.theta = theta
        self.w = w
        self.lower: dict[int, int] = {}
        self.upper: dict[int, int] = {}
        for k, v in (lower or {}).items():
            km = _mask(k, theta)
            self.lower[km] = self.lower.get(km, 0) | _mask(v, w)
        for k, v in (upper or {}).items():
            km = _mask(k, theta)
            self.upper[km] = self.upper.get(km, w.full_mask) & _mask(v, w)

    def lower_at(self, a: int) -> int:
        return self.lower.get(a, 0)

    def upper_at(self, a: int) -> int:
        return self.upper.get(a, self.w.full_mask)

    def __repr__(self) -> str:
        return f"Assignment({len(self.lower)} lower, {len(self.upper)} upper)"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Subset | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# --------------------------------------------------------------------------
# the algorithm
# --------------------------------------------------------------------------

def _normalize_masks(g: Assignment) -> dict[int, int]:
    gp = {a: v for a, v in g.lower.items() if v}
    full_t, full_w = g.theta.full_mask, g.w.full_mask
    for a, up in g.upper.items():
        extra = full_w & ~up
        if extra:
            na = full_t ^ a
            gp[na] = gp.get(na, 0) | extra
    return dict(sorted(gp.items()))


def normalize(g: Assignment) -> dict[Subset, Subset]:
    """Fold each upper rule ``Gu(A) ~> A`` into the lower assignment of ~A.

    Returns the non-empty entries of the normalized lower map in canonical order.
    """
    return {Subset(g.theta, a): Subset(g.w, v) for a, v in _normalize_masks(g).items()}


def synthesize(g: Assignment) -> BasicSetAssignment:
    """Basic set assignment of the tightest bounds inside ``g``.

    Each w goes to the intersection of every proposition whose normalized
    lower assignment contains it, or to theta when there is none. An empty
    intersection raises :class:`Inconsistent` naming w and those propositions.
    """
    gp = _normalize_masks(g)
    j: dict[int, int] = {}
    for k in range(g.w.size):
        bit = 1 << k
        meet = g.theta.full_mask
        hits = []
        for a, v in gp.items():
            if v & bit:
                meet &= a
                hits.append(a)
        if hits and meet == 0:
            props = ", ".join(g.theta.render(a) for a in hits)
            raise Inconsistent(
                f"no interval structure: {g.w.labels[k]} is forced into {props}, "
                "which have empty intersection",
                element=g.w.labels[k],
                subsets=[Subset(g.theta, a) for a in hits],
            )
        j[meet] = j.get(meet, 0) | bit
    return BasicSetAssignment(g.theta, g.w, j)


def max_min_bounds(j: BasicSetAssignment) -> IntervalStructure:
    return bounds_from_bsa(j)


def check_inside(F: IntervalStructure, g: Assignment) -> Verdict:
    """True iff ``G(A) <= lower(A) <= upper(A) <= Gu(A)`` for every A."""
    check_same(F.theta, g.theta)
    check_same(F.w, g.w)
    require_dense(F.theta)
    lo, up = F.lower.table, F.upper.table
    for a in range(len(lo)):
        lo_a, up_a = int(lo[a]), int(up[a])
        if g.lower_at(a) & ~lo_a:
            return Verdict(False, Subset(F.theta, a), "lower assignment exceeds lower bound")
        if lo_a & ~up_a:
            return Verdict(False, Subset(F.theta, a), "lower bound exceeds upper bound")
        if up_a & ~g.upper_at(a):
            return Verdict(False, Subset(F.theta, a), "upper bound exceeds upper assignment")
    return Verdict(True)


# --------------------------------------------------------------------------
# rule sets and the inference-axiom closure
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleSet:
    theta: Universe
    w: Universe
    rules: frozenset

    def __post_init__(self) -> None:
        for r in self.rules:
            check_same(r.lhs.universe, self.w)
            check_same(r.rhs.universe, self.theta)

    def __iter__(self):
        return iter(sorted(self.rules, key=lambda r: (r.rhs.mask, r.kind, r.lhs.mask)))

    def __len__(self) -> int:
        return len(self.rules)


def rules_from_assignment(g: Assignment) -> RuleSet:
    """The explicit, non-trivial rules of ``g``."""
    rules = set()
    for a, v in g.lower.items():
        if v:
            rules.add(Rule(DETERMINISTIC, Subset(g.w, v), Subset(g.theta, a)))
    for a, v in g.upper.items():
        if v != g.w.full_mask:
            rules.add(Rule(NON_DETERMINISTIC, Subset(g.w, v), Subset(g.theta, a)))
    return RuleSet(g.theta, g.w, frozenset(rules))


def ruleset_from_interval(F: IntervalStructure) -> RuleSet:
    return RuleSet(F.theta, F.w, frozenset(rules_from_interval(F)))


def closure_oracle(
    d: RuleSet, max_theta: int = ORACLE_MAX_THETA, max_w: int = ORACLE_MAX_W
) -> tuple[SetValuedMap, SetValuedMap]:
    """Max lower and min upper bounds by closing ``d`` under the inference axioms.

    Per proposition A only the extreme left-hand sides are tracked: the union
    of all derived ``X -> A`` (down-closed by I6, union-closed by I5 with B =
    theta) and the intersection of all derived ``Y ~> A`` (up-closed by I7,
    meet-closed by I3 with B = theta). I1-I5 are applied to those extremes
    until nothing changes. The closure starts from ``W -> theta``, which every
    interval structure satisfies but the axioms cannot derive.

    Raises :class:`Inconsistent` (``subset`` = first A) when some max lower
    bound is not inside the min upper bound.
    """
    theta, w = d.theta, d.w
    if theta.size > max_theta or w.size > max_w:
        raise CapExceeded(
            f"closure oracle limited to |theta| <= {max_theta}, |W| <= {max_w}; "
            f"got {theta.size}, {w.size}"
        )
    size = 1 << theta.size
    full_t, full_w = theta.full_mask, w.full_mask
    lo = [0] * size
    up = [full_w] * size
    lo[full_t] = full_w
    for r in d.rules:
        if r.kind == DETERMINISTIC:
            lo[r.rhs.mask] |= r.lhs.mask
        else:
            up[r.rhs.mask] &= r.lhs.mask

    changed = True
    while changed:
        changed = False
        for a in range(size):
            na = full_t ^ a
            # I1: X ~> A, Y -> ~A  gives  X - Y ~> A
            u = up[a] & ~lo[na]
            # I2: X ~> ~A, Y -> A  gives  Y | (W - X) -> A
            l = lo[a] | (full_w & ~up[na])
            if u != up[a] or l != lo[a]:
                up[a], lo[a] = u, l
                changed = True
        for a in range(size):
            for b in range(size):
                c = a & b
                # I3: X ~> A, Y ~> B, Z ~> A&B  gives  X&Y&Z ~> A&B
                u = up[c] & up[a] & up[b]
                # I4: X -> A, Y -> B, Z -> A&B  gives  (X&Y)|Z -> A&B
                l = lo[c] | (lo[a] & lo[b])
                if u != up[c] or l != lo[c]:
                    up[c], lo[c] = u, l
                    changed = True
                # I5: X -> A&B, Y -> A  gives  X|Y -> A
                if lo[c] & ~lo[a]:
                    lo[a] |= lo[c]
                    changed = True

    for a in range(size):
        if lo[a] & ~up[a]:
            raise Inconsistent(
                f"no interval structure: max lower bound {w.render(lo[a])} of "
                f"{theta.render(a)} exceeds min upper bound {w.render(up[a])}",
                subset=Subset(theta, a),
            )
    dtype = K.mask_dtype(w.size)
    return (
        SetValuedMap(theta, w, np.array(lo, dtype=dtype)),
        SetValuedMap(theta, w, np.array(up, dtype=dtype)),
    )


# --------------------------------------------------------------------------
# incidence structures
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IncidenceBounds:
    inf: SetValuedMap
    sup: SetValuedMap

    def __post_init__(self) -> None:
        check_same(self.inf.theta, self.sup.theta)
        check_same(self.inf.w, self.sup.w)

    @property
    def theta(self) -> Universe:
        return self.inf.theta

    @property
    def w(self) -> Universe:
        return self.inf.w

    @classmethod
    def from_interval(cls, F: IntervalStructure) -> IncidenceBounds:
        return cls(F.lower, F.upper)


def check_incidence_structure(i: SetValuedMap) -> AxiomReport:
    """I1 (``i(A|B) == i(A) | i(B)``) and I2 (``i(~A) == W - i(A)``), exhaustively."""
    require_dense(i.theta)
    t = i.table
    bad = np.nonzero(t[::-1] != (i.w.full_mask ^ t))[0]
    return AxiomReport({
        "I1": _pair_witness(i.theta, K.first_pair_violation(t, K.UNION_EQUAL)),
        "I2": (Subset(i.theta, int(bad[0])),) if len(bad) else None,
    })


def check_bounded(i: SetValuedMap, bounds: IncidenceBounds) -> Verdict:
    """True iff ``inf(A) <= i(A) <= sup(A)`` for every A."""
    check_same(i.theta, bounds.theta)
    check_same(i.w, bounds.w)
    require_dense(i.theta)
    t, lo, hi = i.table, bounds.inf.table, bounds.sup.table
    below = np.nonzero((lo & ~t) != 0)[0]
    above = np.nonzero((t & ~hi) != 0)[0]
    first = min([int(x[0]) for x in (below, above) if len(x)], default=None)
    if first is None:
        return Verdict(True)
    reason = "inf exceeds incidence" if len(below) and below[0] == first else "incidence exceeds sup"
    return Verdict(False, Subset(i.theta, first), reason)


def incidence_from_selector(j: BasicSetAssignment) -> SetValuedMap:
    """Incidence of the selector sending each w to the least element of its focal set."""
    require_dense(j.theta)
    picks = [g & -g for g in j.gamma()]
    lo, _ = K.inverse_images(picks, j.theta.size)
    return SetValuedMap(j.theta, j.w, lo)
