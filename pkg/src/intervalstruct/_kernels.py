"""Dense-table kernels over the subset lattice of a frame with ``n`` elements.

Every table is a 1-D array of length ``2**n`` indexed by subset mask (element
``i`` is bit ``i``). Set-valued tables hold W-masks; they are ``int64`` when
``|W| <= 63`` and ``object`` (Python ints) otherwise. Only the numpy path
handles object tables.

Each kernel has a numba implementation that walks submasks / pairs directly
and a pure-numpy implementation that uses axis-wise transforms on the
``(2,)*n`` reshaped table. ``INTERVALSTRUCT_BACKEND=numpy`` forces the latter.
"""

from __future__ import annotations

import contextlib
import os
from typing import Iterator

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKENDS = ("numba", "numpy")
MAX_INT_WIDTH = 63

_backend = os.environ.get("INTERVALSTRUCT_BACKEND", "numba").strip().lower()
if _backend not in BACKENDS:
    raise ValueError(f"INTERVALSTRUCT_BACKEND must be one of {BACKENDS}, got {_backend!r}")


def get_backend() -> str:
    """Return the backend actually in effect (numba falls back to numpy if absent)."""
    if _backend == "numba" and not HAVE_NUMBA:
        return "numpy"
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {name!r}")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str) -> Iterator[None]:
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def mask_dtype(width: int):
    return np.int64 if width <= MAX_INT_WIDTH else object


def _jit_ok(*arrays: np.ndarray) -> bool:
    return get_backend() == "numba" and all(a.dtype != object for a in arrays)


def _cube(table: np.ndarray, n: int) -> np.ndarray:
    # C-order reshape: axis k carries bit n-1-k; transforms below are axis-symmetric.
    return table.reshape((2,) * n) if n else table.reshape(())


# --------------------------------------------------------------------------
# lower bound: OR of j over submasks
# --------------------------------------------------------------------------

@njit(cache=True)
def _or_over_submasks_nb(j):
    size = j.shape[0]
    out = np.zeros(size, dtype=np.int64)
    for a in range(size):
        acc = j[0]
        sub = a
        while sub > 0:
            acc |= j[sub]
            sub = (sub - 1) & a
        out[a] = acc
    return out


def _or_over_submasks_np(j: np.ndarray, n: int) -> np.ndarray:
    t = _cube(j.copy(), n)
    for ax in range(n):
        t = np.bitwise_or.accumulate(t, axis=ax)
    return t.reshape(-1)


def or_over_submasks(j: np.ndarray, n: int) -> np.ndarray:
    """``out[A] = OR_{B subseteq A} j[B]``."""
    if _jit_ok(j):
        return _or_over_submasks_nb(j)
    return _or_over_submasks_np(j, n)


# --------------------------------------------------------------------------
# j(A) = lower(A) minus everything below A
# --------------------------------------------------------------------------

@njit(cache=True)
def _strip_below_nb(lower, n):
    size = lower.shape[0]
    out = np.zeros(size, dtype=np.int64)
    for a in range(size):
        below = np.int64(0)
        sub = (a - 1) & a
        while True:
            if sub != a:
                below |= lower[sub]
            if sub == 0:
                break
            sub = (sub - 1) & a
        out[a] = lower[a] & ~below
    return out


def _strip_below_np(lower: np.ndarray, n: int) -> np.ndarray:
    # For a monotone table the union over proper submasks equals the union
    # over the n maximal ones, A minus one element.
    idx = np.arange(lower.shape[0])
    below = np.zeros_like(lower)
    if lower.dtype == object:
        below[:] = 0
    for i in range(n):
        has = (idx >> i) & 1 == 1
        below[has] = below[has] | lower[idx[has] ^ (1 << i)]
    return lower & ~below


def strip_below(lower: np.ndarray, n: int) -> np.ndarray:
    """``out[A] = lower[A] - OR_{B proper subset of A} lower[B]``.

    The numba path unions every proper submask; the numpy path assumes the
    table is monotone (true for any validated lower map).
    """
    if _jit_ok(lower):
        return _strip_below_nb(lower, n)
    return _strip_below_np(lower, n)


# --------------------------------------------------------------------------
# numeric zeta / Moebius transforms
# --------------------------------------------------------------------------

@njit(cache=True)
def _zeta_sum_nb(m):
    size = m.shape[0]
    out = np.zeros(size, dtype=np.float64)
    for a in range(size):
        acc = m[0]
        sub = a
        while sub > 0:
            acc += m[sub]
            sub = (sub - 1) & a
        out[a] = acc
    return out


@njit(cache=True)
def _popcount_nb(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _moebius_nb(bel):
    size = bel.shape[0]
    out = np.zeros(size, dtype=np.float64)
    for a in range(size):
        acc = 0.0
        sub = a
        while True:
            if _popcount_nb(a ^ sub) & 1:
                acc -= bel[sub]
            else:
                acc += bel[sub]
            if sub == 0:
                break
            sub = (sub - 1) & a
        out[a] = acc
    return out


def zeta_sum(m: np.ndarray, n: int) -> np.ndarray:
    """``out[A] = sum_{B subseteq A} m[B]``."""
    m = np.ascontiguousarray(m, dtype=np.float64)
    if _jit_ok(m):
        return _zeta_sum_nb(m)
    t = _cube(m.copy(), n)
    for ax in range(n):
        t = np.cumsum(t, axis=ax)
    return t.reshape(-1)


def moebius(bel: np.ndarray, n: int) -> np.ndarray:
    """``out[A] = sum_{B subseteq A} (-1)^{|A-B|} bel[B]``."""
    bel = np.ascontiguousarray(bel, dtype=np.float64)
    if _jit_ok(bel):
        return _moebius_nb(bel)
    t = _cube(bel.copy(), n)
    for ax in range(n):
        t = np.diff(t, axis=ax, prepend=0.0)
    return t.reshape(-1)


# --------------------------------------------------------------------------
# exhaustive pair checks
# --------------------------------------------------------------------------

# pair-check modes; each names the condition whose *failure* is reported
UNION_SUPERSET = 0      # t[A|B] >= t[A] | t[B]
MEET_EQUAL = 1          # t[A&B] == t[A] & t[B]
UNION_EQUAL = 2         # t[A|B] == t[A] | t[B]
MEET_SUBSET = 3         # t[A&B] <= t[A] & t[B]
MONOTONE = 4            # A <= B implies t[A] <= t[B]   (not symmetric)


@njit(cache=True)
def _first_pair_violation_nb(t, mode):
    size = t.shape[0]
    for a in range(size):
        fa = t[a]
        start = 0 if mode == 4 else a
        for b in range(start, size):
            fb = t[b]
            if mode == 0:
                bad = ((fa | fb) & ~t[a | b]) != 0
            elif mode == 1:
                bad = t[a & b] != (fa & fb)
            elif mode == 2:
                bad = t[a | b] != (fa | fb)
            elif mode == 3:
                bad = (t[a & b] & ~(fa & fb)) != 0
            else:
                bad = (a & ~b) == 0 and (fa & ~fb) != 0
            if bad:
                return a, b
    return -1, -1


def _pair_bad_np(t: np.ndarray, a: np.ndarray, b: np.ndarray, mode: int) -> np.ndarray:
    fa, fb = t[a], t[b]
    if mode == UNION_SUPERSET:
        return ((fa | fb) & ~t[a | b]) != 0
    if mode == MEET_EQUAL:
        return t[a & b] != (fa & fb)
    if mode == UNION_EQUAL:
        return t[a | b] != (fa | fb)
    if mode == MEET_SUBSET:
        return (t[a & b] & ~(fa & fb)) != 0
    return ((a & ~b) == 0) & ((fa & ~fb) != 0)


def _first_pair_violation_np(t: np.ndarray, mode: int, block: int = 1 << 20) -> tuple[int, int]:
    size = t.shape[0]
    rows = max(1, block // size)
    b = np.arange(size)
    for a0 in range(0, size, rows):
        a = np.arange(a0, min(size, a0 + rows))[:, None]
        bad = _pair_bad_np(t, a, b[None, :], mode)
        if mode != MONOTONE:
            bad &= b[None, :] >= a
        bad = np.asarray(bad, dtype=bool)
        if bad.any():
            flat = int(np.argmax(bad))
            r, c = divmod(flat, size)
            return a0 + r, c
    return -1, -1


def first_pair_violation(t: np.ndarray, mode: int) -> tuple[int, int] | None:
    """First pair ``(A, B)`` in ascending lexicographic mask order violating ``mode``.

    Symmetric modes only scan ``B >= A``; the lexicographically first violating
    pair always lies there.
    """
    if _jit_ok(t):
        a, b = _first_pair_violation_nb(t, mode)
    else:
        a, b = _first_pair_violation_np(t, mode)
    if a < 0:
        return None
    return int(a), int(b)


# --------------------------------------------------------------------------
# compatibility relation inverses
# --------------------------------------------------------------------------

@njit(cache=True)
def _inverse_images_nb(gammas, n):
    size = 1 << n
    m = gammas.shape[0]
    lo = np.zeros(size, dtype=np.int64)
    up = np.zeros(size, dtype=np.int64)
    for a in range(size):
        acc_lo = np.int64(0)
        acc_up = np.int64(0)
        for k in range(m):
            g = gammas[k]
            bit = np.int64(1) << k
            if (g & ~a) == 0:
                acc_lo |= bit
            if (g & a) != 0:
                acc_up |= bit
        lo[a] = acc_lo
        up[a] = acc_up
    return lo, up


def _pack_rows(rows: np.ndarray) -> np.ndarray:
    m = rows.shape[1]
    if m <= MAX_INT_WIDTH:
        weights = np.left_shift(np.int64(1), np.arange(m, dtype=np.int64))
        return rows.astype(np.int64) @ weights
    weights = np.array([1 << k for k in range(m)], dtype=object)
    return rows.astype(object) @ weights


def inverse_images(gammas: list[int], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper inverse tables of a relation given as per-w theta masks."""
    m = len(gammas)
    if get_backend() == "numba" and m <= MAX_INT_WIDTH:
        return _inverse_images_nb(np.asarray(gammas, dtype=np.int64), n)
    a = np.arange(1 << n, dtype=np.int64)[:, None]
    g = np.asarray(gammas, dtype=np.int64)[None, :]
    lo = _pack_rows((g & ~a) == 0)
    up = _pack_rows((g & a) != 0)
    return lo, up


# --------------------------------------------------------------------------
# probability of every table entry
# --------------------------------------------------------------------------

@njit(cache=True)
def _measure_nb(t, p):
    size = t.shape[0]
    m = p.shape[0]
    out = np.zeros(size, dtype=np.float64)
    for a in range(size):
        x = t[a]
        acc = 0.0
        for k in range(m):
            if (x >> k) & 1:
                acc += p[k]
        out[a] = acc
    return out


def measure(t: np.ndarray, p: np.ndarray) -> np.ndarray:
    """``out[A] = sum of p[k] over the W-elements k in t[A]``."""
    p = np.ascontiguousarray(p, dtype=np.float64)
    if _jit_ok(t):
        return _measure_nb(t, p)
    m = p.shape[0]
    if t.dtype != object:
        bits = (t[:, None] >> np.arange(m, dtype=np.int64)[None, :]) & 1
        return bits.astype(np.float64) @ p
    bits = np.array([[(int(x) >> k) & 1 for k in range(m)] for x in t], dtype=np.float64)
    return bits.reshape(len(t), m) @ p
