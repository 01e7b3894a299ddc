"""Runtime configuration: dense-enumeration cap and kernel backend.

Both can be set through the environment before import:

``INTERVALSTRUCT_MAX_THETA``
    largest frame size for which full ``2^n`` tables are built (default 16).
``INTERVALSTRUCT_BACKEND``
    ``numba`` (default when numba imports) or ``numpy``.
"""

from __future__ import annotations

import contextlib
import os
from typing import Iterator

DEFAULT_DENSE_CAP = 16

_dense_cap = int(os.environ.get("INTERVALSTRUCT_MAX_THETA", DEFAULT_DENSE_CAP))


def get_dense_cap() -> int:
    return _dense_cap


def set_dense_cap(n: int) -> None:
    global _dense_cap
    if n < 0:
        raise ValueError(f"dense cap must be non-negative, got {n}")
    _dense_cap = int(n)


@contextlib.contextmanager
def dense_cap(n: int) -> Iterator[None]:
    """Temporarily override the dense-enumeration cap."""
    old = get_dense_cap()
    set_dense_cap(n)
    try:
        yield
    finally:
        set_dense_cap(old)
