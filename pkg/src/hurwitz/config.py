"""Tunable limits.  Environment variables override the defaults at call time."""
from __future__ import annotations

import os

DEFAULT_MAX_DEGREE = 7
DEFAULT_MAX_ORBIT = 10**6
ROOT_TOL = 1e-10
CLUSTER_TOL = 1e-8


def max_degree() -> int:
    """Largest degree accepted by the exhaustive enumerators (``HURWITZ_MAX_N``)."""
    raw = os.environ.get("HURWITZ_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_DEGREE


class DegreeTooLarge(ValueError):
    pass


def check_degree(n: int, bound: int | None = None) -> None:
    limit = max_degree() if bound is None else bound
    if n > limit:
        raise DegreeTooLarge(f"degree {n} exceeds the enumeration bound {limit} (set HURWITZ_MAX_N)")
