"""Size caps shared by the exhaustive routines."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    bruteforce_max: int = 8     # con_bruteforce: Bell(8) = 4140 partitions
    isomorphism_max: int = 12   # backtracking isomorphism search
    filter_max: int = 10        # full filter enumeration of residuated lattices
    nary_max: int = 4           # n-ary splitting conditions

    @classmethod
    def from_env(cls) -> "Limits":
        lim = cls()
        value = os.environ.get("CONGRKIT_MAX_SIZE")
        if value:
            lim = lim.with_max_size(int(value))
        return lim

    def with_max_size(self, n: int) -> "Limits":
        if n <= 0:
            raise ValueError("size caps must be positive")
        return replace(self, bruteforce_max=n, isomorphism_max=n, filter_max=n)


LIMITS = Limits.from_env()


def set_limits(lim: Limits) -> None:
    global LIMITS
    LIMITS = lim


def limits() -> Limits:
    return LIMITS
