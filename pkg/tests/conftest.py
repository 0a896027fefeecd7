from __future__ import annotations

from hypothesis import settings

from weylcert import build_root_system

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

MIN_RANK = {"B": 2, "C": 3, "D": 4}


def systems(max_rank: int):
    """Every (family, rank) in scope up to ``max_rank``."""
    return [(f, r) for f in "BCD" for r in range(MIN_RANK[f], max_rank + 1)]


def rs_of(family: str, rank: int):
    return build_root_system(family, rank)
