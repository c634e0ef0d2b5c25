from functools import lru_cache

import pytest

from cosetdual import build_dualized, build_root_system, build_solvable, compute_structure_constants

SMALL = ["A1", "A2", "A3", "B2", "G2"]


@lru_cache(maxsize=None)
def algebra(name: str):
    rs = build_root_system(name)
    sc = compute_structure_constants(rs)
    d = build_dualized(build_solvable(rs, sc))
    return rs, sc, d


@pytest.fixture(params=SMALL)
def small(request):
    return algebra(request.param)
