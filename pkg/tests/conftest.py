import os

import pytest

from thuesub.construct import theorem12_pipeline
from thuesub.goodsets import build_good_set
from thuesub.graphs import SubdivisionPlan, complete_graph
from thuesub.nice import CACHE_ENV, LexLeastCache

# smallest n with 4n+216 <= 9n, i.e. the first n with a non-empty division range
DESK_N = 44
DESK_K = 4 * DESK_N + 216
DESK_INDEX = range(2 * DESK_N + 100, 2 * DESK_N + 105)


@pytest.fixture(scope="session", autouse=True)
def cache_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("lcache")
    old = os.environ.get(CACHE_ENV)
    os.environ[CACHE_ENV] = str(d)
    yield d
    if old is None:
        os.environ.pop(CACHE_ENV, None)
    else:
        os.environ[CACHE_ENV] = old


@pytest.fixture(scope="session")
def lwords(cache_dir):
    return LexLeastCache(cache_dir / "lex_least_nice.txt")


@pytest.fixture(scope="session")
def desk_goodset(lwords):
    return build_good_set(DESK_N, 4, DESK_INDEX, lwords)


@pytest.fixture(scope="session")
def k3_run(lwords):
    g = complete_graph(3)
    return theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), n=DESK_N, lwords=lwords)


@pytest.fixture(scope="session")
def k4_run(lwords):
    g = complete_graph(4)
    return theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), n=DESK_N, lwords=lwords)
