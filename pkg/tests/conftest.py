import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from widthlab.canonical import graphs_up_to_iso  # noqa: E402
from widthlab.generators import complete, cycle, grotzsch, moser_spindle, path, petersen, wheel  # noqa: E402
from widthlab.graphs import Graph, is_3_colorable  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def non3_corpus(max_n=6):
    """Every non-3-colourable graph with at most ``max_n`` vertices, up to isomorphism."""
    out = []
    for n in range(4, max_n + 1):
        out += [g for g in graphs_up_to_iso(n) if g.m >= 6 and not is_3_colorable(g)]
    return out


NAMED = {
    "K4": complete(4), "K5": complete(5), "C5": cycle(5), "C6": cycle(6), "P4": path(4),
    "W5": wheel(5), "petersen": petersen(), "grotzsch": grotzsch(), "moser": moser_spindle(),
}


@pytest.fixture(scope="session")
def corpus6():
    return non3_corpus(6)
