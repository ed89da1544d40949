import pytest
from hypothesis import settings

from mla.graph import gen_k4
from mla.reduction import reduce_graph

settings.register_profile("mla", deadline=None)
settings.load_profile("mla")


@pytest.fixture(scope="session")
def k4():
    graph = gen_k4()
    pair, blockmap = reduce_graph(graph)
    return graph, pair, blockmap
