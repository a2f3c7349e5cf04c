import pytest

from ade_jacobian.curve import make_curve
from ade_jacobian.dynkin import build_graph, supported_graphs
from ade_jacobian.polarisation import make_polarisation


def curve(kind, n, genera=None):
    return make_curve(build_graph(kind, n), genera)


def unit(c):
    return make_polarisation(c, [1] * len(c.vertices))


ALL_GRAPHS = supported_graphs(9)


@pytest.fixture(params=ALL_GRAPHS, ids=lambda g: g.name)
def any_graph(request):
    return request.param
