import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adiasearch.errors import (
    MalformedEdgeList,
    NotConnected,
    NotRegular,
    NotSymmetric,
    ParameterOutOfRange,
    SelfLoop,
    UnknownFamily,
    VertexOutOfRange,
)
from adiasearch.graphs import (
    Graph,
    build_family,
    family_degree,
    from_edges,
    load_edge_list,
    uniform_state,
    validate,
)

# 3-cube, vertices labelled by 3-bit strings, listed by hand
CUBE_EDGES = """\
# bottom face
0 1
1 3
3 2
2 0
# top face
4 5
5 7
7 6
6 4
# verticals
0 4
1 5
2 6
3 7
"""


def test_complete_k4():
    g = build_family("complete", [4])
    assert g.n == 4 and validate(g) == 3
    np.testing.assert_array_equal(g.adjacency, np.ones((4, 4)) - np.eye(4))


def test_dihedral_is_sigma_x_kron_ones():
    g = build_family("dihedral", [4])
    assert g.n == 8 and g.degree == 4
    expected = np.block([[np.zeros((4, 4)), np.ones((4, 4))], [np.ones((4, 4)), np.zeros((4, 4))]])
    np.testing.assert_array_equal(g.adjacency, expected)


def test_crown_edges_connect_u_i_to_v_j_iff_i_ne_j():
    n = 4
    g = build_family("crown", [n])
    assert g.n == 8 and g.degree == 3
    for i in range(n):
        for j in range(n):
            u, v = 2 * i, 2 * j + 1
            assert g.adjacency[u, v] == (1.0 if i != j else 0.0)
        for j in range(n):
            assert g.adjacency[2 * i, 2 * j] == 0.0


@pytest.mark.parametrize(
    "family, params, degree",
    [("complete", [7], 6), ("dihedral", [5], 5), ("mpartite", [4, 3], 9), ("crown", [5], 4),
     ("mpartite", [2, 1], 1)],
)
def test_family_degrees(family, params, degree):
    g = build_family(family, params)
    assert validate(g) == degree == family_degree(family, params)


@pytest.mark.parametrize(
    "family, params",
    [("complete", [1]), ("dihedral", [1]), ("mpartite", [1, 3]), ("mpartite", [3, 0]),
     ("crown", [2]), ("complete", [3, 4])],
)
def test_family_parameter_range(family, params):
    with pytest.raises(ParameterOutOfRange):
        build_family(family, params)


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        build_family("petersen", [10])


def test_edge_list_triangle():
    g = load_edge_list("0 1\n1 2\n2 0")
    assert g.n == 3 and validate(g) == 2


def test_edge_list_crlf_comments_and_duplicates():
    g = load_edge_list("# triangle\r\n0 1\r\n1 0\r\n1 2 # dup-free\r\n\r\n2 0\r\n")
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_edge_list_disconnected():
    with pytest.raises(NotConnected):
        load_edge_list("0 1\n2 3")


def test_edge_list_cube():
    g = load_edge_list(CUBE_EDGES)
    assert g.n == 8 and validate(g) == 3
    # every edge flips exactly one bit
    for u, v in g.edges():
        assert bin(u ^ v).count("1") == 1


@pytest.mark.parametrize(
    "text, exc",
    [("0 1 2\n", MalformedEdgeList), ("0 x\n", MalformedEdgeList), ("0 0\n1 2\n", SelfLoop),
     ("-1 2\n", VertexOutOfRange), ("# nothing\n", MalformedEdgeList)],
)
def test_edge_list_errors(text, exc):
    with pytest.raises(exc):
        load_edge_list(text)


def test_edge_list_index_bound():
    with pytest.raises(VertexOutOfRange):
        load_edge_list("0 1\n1 5\n", n=4)


def test_validate_errors():
    with pytest.raises(NotRegular):
        validate(from_edges(3, [(0, 1), (1, 2)]))
    with pytest.raises(NotSymmetric):
        validate(Graph(np.array([[0, 1], [0, 0]])))
    with pytest.raises(SelfLoop):
        validate(Graph(np.array([[1, 1], [1, 1]])))


def test_validate_crown5():
    assert validate(build_family("crown", [5])) == 4


def test_graph_is_immutable():
    g = build_family("complete", [3])
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 0.0


@pytest.mark.parametrize("n", [1, 4, 8])
def test_uniform_state(n):
    g = Graph(np.ones((n, n)) - np.eye(n))
    psi = uniform_state(g)
    np.testing.assert_allclose(psi, np.full(n, 1 / np.sqrt(n)), atol=1e-15)
    assert abs(np.linalg.norm(psi) - 1) <= 1e-12
    if n == 8:
        assert abs(psi[0].real - 0.35355) < 1e-5


def test_family_invariants_and_top_eigenvector(any_graph):
    g = any_graph
    adj = g.adjacency
    assert np.array_equal(adj, adj.T)
    assert not np.any(np.diag(adj))
    assert np.all(adj.sum(axis=1) == g.degree)
    psi = uniform_state(g)
    np.testing.assert_allclose(adj @ psi, g.degree * psi, atol=1e-12)


def test_edge_list_round_trip(any_graph):
    g = any_graph
    again = load_edge_list(g.to_edge_list())
    assert again.edges() == g.edges()


@st.composite
def circulants(draw):
    n = draw(st.integers(min_value=3, max_value=40))
    offsets = draw(st.sets(st.integers(min_value=1, max_value=n // 2), max_size=4)) | {1}
    edges = {(min(i, (i + k) % n), max(i, (i + k) % n)) for i in range(n) for k in offsets}
    return n, sorted(edges)


@settings(max_examples=40, deadline=None)
@given(circulants())
def test_round_trip_random_circulants(case):
    n, edges = case
    g = load_edge_list("".join(f"{u} {v}\n" for u, v in edges))
    assert g.edges() == edges
    assert load_edge_list(g.to_edge_list()).edges() == edges
    np.testing.assert_allclose(g.adjacency @ uniform_state(g), g.degree * uniform_state(g), atol=1e-12)
