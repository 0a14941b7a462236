import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from damage_lab.engine import INF, capture_time
from damage_lab.families import SpecError, build_family, complete, cycle, path, star
from damage_lab.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    all_pairs_distance,
    c_dominates,
    cartesian_product,
    corner_dismantle,
    dominates,
    flat_index,
    has_c_dominated_vertex,
    is_tree,
    is_universal,
    o_dominates,
    product_vertex,
    radius_ecc_centers,
)
from damage_lab.graph6 import (
    Graph6Error,
    encode_graph6,
    parse_graph6,
    read_graph6_file,
    write_graph6_file,
)

from oracles import labeled_connected_graphs


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    if connected:
        # a random spanning path keeps it connected
        order = draw(st.permutations(range(n)))
        edges += list(zip(order, order[1:]))
    return Graph.from_edges(n, edges)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class TestFamilies:
    def test_cycle_six(self):
        g = build_family("cycle:6")
        assert g.n == 6 and all(g.degree(v) == 2 for v in range(6))
        assert all(g.adj[i] >> ((i + 1) % 6) & 1 for i in range(6))

    def test_star(self):
        g = build_family("star:5")
        assert g.n == 6 and g.degree(0) == 5

    def test_tree_parent_list(self):
        g = build_family("tree:[_,0,0,1]")
        assert g.n == 4 and sorted(g.edges()) == [(0, 1), (0, 2), (1, 3)]
        assert is_tree(g)

    def test_other_families(self):
        assert build_family("complete_bipartite:2,3").num_edges == 6
        assert build_family("edges:3:0-1,1-2").edges() == [(0, 1), (1, 2)]
        assert build_family("product:path:2xpath:3").n == 6

    @pytest.mark.parametrize("bad", ["", "cycle", "cycle:x", "cycle:0", "cycle:65", "blob:3",
                                     "complete_bipartite:3", "product:cycle:4"])
    def test_malformed(self, bad):
        with pytest.raises(GraphError):
            build_family(bad)

    def test_file_descriptor(self, tmp_path):
        f = tmp_path / "c.g6"
        write_graph6_file(f, [cycle(5), path(4)], header=True)
        assert build_family(f"file:{f}:2") == path(4)
        assert build_family(f"file:{f}") == cycle(5)
        with pytest.raises(SpecError):
            build_family(f"file:{f}:3")


class TestGraph6:
    def test_single_vertex_is_byte_64(self):
        assert encode_graph6(Graph(1, (0,))) == chr(64)

    @pytest.mark.parametrize("g", [cycle(5), path(7), complete(4), star(6),
                                   cartesian_product(cycle(4), cycle(5))])
    def test_matches_reference_encoder(self, g):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert encode_graph6(g) == ref

    def test_large_n_header(self):
        g = path(63)
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert encode_graph6(g) == ref and parse_graph6(ref) == g

    @pytest.mark.parametrize("bad", ["", "A~", "C~~~~", "\x7fA", "Bw?"])
    def test_bad_input(self, bad):
        with pytest.raises(Graph6Error):
            parse_graph6(bad)

    def test_header_tolerated(self):
        assert parse_graph6(">>graph6<<Bw") == complete(3)

    def test_corpus_round_trip(self, tmp_path):
        corpus = list(itertools.islice(
            (g for n in range(1, 6) for g in labeled_connected_graphs(n)), 100))
        assert len(corpus) == 100
        f = tmp_path / "corpus.g6"
        write_graph6_file(f, corpus)
        back = list(read_graph6_file(f))
        assert back == corpus
        assert [encode_graph6(g) for g in back] == f.read_text().split()

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=20))
    def test_round_trip_property(self, g):
        assert parse_graph6(encode_graph6(g)) == g


class TestProduct:
    def test_p2_p2_is_c4(self):
        g = cartesian_product(path(2), path(2))
        assert nx.is_isomorphic(to_nx(g), to_nx(cycle(4)))

    def test_sizes_and_degrees(self):
        assert cartesian_product(cycle(4), cycle(5)).n == 20
        g = cartesian_product(cycle(4), cycle(4))
        assert all(g.degree(v) == 4 for v in range(16))

    def test_flat_index(self):
        assert flat_index(2, 3, 5) == 13
        pv = product_vertex(13, 5)
        assert (pv.g_coord, pv.h_coord, pv.flat) == (2, 3, 13)

    def test_vertex_cap(self):
        with pytest.raises(GraphError):
            cartesian_product(cycle(9), cycle(8))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=6), graphs(max_n=6))
    def test_matches_networkx(self, g, h):
        p = cartesian_product(g, h)
        ref = nx.cartesian_product(to_nx(g), to_nx(h))
        mine = {(product_vertex(u, h.n), product_vertex(v, h.n)) for u, v in p.edges()}
        mine = {frozenset({(a.g_coord, a.h_coord), (b.g_coord, b.h_coord)}) for a, b in mine}
        assert mine == {frozenset(e) for e in ref.edges()}
        assert all(p.degree(flat_index(a, b, h.n)) == g.degree(a) + h.degree(b)
                   for a in range(g.n) for b in range(h.n))

    @settings(max_examples=60, deadline=None)
    @given(graphs(min_n=2, max_n=6, connected=True), graphs(min_n=2, max_n=6, connected=True))
    def test_product_has_no_corner_and_radius_adds(self, g, h):
        p = cartesian_product(g, h)
        assert has_c_dominated_vertex(p) is None
        assert radius_ecc_centers(p)[0] == radius_ecc_centers(g)[0] + radius_ecc_centers(h)[0]

    def test_named_products_have_no_corner(self):
        assert has_c_dominated_vertex(build_family("product:cycle:4xcycle:4")) is None
        assert has_c_dominated_vertex(build_family("product:complete:3xpath:2")) is None


class TestMetrics:
    def test_distances(self):
        assert all_pairs_distance(cycle(6))[0][3] == 3
        assert all_pairs_distance(path(5))[0][4] == 4
        g = build_family("product:cycle:4xcycle:5")
        assert all_pairs_distance(g)[flat_index(0, 0, 5)][flat_index(2, 2, 5)] == 4

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            all_pairs_distance(Graph.from_edges(3, [(0, 1)]))

    def test_radius(self):
        assert radius_ecc_centers(cycle(7))[0] == 3
        assert radius_ecc_centers(star(5))[0::2] == (1, [0])
        assert radius_ecc_centers(build_family("product:path:3xpath:4"))[0] == 3

    def test_universal_and_tree(self):
        assert is_universal(star(5), 0)
        assert not any(is_universal(cycle(4), v) for v in range(4))
        assert is_tree(path(7)) and not is_tree(cycle(4))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=9, connected=True))
    def test_distances_match_networkx(self, g):
        d = all_pairs_distance(g)
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        assert all(d[u][v] == ref[u][v] for u in range(g.n) for v in range(g.n))
        assert radius_ecc_centers(g)[0] == nx.radius(to_nx(g))


class TestDomination:
    def test_c4(self):
        g = cycle(4)
        assert o_dominates(g, 0, 2)
        assert not any(c_dominates(g, v, u) for u in range(4) for v in range(4) if u != v)

    def test_p3(self):
        g = path(3)
        assert c_dominates(g, 1, 0) and c_dominates(g, 1, 2)
        assert has_c_dominated_vertex(g) == (0, 1)

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=8), st.data())
    def test_subset_definitions(self, g, data):
        u = data.draw(st.integers(0, g.n - 1))
        v = data.draw(st.integers(0, g.n - 1))
        nu, nv = set(g.neighbors(u)), set(g.neighbors(v))
        assert dominates(g, v, u) == (nu <= nv | {v})
        assert o_dominates(g, v, u) == (nu <= nv)
        assert c_dominates(g, v, u) == (nu | {u} <= nv | {v})


class TestDismantle:
    def test_examples(self):
        assert corner_dismantle(path(6))[0]
        assert not corner_dismantle(cycle(4))[0]
        assert corner_dismantle(complete(5))[0]

    def test_order_is_a_dismantling(self):
        g = build_family("tree:_,0,0,1,1,2")
        ok, order = corner_dismantle(g)
        assert ok and sorted(order) == list(range(g.n - 1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_agrees_with_capture_time(self, n):
        for g in labeled_connected_graphs(n):
            assert corner_dismantle(g)[0] == (capture_time(g).value != INF)
