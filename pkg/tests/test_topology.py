import numpy as np
import pytest

from sbqa.instances import gen_cubic_lattice, gen_zephyr


def connected(n, edges):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


class TestZephyr:
    @pytest.mark.parametrize("m,nodes", [(1, 48), (2, 160), (7, 1680), (12, 4800), (20, 13120)])
    def test_node_count_closed_form(self, m, nodes):
        g = gen_zephyr(m)
        assert g.n == nodes == 16 * m * (2 * m + 1)

    def test_large_graph_node_count(self):
        g = gen_zephyr(150)
        assert g.n == 722400

    def test_simple_graph(self):
        g = gen_zephyr(2)
        assert (g.edges[:, 0] < g.edges[:, 1]).all()
        assert np.unique(g.edges, axis=0).shape == g.edges.shape

    def test_degrees_and_connectivity(self):
        g = gen_zephyr(3)
        deg = g.degrees()
        # nominal degree 4t+4 in the bulk, never exceeded
        assert deg.max() == 20
        assert connected(g.n, g.edge_list())

    def test_bulk_degree_dominates_for_larger_m(self):
        g = gen_zephyr(4)
        deg = g.degrees()
        assert (deg == 20).sum() > g.n // 4

    def test_edge_count_closed_form(self):
        # 320 m^2 - 80 m - 24 at t=4
        for m in (1, 2, 3, 4):
            g = gen_zephyr(m)
            assert g.num_edges == 320 * m * m - 80 * m - 24

    def test_rejects_bad_size(self):
        with pytest.raises(ValueError):
            gen_zephyr(0)


class TestCubicLattice:
    @pytest.mark.parametrize(
        "L,Lz,nodes",
        [(6, 6, 216), (15, 12, 2700), (3, 3, 27)],
    )
    def test_node_counts(self, L, Lz, nodes):
        assert gen_cubic_lattice(L, Lz).n == nodes

    def test_edge_count_formula(self):
        for L, Lz in [(3, 3), (4, 6), (6, 6), (5, 12)]:
            g = gen_cubic_lattice(L, Lz)
            assert g.num_edges == 3 * L * L * Lz - L * L

    def test_smallest_lattice_by_hand(self):
        # 2x2x2, periodic x/y, open z: wrapped pairs coincide, so per z-layer
        # there are 2 x-edges + 2 y-edges, plus 4 vertical edges
        g = gen_cubic_lattice(2, 2)
        assert g.n == 8
        assert g.num_edges == 12
        assert connected(g.n, g.edge_list())

    def test_open_boundaries(self):
        g = gen_cubic_lattice(3, 3, bc="ooo")
        # open grid: 3 directions x 2*3*3 internal steps
        assert g.num_edges == 3 * (2 * 3 * 3)

    def test_fully_periodic(self):
        g = gen_cubic_lattice(3, 3, bc="ppp")
        assert g.num_edges == 3 * 27

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_cubic_lattice(1)
        with pytest.raises(ValueError):
            gen_cubic_lattice(3, 3, bc="xyz")
