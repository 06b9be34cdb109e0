import random

import pytest

from cyclepack.digraph import (Digraph, GenSpec, ParseError, complete_digraph,
                               generate, induced_subgraph, is_k_out,
                               random_exactly_r_out, read_edge_list,
                               reduce_to_exactly_k_out, write_edge_list)


class TestDigraph:
    def test_rejects_parallel_edges(self):
        with pytest.raises(ValueError):
            Digraph(2, [[1, 1], []])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Digraph(2, [[2], []])

    def test_in_adj_is_transpose(self):
        g = random_exactly_r_out(12, 3, seed=5)
        for u, v in g.edges():
            assert u in g.in_adj[v]
        assert sum(len(r) for r in g.in_adj) == g.num_edges

    def test_degree_out_of_range_is_error(self):
        g = complete_digraph(3)
        with pytest.raises(ValueError):
            g.out_degree(3)
        with pytest.raises(ValueError):
            g.in_degree(-1)


class TestDegrees:
    def test_complete_out_degrees(self):
        g = complete_digraph(3)
        assert all(g.out_degree(v) == 2 for v in range(3))

    def test_loop_counts_as_out_edge(self):
        g = Digraph.from_edges(1, [(0, 0)])
        assert g.out_degree(0) == 1
        assert g.in_degree(0) == 1

    def test_random_generator_contract(self):
        g = random_exactly_r_out(10, 3, seed=1)
        assert all(g.out_degree(v) == 3 for v in range(10))
        # handshake: in-degrees sum to out-degrees sum
        assert sum(g.in_degree(v) for v in range(10)) == 30

    def test_complete_in_degrees(self):
        g = complete_digraph(4)
        assert all(g.in_degree(v) == 3 for v in range(4))

    def test_single_edge_degrees(self):
        g = Digraph.from_edges(2, [(0, 1)])
        assert g.in_degree(0) == 0
        assert g.in_degree(1) == 1

    def test_handshake_on_random_graphs(self):
        for seed in range(20):
            n = random.Random(seed).randint(1, 30)
            r = random.Random(seed + 1).randint(0, max(0, n - 1))
            g = random_exactly_r_out(n, r, seed=seed)
            assert sum(g.out_degree(v) for v in range(n)) == g.num_edges
            assert sum(g.in_degree(v) for v in range(n)) == g.num_edges


class TestIsKOut:
    @pytest.mark.parametrize("k,expected", [(3, True), (4, False)])
    def test_complete4(self, k, expected):
        assert is_k_out(complete_digraph(4), k) is expected

    def test_two_cycle_is_1_out(self):
        g = Digraph.from_edges(2, [(0, 1), (1, 0)])
        assert is_k_out(g, 1)

    def test_empty_graph_is_never_k_out(self):
        g = Digraph(0, [])
        assert not is_k_out(g, 0)
        assert not is_k_out(g, 1)


class TestReduce:
    def test_already_exact_is_unchanged(self):
        g = complete_digraph(4)
        assert reduce_to_exactly_k_out(g, 3) == g

    def test_complete5_reduces_to_exact_3(self):
        g = complete_digraph(5)
        h = reduce_to_exactly_k_out(g, 3)
        assert all(h.out_degree(v) == 3 for v in range(5))
        assert set(h.edges()) <= set(g.edges())
        assert h.n == g.n

    def test_mixed_degrees(self):
        g = Digraph(6, [[1, 2, 3], [0, 2, 3, 4], [0, 1, 3, 4, 5], [0, 1, 2],
                        [0, 1, 2], [0, 1, 2]])
        h = reduce_to_exactly_k_out(g, 3)
        assert [h.out_degree(v) for v in range(6)] == [3] * 6
        assert set(h.edges()) <= set(g.edges())

    def test_not_k_out_fails(self):
        with pytest.raises(ValueError):
            reduce_to_exactly_k_out(Digraph.from_edges(2, [(0, 1)]), 1)


class TestGenerate:
    def test_complete_n3(self):
        g = generate(GenSpec("complete", 3))
        assert g.num_edges == 6
        assert all(g.out_degree(v) == 2 for v in range(3))
        assert g.bidirectional_pairs() == [(0, 1), (0, 2), (1, 2)]
        assert g.loops() == []

    def test_complete_n1_has_no_edges(self):
        assert generate(GenSpec("complete", 1)).num_edges == 0

    def test_random_determinism(self):
        a = generate(GenSpec("random-exactly-r-out", 8, r=3, seed=7))
        b = generate(GenSpec("random-exactly-r-out", 8, r=3, seed=7))
        assert set(a.edges()) == set(b.edges())

    def test_infeasible_spec(self):
        with pytest.raises(ValueError):
            random_exactly_r_out(4, 4, seed=0, allow_loops=False)
        # feasible with loops allowed
        g = random_exactly_r_out(4, 4, seed=0, allow_loops=True)
        assert all(g.out_degree(v) == 4 for v in range(4))


class TestInducedSubgraph:
    def test_mapping_and_edges(self):
        g = complete_digraph(5)
        sub, vmap = induced_subgraph(g, [1, 3, 4])
        assert sub.n == 3 and vmap == [1, 3, 4]
        assert sub.num_edges == 6


class TestEdgeList:
    def test_two_cycle(self):
        g = read_edge_list("2 2\n0 1\n1 0\n")
        assert set(g.edges()) == {(0, 1), (1, 0)}

    def test_loop(self):
        g = read_edge_list("1 1\n0 0\n")
        assert g.loops() == [0]

    def test_round_trip_on_corpus(self):
        for seed in range(15):
            n = random.Random(seed).randint(1, 20)
            r = random.Random(seed * 7).randint(0, max(0, n - 1))
            g = random_exactly_r_out(n, r, seed=seed, allow_loops=(seed % 2 == 0))
            text = write_edge_list(g)
            assert write_edge_list(read_edge_list(text)) == text

    @pytest.mark.parametrize("text,line", [
        ("", 1),
        ("1\n", 1),
        ("x y\n", 1),
        ("2 1\n0 2\n", 2),
        ("2 2\n0 1\n0 1\n", 3),
        ("2 2\n0 1\n", 3),
        ("2 1\n0 1 2\n", 2),
    ])
    def test_parse_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as err:
            read_edge_list(text)
        assert err.value.line_no == line
