from fractions import Fraction

import pytest

from pebblekit import (
    Graph,
    Move,
    Solution,
    BudgetExceededError,
    InsufficientPebblesError,
    apply_move,
    potential,
    min_path_cost,
    is_solvable,
    greedy_is_solvable,
    verify_solution,
    normalize_solution,
    pebbling_number,
    pebbling_number_global,
)
from pebblekit.engine import compositions_colex, pack_config, unpack_config
from conftest import (
    bowtie,
    path_graph,
    complete_graph,
    cycle_graph,
    star_graph,
    random_connected_graph,
    naive_all_moves_solvable,
)


class TestApplyMove:
    def test_default_weight(self):
        g = path_graph(2)
        assert apply_move(g, (2, 0), Move(0, 1)) == (0, 1)

    def test_weight_three(self):
        g = Graph(2, [(0, 1, 3)])
        assert apply_move(g, (3, 0), Move(0, 1)) == (0, 1)

    def test_insufficient(self):
        g = path_graph(2)
        with pytest.raises(InsufficientPebblesError):
            apply_move(g, (1, 0), Move(0, 1))

    def test_non_edge(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            apply_move(g, (2, 0, 0), Move(0, 2))


class TestPotential:
    def test_path(self):
        assert potential(path_graph(3), (3, 0, 0), 2) == Fraction(3, 4)

    def test_root_only(self):
        assert potential(path_graph(3), (0, 0, 5), 2) == 5

    def test_bowtie(self):
        assert potential(bowtie(), (0, 0, 0, 0, 3), 0) == Fraction(3, 4)

    def test_min_path_cost_weighted(self):
        g = Graph(3, [(0, 1, 3), (1, 2, 5), (0, 2, 20)])
        assert min_path_cost(g, 0) == [1, 3, 15]

    def test_never_increases_under_moves(self, rng):
        for _ in range(30):
            g = random_connected_graph(rng, rng.randint(2, 6), weights=(1, 2, 3))
            r = rng.randrange(g.n)
            config = tuple(rng.randint(0, 4) for _ in range(g.n))
            before = potential(g, config, r)
            for u, v in g.edges:
                for a, b in ((u, v), (v, u)):
                    if config[a] >= g.weight(a, b):
                        after = potential(g, apply_move(g, config, Move(a, b)), r)
                        assert after <= before


class TestIsSolvable:
    def test_triangle_one_move(self):
        sol, _ = is_solvable(complete_graph(3), (0, 2, 0), 0, 1)
        assert sol is not None and len(sol.moves) == 1

    def test_path_unsolvable(self):
        sol, stats = is_solvable(path_graph(3), (0, 0, 3), 0, 1)
        assert sol is None

    def test_star_unsolvable(self):
        # root a leaf, 3 pebbles on another leaf, 1 on a third
        g = star_graph(3)
        sol, _ = is_solvable(g, (0, 0, 3, 1), 1, 1)
        assert sol is None

    def test_already_on_root(self):
        sol, _ = is_solvable(path_graph(4), (0, 0, 2, 0), 2, 2)
        assert sol is not None and sol.moves == ()

    def test_solutions_verify(self, rng):
        for _ in range(60):
            g = random_connected_graph(rng, rng.randint(2, 6), weights=(1, 2, 3))
            r = rng.randrange(g.n)
            k = rng.randint(1, 2)
            config = tuple(rng.randint(0, 5) for _ in range(g.n))
            sol, _ = is_solvable(g, config, r, k)
            if sol is not None:
                assert verify_solution(g, config, r, k, sol)

    def test_matches_full_move_search(self, rng):
        # the engine never moves pebbles off the root; check that this does
        # not change solvability, including across weight-1 edges
        for _ in range(40):
            g = random_connected_graph(rng, rng.randint(2, 5), weights=(1, 2, 3))
            r = rng.randrange(g.n)
            k = rng.randint(1, 2)
            config = tuple(rng.randint(0, 3) for _ in range(g.n))
            sol, _ = is_solvable(g, config, r, k)
            assert (sol is not None) == naive_all_moves_solvable(g, config, r, k)

    def test_potential_prune_consistency(self, rng):
        for _ in range(40):
            g = random_connected_graph(rng, rng.randint(2, 5))
            r = rng.randrange(g.n)
            config = tuple(rng.randint(0, 4) for _ in range(g.n))
            a, _ = is_solvable(g, config, r, 1, use_potential=True)
            b, _ = is_solvable(g, config, r, 1, use_potential=False)
            assert (a is None) == (b is None)

    def test_budget(self):
        g = path_graph(6)
        with pytest.raises(BudgetExceededError):
            is_solvable(g, (0, 0, 0, 0, 0, 31), 0, 1, budget=3, use_potential=False)


class TestGreedy:
    def test_cycle_greedy_solvable(self):
        sol, _ = greedy_is_solvable(cycle_graph(4), (0, 1, 2, 1), 0, 1)
        assert sol is not None
        assert verify_solution(cycle_graph(4), (0, 1, 2, 1), 0, 1, sol)

    def test_path_both_unsolvable(self):
        g = path_graph(3)
        assert greedy_is_solvable(g, (0, 0, 2), 0, 1)[0] is None
        assert is_solvable(g, (0, 0, 2), 0, 1)[0] is None

    def test_tree_greedy_matches_full(self, rng):
        # trees are greedy: greedy search succeeds whenever the full one does
        for _ in range(40):
            n = rng.randint(2, 6)
            g = Graph(n, [(rng.randrange(i), i) for i in range(1, n)])
            r = rng.randrange(n)
            config = tuple(rng.randint(0, 4) for _ in range(n))
            full, _ = is_solvable(g, config, r, 1)
            greedy, _ = greedy_is_solvable(g, config, r, 1)
            assert (full is None) == (greedy is None)


class TestVerify:
    def test_empty_solution(self):
        g = path_graph(2)
        assert verify_solution(g, (0, 3), 1, 3, Solution((), 1, 3))
        assert not verify_solution(g, (0, 2), 1, 3, Solution((), 1, 3))

    def test_illegal_move(self):
        g = path_graph(3)
        assert not verify_solution(g, (1, 0, 0), 2, 1, Solution((Move(0, 1), Move(1, 2)), 2, 1))
        assert not verify_solution(g, (4, 0, 0), 2, 1, Solution((Move(0, 2),), 2, 1))


class TestNormalize:
    def test_acyclic_unchanged_moves(self):
        g = path_graph(3)
        sol = Solution((Move(0, 1), Move(0, 1), Move(1, 2)), 2, 1)
        config = (4, 0, 0)
        norm = normalize_solution(g, config, sol)
        assert sorted(norm.moves) == sorted(sol.moves)
        assert verify_solution(g, config, 2, 1, norm)

    def test_two_cycle_cancelled(self):
        g = Graph(2, [(0, 1, 1)])
        sol = Solution((Move(0, 1), Move(1, 0)), 0, 1)
        norm = normalize_solution(g, (1, 0), sol)
        assert norm.moves == ()

    def test_random_solutions_normalize(self, rng):
        for _ in range(60):
            g = random_connected_graph(rng, rng.randint(2, 5), weights=(1, 2))
            r = rng.randrange(g.n)
            config = tuple(rng.randint(0, 4) for _ in range(g.n))
            sol, _ = is_solvable(g, config, r, 1)
            if sol is None:
                continue
            norm = normalize_solution(g, config, sol)
            assert verify_solution(g, config, r, 1, norm)
            arcs = {(m.src, m.dst) for m in norm.moves}
            # no directed 2-cycles remain (full acyclicity checked in engine)
            assert all((b, a) not in arcs for a, b in arcs)


class TestPebblingNumber:
    def test_complete_graphs(self):
        assert pebbling_number(complete_graph(5), 0, 1).value == 5
        assert pebbling_number(complete_graph(4), 0, 3).value == 8

    def test_paths(self):
        assert pebbling_number(path_graph(4), 0, 1).value == 8
        assert pebbling_number(path_graph(3), 0, 2).value == 8

    def test_witness_is_maximal_unsolvable(self):
        res = pebbling_number(path_graph(4), 0, 1)
        assert sum(res.witness) == res.value - 1
        assert is_solvable(path_graph(4), res.witness, 0, 1)[0] is None

    def test_scan_matches_levelwise(self, rng):
        for _ in range(15):
            g = random_connected_graph(rng, rng.randint(2, 4), weights=(1, 2, 3))
            r = rng.randrange(g.n)
            k = rng.randint(1, 2)
            a = pebbling_number(g, r, k, method="levelwise")
            b = pebbling_number(g, r, k, method="scan")
            assert a.value == b.value
            assert a.witness == b.witness

    def test_width_repack(self):
        res = pebbling_number(path_graph(4), 0, 2, start_width=3)
        assert res.value == 16

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            pebbling_number(path_graph(5), 0, 2, budget=50)

    def test_global(self):
        res = pebbling_number_global(complete_graph(4), 2)
        assert res.value == 6 and res.per_root == (6, 6, 6, 6)
        assert pebbling_number_global(path_graph(3), 1).value == 4
        g = bowtie()
        got = pebbling_number_global(g, 1)
        assert got.value == 6
        assert sum(got.witness) == 5

    def test_monotonicity_sampling(self, rng):
        for _ in range(30):
            g = random_connected_graph(rng, rng.randint(2, 5))
            r = rng.randrange(g.n)
            config = [rng.randint(0, 3) for _ in range(g.n)]
            if is_solvable(g, tuple(config), r, 1)[0] is not None:
                config[rng.randrange(g.n)] += 1
                assert is_solvable(g, tuple(config), r, 1)[0] is not None

    def test_weight_one_edges(self):
        # a weight-1 edge transfers pebbles freely, so one pebble on vertex 0
        # already solves either endpoint; only the weight-2 leaf resists
        g = Graph(3, [(0, 1, 1), (1, 2, 2)])
        assert pebbling_number(g, 0, 1).value == pebbling_number(g, 1, 1).value == 2
        assert pebbling_number(g, 0, 1).witness == (0, 0, 1)
        assert pebbling_number(g, 0, 1, method="scan").value == 2
        # against a weight-3 edge, two pebbles pooled on the free side stall
        h = Graph(3, [(0, 1, 1), (1, 2, 3)])
        assert pebbling_number(h, 2, 1).value == 3
        assert pebbling_number(h, 2, 1, method="scan").value == 3


class TestCompositions:
    def test_colex_order(self):
        got = list(compositions_colex(2, 3))
        assert got == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
        # packed-integer order agrees with colex generation order
        packed = [pack_config(c, 4) for c in got]
        assert packed == sorted(packed)

    def test_count(self):
        assert sum(1 for _ in compositions_colex(5, 4)) == 56

    def test_pack_roundtrip(self):
        cfg = (3, 0, 7, 1)
        assert unpack_config(pack_config(cfg, 5), 4, 5) == cfg
