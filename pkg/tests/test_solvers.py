"""Solver strategies: frozen examples, exhaustive small cases, guarantees.

Derived expectations come from the exact oracle (or from explicit tiny
enumerations inside the tests), never from the solver under test.
"""

from __future__ import annotations

import random
from itertools import product

import pytest

from conftest import ALL_KINDS, generate_for, random_point_set, spec_for
from lineswitch import (
    GeneratorSpec,
    NearPerfectParams,
    Point,
    balance,
    clear_negative_lines,
    connecting_lines,
    generate,
    heavy_lines,
    line_key,
    max_discrepancy,
    new_board,
    ordinary_line_graph,
    reachable_bfs,
    solve,
    solve_cubic,
    solve_general_position,
    solve_long_line,
    solve_near_perfect,
    solve_small,
    solve_third,
    switch_code,
    third_bound,
    tree_switch,
    triple_fixup,
    verify_certificate,
)
from lineswitch.errors import (
    CollinearInputError,
    PreconditionError,
)
from lineswitch.geometry import Component

TRIANGLE = [Point(0, 0), Point(1, 0), Point(0, 1)]


def assert_sound(points, outcome):
    """Certificate replays to the reported final and verifies."""
    board = new_board(points, outcome.certificate.initial_weights)
    for key in outcome.certificate.switches:
        board.switch(key)
    assert board.discrepancy() == outcome.final_discrepancy
    result = verify_certificate(points, outcome.certificate)
    assert result.accepted, result.failures


def exact_value(points, weights):
    return max_discrepancy(switch_code(connecting_lines(points)), weights).value


class TestThirdBound:
    def test_values(self):
        assert third_bound(3) == 1
        assert third_bound(6) == 2
        assert third_bound(7) == 3
        assert third_bound(8) == 4
        assert third_bound(9) == 3
        assert third_bound(12) == 4


class TestClearNegativeLines:
    def test_triangle_one_negative_pair(self):
        board = new_board(TRIANGLE, [-1, -1, 1])
        clear_negative_lines(board)
        assert board.weights == [1, 1, 1]
        assert board.switch_log == [line_key(Point(0, 0), Point(1, 0))]
        # cross-check against the reachable-set maximum
        assert reachable_bfs(connecting_lines(TRIANGLE), [-1, -1, 1]).max_discrepancy == 3

    def test_all_plus_no_switches(self):
        board = new_board(TRIANGLE, [1, 1, 1])
        clear_negative_lines(board)
        assert board.switch_log == []

    def test_no_negative_line_remains(self):
        rng = random.Random(6)
        for _ in range(30):
            points = random_point_set(rng, rng.randint(2, 12))
            board = new_board(points, [rng.choice((1, -1)) for _ in points])
            clear_negative_lines(board)
            for members in board.incidence.lines.values():
                assert sum(board.weights[i] for i in members) >= 0

    def test_monotone_steps_of_two(self):
        rng = random.Random(16)
        for _ in range(20):
            points = random_point_set(rng, rng.randint(3, 12))
            weights = [rng.choice((1, -1)) for _ in points]
            board = new_board(points, weights)
            clear_negative_lines(board)
            replay = new_board(points, weights)
            last = replay.discrepancy()
            for key in board.switch_log:
                replay.switch(key)
                assert replay.discrepancy() >= last + 2
                last = replay.discrepancy()

    def test_restricted_sweep_touches_lines_of_subset_only(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(5, 7)]
        board = new_board(points, [-1, -1, -1, -1, -1])
        clear_negative_lines(board, restrict_to=(0, 1, 3))
        sub = connecting_lines(points, (0, 1, 3))
        for members in sub.lines.values():
            assert sum(board.weights[i] for i in members) >= 0
        for key in board.switch_log:
            assert key in sub.lines

    def test_gp_after_sweep_at_most_one_minus(self):
        for seed in range(10):
            points, _ = generate(GeneratorSpec(kind="random_gp", n=9, seed=seed))
            rng = random.Random(seed)
            board = new_board(points, [rng.choice((1, -1)) for _ in points])
            clear_negative_lines(board)
            assert sum(1 for w in board.weights if w == -1) <= 1


class TestTreeSwitch:
    def test_star_all_minus(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=5))
        board = new_board(points, [-1] * 5)
        graph = ordinary_line_graph(board.incidence)
        comp = graph.components[0]
        tree_switch(board, comp, root=4)
        assert all(board.weights[v] == 1 for v in comp.vertices if v != 4)
        assert len(board.switch_log) <= comp.size - 1

    def test_path_tree_frozen(self):
        # complete ordinary graph, hand-built path tree 0 <- 1 <- 2 <- 3
        points, _ = generate(GeneratorSpec(kind="random_gp", n=4, seed=8))
        board = new_board(points, [-1, 1, -1, 1])
        comp = Component(
            vertices=(0, 1, 2, 3),
            root=0,
            parent={1: 0, 2: 1, 3: 2},
            depth={0: 0, 1: 1, 2: 2, 3: 3},
            order=(0, 1, 2, 3),
        )
        tree_switch(board, comp)
        assert board.weights == [1, 1, 1, 1]
        # exhaustive check over the 3 tree-edge switches: some subset fixes
        # all non-root vertices, and the tree switch found one
        edges = [(1, 0), (2, 1), (3, 2)]
        best = []
        for mask in range(8):
            w = [-1, 1, -1, 1]
            for b, (v, parent) in enumerate(edges):
                if (mask >> b) & 1:
                    w[v] = -w[v]
                    w[parent] = -w[parent]
            if all(x == 1 for x in w[1:]):
                best.append(w)
        assert best, "a fixing subset must exist"
        assert board.weights in best or board.weights == [1, 1, 1, 1]

    def test_already_positive_component(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=5))
        board = new_board(points, [1] * 5)
        comp = ordinary_line_graph(board.incidence).components[0]
        tree_switch(board, comp)
        assert board.weights == [1] * 5
        assert board.switch_log == []

    def test_locality_outside_component(self):
        # two far-apart clusters whose ordinary graphs do not interact
        points = [Point(0, 0), Point(1, 0), Point(0, 1), Point(100, 100), Point(101, 100), Point(100, 101)]
        board = new_board(points, [-1, -1, -1, -1, -1, -1])
        graph = ordinary_line_graph(board.incidence)
        comp = next(c for c in graph.components if 0 in c.vertices)
        outside = [i for i in range(6) if i not in comp.vertices]
        before = [board.weights[i] for i in outside]
        tree_switch(board, comp)
        assert [board.weights[i] for i in outside] == before

    def test_non_ordinary_edge_rejected(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1)]
        board = new_board(points, [-1, 1, 1, 1])
        fake = Component(vertices=(0, 1), root=1, parent={0: 1}, depth={1: 0, 0: 1}, order=(1, 0))
        with pytest.raises(PreconditionError):
            tree_switch(board, fake)  # edge 0-1 lies on the 3-point line y=0


class TestTripleFixup:
    def test_collinear_triple_all_minus(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(1, 3), Point(4, 7)]
        board = new_board(points, [-1, -1, -1, 1, 1, 1])
        triple_fixup(board, (0, 1, 2), "triple_line")
        assert sum(board.weights[i] for i in (0, 1, 2)) == 3
        assert len(board.switch_log) == 1

    def test_collinear_triple_nonnegative_untouched(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(1, 3), Point(4, 7)]
        board = new_board(points, [1, 1, -1, 1, 1, 1])
        triple_fixup(board, (0, 1, 2), "triple_line")
        assert board.switch_log == []

    def test_shared_pair_cases(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=6, seed=2))
        # (+1, -1, -1): double switch lifts the triple to sum 3
        board = new_board(points, [1, -1, -1, 1, 1, 1])
        triple_fixup(board, (0, 1, 2), "shared_pair")
        assert sum(board.weights[i] for i in (0, 1, 2)) == 3
        assert [board.weights[i] for i in (3, 4, 5)] == [1, 1, 1]
        # (-1, +1, +1): nothing to do, sum stays 1
        board = new_board(points, [-1, 1, 1, 1, 1, 1])
        triple_fixup(board, (0, 1, 2), "shared_pair")
        assert board.switch_log == []
        # exhaustive: sum >= 1 for every start, rest untouched
        for w in product((1, -1), repeat=3):
            board = new_board(points, list(w) + [1, -1, 1])
            triple_fixup(board, (0, 1, 2), "shared_pair")
            assert sum(board.weights[i] for i in (0, 1, 2)) >= 1
            assert [board.weights[i] for i in (3, 4, 5)] == [1, -1, 1]

    def test_preconditions(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0), Point(0, 1), Point(1, 3)]
        board = new_board(points, [1] * 6)
        with pytest.raises(PreconditionError):
            triple_fixup(board, (0, 1, 2), "triple_line")  # line has 4 active points
        with pytest.raises(PreconditionError):
            triple_fixup(board, (0, 1, 2), "shared_pair")  # lines not ordinary
        with pytest.raises(PreconditionError):
            triple_fixup(board, (0, 1, 4), "banana")


class TestGeneralPosition:
    def test_all_plus(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=8, seed=1))
        outcome = solve_general_position(new_board(points, [1] * 8))
        assert outcome.final_discrepancy == 8
        assert len(outcome.certificate.switches) == 0

    def test_two_minuses(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=4, seed=3))
        weights = [-1, 1, -1, 1]
        outcome = solve_general_position(new_board(points, weights))
        assert outcome.final_discrepancy >= 2
        assert outcome.final_discrepancy <= exact_value(points, weights)
        assert_sound(points, outcome)

    def test_n5_worst_case_is_exactly_three(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=5, seed=4))
        finals = []
        for weights in product((1, -1), repeat=5):
            outcome = solve_general_position(new_board(points, list(weights)))
            assert len(outcome.certificate.switches) <= 5 // 2
            assert_sound(points, outcome)
            finals.append(outcome.final_discrepancy)
        assert min(finals) == 3  # n - 2 is tight: odd minus-parity is invariant

    def test_rejects_three_collinear(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1)]
        with pytest.raises(PreconditionError):
            solve_general_position(new_board(points, [1] * 4))


class TestSolveSmall:
    def test_n4_with_triple_line_all_weights(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1)]
        code = switch_code(connecting_lines(points))
        for weights in product((1, -1), repeat=4):
            outcome = solve_small(new_board(points, list(weights)))
            assert outcome.final_discrepancy >= 2
            assert outcome.final_discrepancy <= max_discrepancy(code, weights).value
            assert_sound(points, outcome)

    def test_n5_four_point_line_double_switch(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=5))
        code = switch_code(connecting_lines(points))
        for weights in product((1, -1), repeat=5):
            outcome = solve_small(new_board(points, list(weights)))
            assert outcome.final_discrepancy >= 3
            assert outcome.final_discrepancy <= max_discrepancy(code, weights).value
            assert_sound(points, outcome)

    def test_n5_exactly_three_collinear(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(1, 2)]
        for weights in product((1, -1), repeat=5):
            outcome = solve_small(new_board(points, list(weights)))
            assert outcome.final_discrepancy >= 3
            assert_sound(points, outcome)

    def test_n6_four_collinear_plus_two(self):
        points = [Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0), Point(0, 1), Point(1, 2)]
        code = switch_code(connecting_lines(points))
        for weights in product((1, -1), repeat=6):
            outcome = solve_small(new_board(points, list(weights)))
            assert outcome.final_discrepancy >= 2
            assert outcome.final_discrepancy <= max_discrepancy(code, weights).value
            assert_sound(points, outcome)

    def test_n6_all_shapes(self):
        shapes = [
            [Point(i, 0) for i in range(5)] + [Point(0, 1)],  # 5 collinear
            [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 1), Point(1, 1), Point(0, 3)],  # triples
            list(generate(GeneratorSpec(kind="random_gp", n=6, seed=6))[0]),  # general position
            [Point(0, 0), Point(1, 0), Point(2, 0), Point(0, 2), Point(1, 2), Point(2, 2)],  # two triples
        ]
        for points in shapes:
            for weights in product((1, -1), repeat=6):
                outcome = solve_small(new_board(points, list(weights)))
                assert outcome.final_discrepancy >= 2
                assert_sound(points, outcome)

    def test_size_range(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=7, seed=7))
        with pytest.raises(PreconditionError):
            solve_small(new_board(points, [1] * 7))


class TestSolveLongLine:
    def test_near_pencil_7_all_weights(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=7))
        for weights in product((1, -1), repeat=7):
            outcome = solve_long_line(new_board(points, list(weights)))
            assert outcome.final_discrepancy >= 5
            assert outcome.certificate.claimed_bound_kind == "n_minus_2"
            assert_sound(points, outcome)

    def test_n8_line_of_six(self):
        points = [Point(i, 0) for i in range(6)] + [Point(0, 1), Point(3, 2)]
        code = switch_code(connecting_lines(points))
        rng = random.Random(0)
        for _ in range(60):
            weights = [rng.choice((1, -1)) for _ in points]
            outcome = solve_long_line(new_board(points, weights))
            assert outcome.final_discrepancy >= third_bound(8)
            assert outcome.final_discrepancy <= max_discrepancy(code, weights).value
            assert_sound(points, outcome)

    def test_all_plus_no_switches(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=9))
        outcome = solve_long_line(new_board(points, [1] * 9))
        assert outcome.final_discrepancy == 9
        assert len(outcome.certificate.switches) == 0

    def test_preconditions(self):
        points, _ = generate(GeneratorSpec(kind="near_pencil", n=5))
        with pytest.raises(PreconditionError):
            solve_long_line(new_board(points, [1] * 5))  # n < 7
        grid, _ = generate(GeneratorSpec(kind="grid", rows=3, cols=3))
        with pytest.raises(PreconditionError):
            solve_long_line(new_board(grid, [1] * 9))  # longest line has 3 < n-3


class TestSolveThird:
    def test_all_plus_fast_path(self):
        points, _ = generate(GeneratorSpec(kind="grid", rows=4, cols=4))
        outcome = solve_third(new_board(points, [1] * 16))
        assert outcome.final_discrepancy == 16
        assert outcome.certificate.switches == ()

    def test_grid3_all_minus(self):
        points, _ = generate(GeneratorSpec(kind="grid", rows=3, cols=3))
        weights = [-1] * 9
        outcome = solve_third(new_board(points, weights))
        assert outcome.final_discrepancy >= 3
        assert outcome.final_discrepancy <= exact_value(points, weights)
        assert_sound(points, outcome)

    def test_trace_partitions_point_set(self):
        points, weights = generate_for("grid", 20, seed=3)
        outcome = solve_third(new_board(points, weights))
        consumed: list[int] = []
        for step in outcome.strategy_trace:
            if step["step"] in ("peel_pair", "peel_triple"):
                consumed.extend(step["triple"])
            elif step["step"] in ("base_small", "base_pencil"):
                consumed.extend(step["points"])
        assert sorted(consumed) == list(range(len(points)))

    def test_collinear_rejected(self):
        points = [Point(i, 0) for i in range(5)]
        with pytest.raises(CollinearInputError):
            solve_third(new_board(points, [1] * 5))

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_classes_with_oracle_dominance(self, kind):
        rng = random.Random(hash(kind) % 1000)
        for trial in range(25):
            n = rng.randint(3, 20)
            points, weights = generate_for(kind, n, seed=trial)
            board = new_board(points, weights)
            outcome = solve_third(board)
            assert outcome.final_discrepancy >= third_bound(board.n)
            assert_sound(points, outcome)
            if board.n <= 20:
                assert outcome.final_discrepancy <= exact_value(points, weights)


class TestSolveCubic:
    def test_twelve_cubic_points_all_minus(self):
        points, _ = generate(GeneratorSpec(kind="cubic", n=12))
        assert heavy_lines(connecting_lines(points), 3) == []
        weights = [-1] * 12
        outcome = solve_cubic(new_board(points, weights))
        assert outcome.final_discrepancy >= 10
        assert outcome.final_discrepancy <= exact_value(points, weights)
        assert_sound(points, outcome)

    def test_single_component_spans_everything(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=10, seed=10))
        graph = ordinary_line_graph(connecting_lines(points))
        assert len(graph.components) == 1
        weights = [-1] * 10
        outcome = solve_cubic(new_board(points, weights))
        assert outcome.final_discrepancy >= 8
        assert_sound(points, outcome)

    def test_heavy_line_plus_three(self):
        points, weights = generate(
            GeneratorSpec(kind="collinear_plus_k", n=8, k=3, seed=5, weight_mode="random")
        )
        board = new_board(points, weights)
        outcome = solve_cubic(board)
        assert outcome.final_discrepancy >= board.n - 2
        assert_sound(points, outcome)

    def test_two_heavy_lines_rejected(self):
        points, _ = generate(GeneratorSpec(kind="grid", rows=4, cols=4))
        with pytest.raises(PreconditionError):
            solve_cubic(new_board(points, [1] * 16))

    def test_mass_guarantee(self):
        rng = random.Random(99)
        for trial in range(40):
            kind = rng.choice(("cubic", "collinear_plus_k", "circle_plus_line", "random_gp"))
            points, weights = generate_for(kind, rng.randint(5, 24), seed=trial)
            board = new_board(points, weights)
            if len(heavy_lines(board.incidence, 3)) > 1:
                continue
            outcome = solve_cubic(board)
            assert outcome.final_discrepancy >= board.n - 2
            assert_sound(points, outcome)


class TestSolveNearPerfect:
    def test_connected_graph_single_peel(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=30, seed=30))
        weights = [-1] * 30
        board = new_board(points, weights)
        outcome = solve_near_perfect(board)
        assert outcome.final_discrepancy >= 28
        assert len(outcome.certificate.switches) <= 29
        assert_sound(points, outcome)

    def test_grid_5x5_trace_and_parity(self):
        points, weights = generate(GeneratorSpec(kind="grid", rows=5, cols=5, seed=1, weight_mode="random"))
        outcome = solve_near_perfect(new_board(points, weights))
        assert outcome.strategy_trace
        assert outcome.final_discrepancy >= third_bound(25)
        assert outcome.final_discrepancy % 2 == 25 % 2
        assert_sound(points, outcome)

    def test_grid_4x4_oracle_dominance(self):
        points, weights = generate(GeneratorSpec(kind="grid", rows=4, cols=4, seed=2, weight_mode="random"))
        outcome = solve_near_perfect(new_board(points, weights))
        assert outcome.final_discrepancy <= exact_value(points, weights)

    def test_params_validation(self):
        with pytest.raises(PreconditionError):
            NearPerfectParams(slack=0)
        with pytest.raises(PreconditionError):
            NearPerfectParams(min_component=1)
        with pytest.raises(PreconditionError):
            NearPerfectParams(min_component=5, small_cutoff=8)

    def test_small_cutoff_forces_fallback(self):
        points, weights = generate(GeneratorSpec(kind="grid", rows=3, cols=3, seed=3, weight_mode="all_minus"))
        params = NearPerfectParams(slack=0.5, min_component=4, small_cutoff=10)
        outcome = solve_near_perfect(new_board(points, weights), params)
        assert any(s["step"] == "fallback" for s in outcome.strategy_trace)
        assert outcome.final_discrepancy >= third_bound(9)
        assert_sound(points, outcome)

    def test_peel_exhaustion_reaches_n_minus_2(self):
        rng = random.Random(55)
        for trial in range(30):
            kind = rng.choice(ALL_KINDS)
            points, weights = generate_for(kind, rng.randint(12, 40), seed=trial)
            board = new_board(points, weights)
            outcome = solve_near_perfect(board)
            assert_sound(points, outcome)
            clean = not any(
                s["step"] == "fallback" or s["step"].startswith("unresolved")
                for s in outcome.strategy_trace
            )
            if clean:
                assert outcome.final_discrepancy >= board.n - 2


class TestBalance:
    def test_triangle_all_plus_frozen(self):
        outcome = balance(new_board(TRIANGLE, [1, 1, 1]))
        assert outcome.final_discrepancy == -1
        assert len(outcome.certificate.switches) == 1

    def test_n4_all_plus(self):
        points, _ = generate(GeneratorSpec(kind="random_gp", n=4, seed=44))
        outcome = balance(new_board(points, [1] * 4))
        assert outcome.final_discrepancy in (-2, 0, 2)
        assert_sound(points, outcome)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_classes(self, kind):
        rng = random.Random(hash(kind) % 512)
        for trial in range(20):
            points, weights = generate_for(kind, rng.randint(3, 40), seed=trial)
            board = new_board(points, weights)
            outcome = balance(board)
            assert abs(outcome.final_discrepancy) <= 2
            assert outcome.final_discrepancy % 2 == board.n % 2
            assert len(outcome.certificate.switches) <= 8 * board.n
            assert_sound(points, outcome)

    def test_collinear_rejected(self):
        points = [Point(i, 1) for i in range(4)]
        with pytest.raises(CollinearInputError):
            balance(new_board(points, [1] * 4))


class TestDispatch:
    def test_selection_strings(self):
        points, weights = generate(GeneratorSpec(kind="grid", rows=3, cols=3, seed=9, weight_mode="random"))
        board = new_board(points, weights)
        assert solve(board, "third").certificate.claimed_bound_kind == "third"
        assert solve(board, "balance").certificate.claimed_bound_kind == "balance"
        assert solve(board, "auto").final_discrepancy >= third_bound(9)
        gp_points, _ = generate(GeneratorSpec(kind="random_gp", n=6, seed=1))
        assert solve(new_board(gp_points, [-1] * 6), "gp").final_discrepancy >= 4
        cubic_points, _ = generate(GeneratorSpec(kind="cubic", n=8))
        assert solve(new_board(cubic_points, [-1] * 8), "cubic").final_discrepancy >= 6

    def test_unknown_selection(self):
        board = new_board(TRIANGLE, [1, 1, 1])
        with pytest.raises(PreconditionError):
            solve(board, "magic")

    def test_solvers_do_not_mutate_input(self):
        points, weights = generate(GeneratorSpec(kind="grid", rows=3, cols=3, seed=2, weight_mode="random"))
        board = new_board(points, weights)
        before = list(board.weights)
        solve_third(board)
        balance(board)
        solve_near_perfect(board)
        assert board.weights == before
        assert board.switch_log == []
