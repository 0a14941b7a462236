import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from damage_lab.engine import (
    INF,
    BudgetExceeded,
    GameState,
    IllegalMove,
    Side,
    Terminal,
    Variant,
    apply_bellman,
    assert_damage_capt_bound,
    capture_time,
    damage_given_start,
    damage_number,
    damage_number_prime,
    damage_number_restricted,
    damage_result,
    not_adjacent_to_cop,
    relative_capture_time,
    solve_values,
    step,
    table_states,
)
from damage_lab.families import build_family, complete, cycle, path, star
from damage_lab.graph import Graph, radius_ecc_centers

from oracles import labeled_connected_graphs, oracle_damage, vi_damage
from test_graph import graphs


def dmg(spec):
    return damage_number(build_family(spec)).value


def dmg_prime(spec):
    return damage_number_prime(build_family(spec)).value


class TestStep:
    def test_cop_capture_prevents_damage(self):
        out, fresh = step(complete(3), GameState(0, 0, 1, Side.COP), 1)
        assert isinstance(out, Terminal) and out.damaged == 0 and fresh is None

    def test_robber_pass_damages(self):
        out, fresh = step(cycle(5), GameState(0, 0, 2, Side.ROBBER), 2)
        assert out == GameState(0b100, 0, 2, Side.COP) and fresh == 2

    def test_robber_move_damages_origin(self):
        out, fresh = step(cycle(5), GameState(0, 0, 2, Side.ROBBER), 3)
        assert out == GameState(0b100, 0, 3, Side.COP) and fresh == 2

    def test_robber_walks_onto_cop_after_damage(self):
        out, fresh = step(path(3), GameState(0, 0, 1, Side.ROBBER), 0)
        assert isinstance(out, Terminal) and out.damaged == 0b10 and fresh == 1

    def test_already_damaged_is_not_fresh(self):
        _, fresh = step(cycle(5), GameState(0b100, 0, 2, Side.ROBBER), 2)
        assert fresh is None

    def test_illegal(self):
        with pytest.raises(IllegalMove):
            step(cycle(6), GameState(0, 0, 3, Side.COP), 2)
        with pytest.raises(IllegalMove):
            step(cycle(6), GameState(0, 0, 3, Side.ROBBER), 5)

    def test_coincidence_is_not_a_state(self):
        with pytest.raises(ValueError):
            GameState(0, 1, 1, Side.COP)


class TestValues:
    def test_c4_robber_opposite(self):
        t = solve_values(cycle(4))
        assert t.value(0, 0, 2, Side.ROBBER) == 1

    def test_full_damage_is_zero(self):
        g = cycle(5)
        t = solve_values(g)
        assert all(t.value(g.full_mask, c, r, side) == 0
                   for c in range(5) for r in range(5) for side in Side)

    def test_p3_cop_captures_from_centre(self):
        assert solve_values(path(3)).value(0, 1, 0, Side.COP) == 0

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            solve_values(cycle(12), max_states=1000)
        assert table_states(4) == 2 * 16 * 16

    def test_fixed_point(self):
        for spec in ("cycle:5", "path:4", "star:3", "edges:5:0-1,1-2,2-3,3-4,4-0,0-2"):
            t = solve_values(build_family(spec))
            cop, rob = apply_bellman(t)
            for k in range(t.graph.n + 1):
                assert np.array_equal(cop[k], t.cop[k]) and np.array_equal(rob[k], t.rob[k])

    @pytest.mark.parametrize("n", range(1, 5))
    def test_oracle_equivalence(self, n):
        for g in labeled_connected_graphs(n):
            assert damage_number(g).value == oracle_damage(g)
            assert damage_number_prime(g).value == oracle_damage(g, robber_first=True)

    @pytest.mark.parametrize("spec", ["cycle:5", "path:5", "star:3", "edges:5:0-1,1-2,2-3,1-4"])
    def test_value_iteration_oracle(self, spec):
        g = build_family(spec)
        assert damage_number(g).value == vi_damage(g)
        assert damage_number_prime(g).value == vi_damage(g, robber_first=True)

    @settings(max_examples=25, deadline=None)
    @given(graphs(min_n=2, max_n=6, connected=True), st.data())
    def test_value_properties(self, g, data):
        t = solve_values(g)
        d = data.draw(st.integers(0, g.full_mask))
        c = data.draw(st.integers(0, g.n - 1))
        r = data.draw(st.integers(0, g.n - 1))
        x = data.draw(st.integers(0, g.n - 1))
        if c == r:
            return
        k = bin(d).count("1")
        for side in Side:
            v = t.value(d, c, r, side)
            assert 0 <= v <= g.n - k
            if not d >> x & 1:
                w = t.value(d | 1 << x, c, r, side)
                assert v >= w >= v - 1

    @settings(max_examples=25, deadline=None)
    @given(graphs(min_n=2, max_n=6, connected=True), st.integers(1, 6))
    def test_cap_clamps_exactly(self, g, cap):
        full = solve_values(g)
        capped = solve_values(g, cap=cap)
        for variant in Variant:
            want = min(damage_result(full, variant).value, cap)
            assert damage_result(capped, variant).value == want


class TestDamageNumbers:
    @pytest.mark.parametrize("m,want", [(5, 2), (6, 2), (7, 3)])
    def test_cycles(self, m, want):
        assert dmg(f"cycle:{m}") == want

    @pytest.mark.parametrize("m,want", [(6, 3), (5, 2), (4, 2)])
    def test_cycles_prime(self, m, want):
        assert dmg_prime(f"cycle:{m}") == want

    def test_path_five(self):
        assert dmg("path:5") == 1

    def test_clique_product(self):
        assert dmg("product:complete:3xcomplete:3") == 3

    def test_star_product(self):
        assert dmg("product:star:2xstar:2") == 1

    @pytest.mark.parametrize("n", range(1, 6))
    def test_complete(self, n):
        assert dmg(f"complete:{n}") == 0
        assert damage_given_start(complete(n), 0)[0] == 0

    def test_result_fields(self):
        res = damage_number(cycle(6))
        assert res.variant is Variant.NORMAL
        assert res.best_cop_starts == list(range(6))
        assert res.value == min(res.per_start) and res.stats.states > 0

    def test_robber_on_cop_is_never_the_witness(self):
        res = damage_number(star(3))
        assert all(res.witness_robber_start[c] != c or res.per_start[c] == 0 for c in range(4))

    @pytest.mark.parametrize("m,want", [(6, 2), (8, 3)])
    def test_restricted_even_cycles(self, m, want):
        g = cycle(m)
        assert damage_number_restricted(g, not_adjacent_to_cop(g), Variant.COP_PASSES_FIRST) == want

    def test_restricted_all_equals_prime(self):
        g = cycle(7)
        assert damage_number_restricted(g, range(7), Variant.COP_PASSES_FIRST) == \
            damage_number_prime(g).value
        with pytest.raises(ValueError):
            damage_number_restricted(g, [])

    def test_given_start(self):
        g = cycle(6)
        assert damage_given_start(g, 0) == (2, 2)


class TestCapture:
    def test_complete(self):
        assert capture_time(complete(5)).value == 1

    def test_c4_not_copwin(self):
        assert capture_time(cycle(4)).value == INF

    def test_path_five(self):
        res = capture_time(path(5))
        assert res.value == 2 == radius_ecc_centers(path(5))[0]
        assert res.best_cop_starts == [2]
        assert relative_capture_time(path(5), 2, 0) == 2

    def test_capture_oracle(self):
        # attractor by brute force: a position is won in k rounds if some cop reply
        # captures or leaves only robber replies that are won in k-1 rounds
        for g in [path(6), build_family("tree:_,0,0,1,1,2"), build_family("edges:5:0-1,1-2,2-0,2-3,3-4")]:
            won = {}

            def rounds(c, r, k):
                if c == r:
                    return True
                if k == 0:
                    return False
                key = (c, r, k)
                if key not in won:
                    won[key] = any(
                        c2 == r or all(r2 == c2 or rounds(c2, r2, k - 1) for r2 in g.closed_neighbors(r))
                        for c2 in g.closed_neighbors(c))
                return won[key]
            table = capture_time(g).table
            for c in range(g.n):
                for r in range(g.n):
                    want = next(k for k in range(g.n + 1) if rounds(c, r, k))
                    assert table[c][r] == want

    def test_bound(self):
        out = assert_damage_capt_bound(path(6))
        assert out.status == "pass" and out.values == {"dmg": 2, "capt": 3}
        assert assert_damage_capt_bound(complete(4)).values == {"dmg": 0, "capt": 1}
        assert assert_damage_capt_bound(cycle(4)).status == "skipped"
        assert assert_damage_capt_bound(Graph(1, (0,))).status == "skipped"
