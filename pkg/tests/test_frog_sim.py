import numpy as np
import pytest

from frogline import (NEVER, BudgetExceededError, WalkStore, build_graph,
                      cover_time, covered_under, init_config,
                      parse_descriptor, range_stats, run_activation,
                      susceptibility)

from oracles import activation_times, bfs_distances, first_visit_table

SMALL = ["tree:d=2,n=2", "tree:d=2,n=3", "cycle:n=5", "cycle:n=9",
         "complete:n=4", "complete:n=8"]


@pytest.mark.parametrize("text", SMALL)
@pytest.mark.parametrize("lam", [0.0, 1.0, 2.0])
def test_activation_matches_shortest_paths(text, lam):
    g = build_graph(parse_descriptor(text))
    for seed in range(5):
        init = init_config(g, lam, 0, seed)
        walks = WalkStore(g, init)
        ell = first_visit_table(g, init, walks, 24)
        for tau in (0, 1, 2, 5, 11, 24):
            got = run_activation(g, init, walks, tau)
            want = activation_times(g, init, ell, tau)
            assert np.array_equal(got.at, want), \
                "%s lam=%s seed=%d tau=%d" % (text, lam, seed, tau)


def test_activation_origin_and_distance_floor():
    g = build_graph(parse_descriptor("tree:d=2,n=3"))
    dist = bfs_distances(g, 0)
    for seed in range(5):
        init = init_config(g, 1.0, 0, seed)
        rep = run_activation(g, init, WalkStore(g, init), 12)
        assert rep.at[0] == 0
        live = rep.at < NEVER
        # nothing activates sooner than graph distance from the origin
        assert np.all(rep.at[live] >= dist[live])


def test_covered_flag_matches_at_vector():
    g = build_graph(parse_descriptor("cycle:n=7"))
    for seed in range(8):
        init = init_config(g, 0.5, 0, seed)
        walks = WalkStore(g, init)
        for tau in (1, 4, 16):
            rep = run_activation(g, init, walks, tau)
            assert rep.covered == bool(np.all(rep.at < NEVER))
            cov, _ = covered_under(g, init, walks, tau)
            assert cov == rep.covered


def test_susceptibility_is_minimal():
    g = build_graph(parse_descriptor("tree:d=2,n=4"))
    for seed in range(6):
        init = init_config(g, 1.0, 0, seed)
        tau = susceptibility(g, init, WalkStore(g, init))
        walks = WalkStore(g, init)
        assert covered_under(g, init, walks, tau)[0]
        assert tau >= 1
        if tau > 1:
            assert not covered_under(g, init, walks, tau - 1)[0]


def test_susceptibility_lambda_zero_is_walk_cover_time():
    g = build_graph(parse_descriptor("cycle:n=8"))
    for seed in range(5):
        init = init_config(g, 0.0, 0, seed)
        walks = WalkStore(g, init)
        tau = susceptibility(g, init, walks)
        w = walks.prefix(init.planted_pid, tau)
        assert len(np.unique(w)) == g.vertex_count
        assert len(np.unique(w[:-1])) == g.vertex_count - 1


def test_susceptibility_ceiling_budget():
    g = build_graph(parse_descriptor("tree:d=2,n=5"))
    init = init_config(g, 0.01, 0, 3)
    with pytest.raises(BudgetExceededError) as err:
        susceptibility(g, init, WalkStore(g, init), tau_ceiling=4)
    assert err.value.bracket is not None


def test_cover_time_floor_and_budget():
    g = build_graph(parse_descriptor("tree:d=2,n=4"))
    for seed in range(5):
        init = init_config(g, 2.0, 0, seed)
        ct = cover_time(g, init, WalkStore(g, init))
        assert ct >= g.n  # the deepest leaf is n steps away
    init = init_config(g, 0.5, 0, 1)
    with pytest.raises(BudgetExceededError) as err:
        cover_time(g, init, WalkStore(g, init), step_cap=2)
    assert 0 < err.value.fraction_covered < 1


def test_cover_time_single_edge():
    g = build_graph(parse_descriptor("complete:n=2"))
    init = init_config(g, 0.0, 0, 11)
    assert cover_time(g, init, WalkStore(g, init)) == 1


def test_range_stats_contract():
    g = build_graph(parse_descriptor("tree:d=2,n=5"))
    samples = range_stats(g, 0, 64, list(map(int, g.leaves())), 20, seed=3)
    assert len(samples) == 20
    for s in samples:
        assert s.start == 0
        assert s.t == 64
        assert 1 <= len(s.visited) <= 65  # range includes the start
        assert 0 in s.visited
        assert 0 <= s.hits_in_target <= len(s.visited)
        assert 0 <= s.terminal < g.vertex_count
    # determinism
    again = range_stats(g, 0, 64, list(map(int, g.leaves())), 20, seed=3)
    assert [len(s.visited) for s in samples] == \
        [len(s.visited) for s in again]


def test_range_stats_t_zero():
    g = build_graph(parse_descriptor("cycle:n=9"))
    in_target = range_stats(g, 5, 0, [5], 3, seed=1)
    assert all(s.hits_in_target == 1 for s in in_target)
    assert all(s.terminal == 5 for s in in_target)
    off_target = range_stats(g, 4, 0, [5], 3, seed=1)
    assert all(s.hits_in_target == 0 for s in off_target)


def test_range_monotone_in_t():
    g = build_graph(parse_descriptor("cycle:n=30"))
    a = range_stats(g, 0, 16, [5], 10, seed=2)
    b = range_stats(g, 0, 64, [5], 10, seed=2)
    for sa, sb in zip(a, b):
        assert len(sa.visited) <= len(sb.visited)
        assert set(sa.visited) <= set(sb.visited)
