import numpy as np
import pytest

from src.config import RANK_WEIGHT_FLOOR
from src.model.instance import Instance, instance_from_matrix
from src.model.solution import check_feasible
from src.prng.families import GeneratorFamily
from src.prng.generator import new_generator
from src.prng.streams import MINIMAL_STANDARD_PARAMS, default_params
from src.solvers.nearest.nearest import mcs_nni_solve, nni_solve
from src.solvers.nearest.rank_table import RankTable


def line_instance(positions, demands, capacity, vehicles):
    x = np.array([0, *positions])
    return instance_from_matrix(np.abs(x[:, None] - x[None, :]), demands, capacity, vehicles)


def test_forced_starts(nni_demo):
    """
    From 5 the customers 2 and 3 are both 6 away; only 3 still fits. The
    last vehicle cannot take 8 (4 + 2 + 3 > 8), leaving it unserved.
    """
    solution = nni_solve(nni_demo, new_generator(MINIMAL_STANDARD_PARAMS), starts=[1, 5, 2])
    assert solution.customer_lists() == [[1, 6, 4], [5, 3], [2, 7]]
    assert solution.partial
    assert solution.unserved(nni_demo) == [8]


def test_equal_distances_go_to_the_lower_index():
    instance = line_instance([5, 8, 2], [1, 1, 1], 10, 1)
    solution = nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS), starts=[1])
    assert solution.customer_lists() == [[1, 2, 3]]


def test_full_tightness_can_strand_a_customer():
    instance = line_instance([10, 30, 11, 31], [5, 5, 4, 6], 10, 2)
    solution = nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS), starts=[1, 2])
    assert solution.customer_lists() == [[1, 3], [2]]
    assert solution.partial
    assert solution.unserved(instance) == [4]


def test_random_starts_follow_the_stream(en13k4):
    first = nni_solve(en13k4, new_generator(MINIMAL_STANDARD_PARAMS))
    second = nni_solve(en13k4, new_generator(MINIMAL_STANDARD_PARAMS))
    assert first.customer_lists() == second.customer_lists()
    # 172361 mod 12 picks the 6th unvisited customer
    assert first.routes[0].customers[0] == 172361 % 12 + 1


def test_unknown_start_is_rejected(nni_demo):
    with pytest.raises(ValueError):
        nni_solve(nni_demo, new_generator(MINIMAL_STANDARD_PARAMS), starts=[1, 1])


def test_nni_routes_respect_capacity(make_random_instance):
    for seed in range(10):
        instance = make_random_instance(seed, 8).with_vehicles(3)
        solution = nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS))
        assert not check_feasible(solution, instance).capacity_violations


def test_rank_table(en13k4):
    table = RankTable(5, [1, 2, 7, 10, 12], en13k4.dist_rows)
    assert table.candidates == [2, 10, 12, 7, 1]
    assert table.ranks.tolist() == [1, 2, 3, 4, 5]
    assert table.weights.tolist() == pytest.approx([0.8, 0.6, 0.4, 0.2, 0.0])
    assert table.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
    assert table.probabilities[-1] == pytest.approx(RANK_WEIGHT_FLOOR / (2.0 + RANK_WEIGHT_FLOOR))
    assert np.all(np.diff(table.probabilities) <= 0)


def test_rank_table_single_candidate(en13k4):
    table = RankTable(3, [8], en13k4.dist_rows)
    assert table.probabilities.tolist() == [1.0]
    rng = new_generator(MINIMAL_STANDARD_PARAMS)
    assert all(table.sample(rng) == 8 for _ in range(20))


def test_rank_table_samples_mostly_near(en13k4):
    table = RankTable(5, list(range(1, 13)), en13k4.dist_rows)
    rng = new_generator(default_params(GeneratorFamily.LEHMER))
    picks = [table.sample(rng) for _ in range(3000)]
    assert set(picks) <= set(range(1, 13))
    assert picks.count(table.candidates[0]) > picks.count(table.candidates[-1])


def test_mcs_nni_is_feasible_and_deterministic(en13k4):
    first = mcs_nni_solve(en13k4, new_generator(MINIMAL_STANDARD_PARAMS), r=3)
    second = mcs_nni_solve(en13k4, new_generator(MINIMAL_STANDARD_PARAMS), r=3)
    assert first.customer_lists() == second.customer_lists()
    assert not check_feasible(first, en13k4).capacity_violations


def test_mcs_nni_single_candidate():
    instance = Instance("pair", np.array([[0, 2, 3], [2, 0, 4], [3, 4, 0]]), np.array([0, 1, 1]), 5, 1)
    solution = mcs_nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS), r=50)
    assert len(solution.routes) == 1
    assert sorted(solution.routes[0].customers) == [1, 2]


def test_mcs_nni_does_not_depend_on_workers(cws_demo):
    one = mcs_nni_solve(cws_demo, new_generator(MINIMAL_STANDARD_PARAMS), r=4, workers=1)
    two = mcs_nni_solve(cws_demo, new_generator(MINIMAL_STANDARD_PARAMS), r=4, workers=2)
    assert one.customer_lists() == two.customer_lists()
    assert one.score == two.score


def test_mcs_nni_needs_a_rollout(cws_demo):
    with pytest.raises(ValueError):
        mcs_nni_solve(cws_demo, new_generator(MINIMAL_STANDARD_PARAMS), r=0)


def test_rank_table_power_concentrates_on_the_nearest(en13k4):
    table = RankTable(5, [1, 2, 7, 10, 12], en13k4.dist_rows, floor=0.0, power=256.0)
    assert table.probabilities[0] == 1.0
    rng = new_generator(default_params(GeneratorFamily.EXPLICIT_INVERSIVE))
    assert all(table.sample(rng) == 2 for _ in range(200))


def test_concentrated_single_rollout_follows_nni():
    """
    On a ray of five customers every rank-1 completion is the greedy one, and
    the nearest child always has the shortest. 749387680 mod 5 starts at 1.
    """
    instance = line_instance([1, 2, 3, 4, 5], [1] * 5, 10, 1)
    mcs = mcs_nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS), r=1, floor=0.0, power=256.0)
    start = mcs.routes[0].customers[0]
    nni = nni_solve(instance, new_generator(MINIMAL_STANDARD_PARAMS), starts=[start])
    assert start == 1
    assert mcs.customer_lists() == nni.customer_lists() == [[1, 2, 3, 4, 5]]
    assert mcs.score == nni.score == 10


def test_mcs_nni_with_eight_workers(cws_demo):
    one = mcs_nni_solve(cws_demo, new_generator(MINIMAL_STANDARD_PARAMS), r=3, workers=1)
    eight = mcs_nni_solve(cws_demo, new_generator(MINIMAL_STANDARD_PARAMS), r=3, workers=8)
    assert one.customer_lists() == eight.customer_lists()
