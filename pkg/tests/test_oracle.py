import numpy as np
import pytest

from src.errors import InfeasibleInstanceError, InstanceTooLargeError
from src.model.instance import Instance, instance_from_matrix
from src.model.solution import check_feasible
from src.solvers.oracle.oracle import solve_exact
from src.solvers.savings.savings import cws_solve


def test_single_customer():
    instance = instance_from_matrix([[0, 4], [4, 0]], [3], 5, 1)
    result = solve_exact(instance)
    assert result.score == 8
    assert result.solution.customer_lists() == [[1]]


def test_no_worse_than_cws(cws_demo):
    result = solve_exact(cws_demo)
    assert result.score <= cws_solve(cws_demo).score == 83
    report = check_feasible(result.solution, cws_demo)
    assert report.feasible
    assert not report.fleet_exceeded


def test_full_demands_force_singletons(make_random_instance):
    base = make_random_instance(3, 4)
    demands = np.array([0, 20, 20, 20, 20])
    instance = Instance("full", base.dist, demands, 20, 4)
    result = solve_exact(instance)
    assert result.score == sum(2 * base.dist_rows[0][c] for c in base.customers)
    assert len(result.solution.routes) == 4

    with pytest.raises(InfeasibleInstanceError):
        solve_exact(instance.with_vehicles(3))


def test_too_large(en13k4):
    with pytest.raises(InstanceTooLargeError):
        solve_exact(en13k4)


def test_relabelling_keeps_the_optimum(make_random_instance):
    instance = make_random_instance(8, 7).with_vehicles(4)
    perm = np.concatenate([[0], np.random.default_rng(2).permutation(np.arange(1, 8))])
    relabelled = Instance("perm", instance.dist[np.ix_(perm, perm)], instance.demands[perm], 20, 4)
    assert solve_exact(instance).score == solve_exact(relabelled).score


def test_optimum_is_feasible(tiny_instances):
    for instance in tiny_instances:
        result = solve_exact(instance)
        report = check_feasible(result.solution, instance)
        assert report.feasible
        assert len(result.solution.routes) <= instance.vehicles
        assert result.nodes > 0


@pytest.mark.slow
def test_e_n13_k4_optimum(en13k4):
    result = solve_exact(en13k4, limit_n=12)
    assert result.score == 247
    assert check_feasible(result.solution, en13k4).feasible
