import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import partial
from typing import Callable, List, Optional, Sequence

from ...config import RANK_WEIGHT_FLOOR
from ...model.instance import Instance, Number
from ...model.solution import Solution
from ...prng.generator import GeneratorParams, GeneratorState
from ...prng.streams import derive_seed, spawn_substream
from ..mcs.monte_carlo import monte_carlo_best_child, penalty_unit, rollout_penalty
from .rank_table import RankTable

# pick(focus, load, unvisited) -> next candidate, fitting or not
Picker = Callable[[int, Number, List[int]], int]


def _grow(route: List[int], load: Number, unvisited: List[int], pick: Picker, instance: Instance) -> Number:
    """Appends picked customers until the pick does not fit or nobody is left."""
    demand = instance.demand_list
    while unvisited:
        candidate = pick(route[-1], load, unvisited)
        if load + demand[candidate] > instance.capacity:
            break
        route.append(candidate)
        load += demand[candidate]
        unvisited.remove(candidate)
    return load


def nearest_picker(instance: Instance) -> Picker:
    rows = instance.dist_rows
    demand = instance.demand_list
    capacity = instance.capacity

    def pick(focus: int, load: Number, unvisited: List[int]) -> int:
        row = rows[focus]
        # equal distances: a candidate that fits, then the lower index
        return min(unvisited, key=lambda c: (row[c], load + demand[c] > capacity, c))

    return pick


def _start(unvisited: List[int], rng: GeneratorState) -> int:
    return unvisited.pop(rng.next_mod(len(unvisited)))


def nni_solve(instance: Instance, rng: GeneratorState, starts: Optional[Sequence[int]] = None) -> Solution:
    """
    One route per vehicle: a random unvisited start, then the nearest
    unvisited customer while it fits. Customers left after m vehicles make
    the solution partial. `starts` overrides the random starts of the first
    vehicles.
    """
    demand = instance.demand_list
    pick = nearest_picker(instance)
    unvisited = list(instance.customers)
    routes = []
    for v in range(instance.vehicles):
        if not unvisited:
            break
        if starts is not None and v < len(starts):
            if starts[v] not in unvisited:
                raise ValueError(f"start customer {starts[v]} of vehicle {v} is not unvisited")
            start = starts[v]
            unvisited.remove(start)
        else:
            start = _start(unvisited, rng)
        route = [start]
        _grow(route, demand[start], unvisited, pick, instance)
        routes.append(route)
    solution = Solution.from_customer_lists(routes, instance)
    if solution.partial:
        logging.info(f"[NNI] {instance.name}: customers {solution.unserved(instance)} left unserved")
    logging.info(f"[NNI] {instance.name}: {len(routes)} routes, score {solution.score}")
    return solution


def nni_rollout(
    instance: Instance,
    routes: List[List[int]],
    route: List[int],
    load: Number,
    unvisited: List[int],
    vehicles_left: int,
    params: GeneratorParams,
    decision_seed: int,
    r: int,
    unit: Number,
    floor: float,
    power: float,
    child: int,
    k: int,
) -> Number:
    """Random rank-weighted completion after appending `child` to `route`."""
    rows = instance.dist_rows
    demand = instance.demand_list
    rng = spawn_substream(decision_seed, child * r + k, params)

    def pick(focus: int, _load: Number, candidates: List[int]) -> int:
        return RankTable(focus, candidates, rows, floor, power).sample(rng)

    routes = [list(done) for done in routes]
    route = route + [child]
    unvisited = [c for c in unvisited if c != child]
    _grow(route, load + demand[child], unvisited, pick, instance)
    routes.append(route)
    for _ in range(vehicles_left):
        if not unvisited:
            break
        start = _start(unvisited, rng)
        route = [start]
        _grow(route, demand[start], unvisited, pick, instance)
        routes.append(route)
    return rollout_penalty(Solution.from_customer_lists(routes, instance), instance, unit)


def _mcs_routes(
    instance: Instance,
    rng: GeneratorState,
    r: int,
    floor: float,
    power: float,
    executor: Optional[Executor],
) -> List[List[int]]:
    demand = instance.demand_list
    unit = penalty_unit(instance)
    master = rng.next()
    unvisited = list(instance.customers)
    routes: List[List[int]] = []
    decision = 0
    for v in range(instance.vehicles):
        if not unvisited:
            break
        start = _start(unvisited, rng)
        route, load = [start], demand[start]
        while True:
            children = [c for c in unvisited if load + demand[c] <= instance.capacity]
            if not children:
                break
            rollout = partial(
                nni_rollout,
                instance,
                routes,
                route,
                load,
                unvisited,
                instance.vehicles - v - 1,
                rng.params,
                derive_seed(master, decision),
                r,
                unit,
                floor,
                power,
            )
            child = monte_carlo_best_child(children, rollout, r, executor=executor)
            decision += 1
            route.append(child)
            load += demand[child]
            unvisited.remove(child)
        routes.append(route)
    return routes


def mcs_nni_solve(
    instance: Instance,
    rng: GeneratorState,
    r: int,
    workers: int = 1,
    floor: float = RANK_WEIGHT_FLOOR,
    power: float = 1.0,
) -> Solution:
    """
    NNI where each next customer is the fitting candidate with the lowest
    mean over r rank-weighted random completions. `floor` and `power` shape
    the rank weights of the completions (see RankTable).
    """
    if r < 1:
        raise ValueError(f"rollouts r must be >= 1, got {r}")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            routes = _mcs_routes(instance, rng, r, floor, power, executor)
    else:
        routes = _mcs_routes(instance, rng, r, floor, power, None)
    solution = Solution.from_customer_lists(routes, instance)
    logging.info(f"[MCS NNI] {instance.name}: r={r}, {len(routes)} routes, score {solution.score}")
    return solution
