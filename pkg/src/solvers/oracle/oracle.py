import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from ...config import ORACLE_LIMIT_N
from ...errors import InfeasibleInstanceError, InstanceTooLargeError
from ...model.instance import Instance, Number
from ...model.solution import Solution, route_length


@dataclass
class OracleResult:
    score: Number
    solution: Solution
    nodes: int


class _Search:
    """Set partitions by bitmask, the group holding the lowest customer first."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.rows = instance.dist_rows
        self.nodes = 0
        self._tours: Dict[int, Tuple[Number, Tuple[int, ...]]] = {}
        self._best: Dict[Tuple[int, int], Optional[Tuple[Number, List[Tuple[int, ...]]]]] = {}

    def members(self, mask: int) -> List[int]:
        return [c for c in self.instance.customers if mask >> (c - 1) & 1]

    def load(self, mask: int) -> Number:
        demand = self.instance.demand_list
        return sum(demand[c] for c in self.members(mask))

    def tour(self, mask: int) -> Tuple[Number, Tuple[int, ...]]:
        if mask not in self._tours:
            best = None
            for order in permutations(self.members(mask)):
                if len(order) > 1 and order[0] > order[-1]:
                    continue
                length = route_length(order, self.rows)
                if best is None or length < best[0]:
                    best = (length, order)
            self._tours[mask] = best
        return self._tours[mask]

    def best(self, mask: int, groups: int) -> Optional[Tuple[Number, List[Tuple[int, ...]]]]:
        if mask == 0:
            return 0, []
        if groups == 0:
            return None
        key = (mask, groups)
        if key in self._best:
            return self._best[key]
        low = mask & -mask
        rest = mask ^ low
        found = None
        sub = rest
        while True:
            group = sub | low
            self.nodes += 1
            if self.load(group) <= self.instance.capacity:
                tail = self.best(mask ^ group, groups - 1)
                if tail is not None:
                    length, order = self.tour(group)
                    total = length + tail[0]
                    if found is None or total < found[0]:
                        found = (total, [order] + tail[1])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        self._best[key] = found
        return found


def solve_exact(instance: Instance, limit_n: int = ORACLE_LIMIT_N) -> OracleResult:
    """
    Optimal CVRP solution of a tiny instance: every partition of the
    customers into at most m capacity-feasible groups, each group routed by
    its best permutation.
    """
    if instance.n > limit_n:
        raise InstanceTooLargeError(f"n={instance.n} exceeds the exact-search limit {limit_n}")
    search = _Search(instance)
    everyone = (1 << instance.n) - 1
    found = search.best(everyone, instance.vehicles)
    if found is None:
        raise InfeasibleInstanceError(
            f"no partition into at most {instance.vehicles} groups of load <= {instance.capacity}"
        )
    solution = Solution.from_customer_lists([list(order) for order in found[1]], instance)
    logging.info(f"[ORACLE] {instance.name}: optimum {solution.score} after {search.nodes} nodes")
    return OracleResult(score=solution.score, solution=solution, nodes=search.nodes)
