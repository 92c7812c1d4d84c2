from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from ..errors import CustomerIndexError, DuplicateCustomerError, SolutionError
from .instance import Instance, Number


class Route:
    def __init__(self, customers: Sequence[int], load: Number):
        self.customers: List[int] = list(customers)
        self.load: Number = load

    @classmethod
    def of(cls, customers: Sequence[int], instance: Instance) -> "Route":
        demand = instance.demand_list
        return cls(customers, sum(demand[c] for c in customers))

    def canonical(self) -> Tuple[int, ...]:
        """Orientation-free key: the smaller of the route and its reverse."""
        forward = tuple(self.customers)
        return min(forward, forward[::-1])

    def __len__(self) -> int:
        return len(self.customers)

    def __repr__(self) -> str:
        return f"Route({self.customers}, load={self.load})"


class Solution:
    """
    Ordered routes plus their total depot-closed distance. A partial
    solution leaves some customers unserved.
    """

    def __init__(self, routes: List[Route], score: Number, partial: bool = False):
        self.routes: List[Route] = routes
        self.score: Number = score
        self.partial: bool = partial

    @classmethod
    def from_customer_lists(cls, routes: Iterable[Sequence[int]], instance: Instance) -> "Solution":
        built = [Route.of(r, instance) for r in routes if len(r) > 0]
        served = sum(len(r) for r in built)
        solution = cls(built, 0, partial=served < instance.n)
        solution.score = score(solution, instance)
        return solution

    def customer_lists(self) -> List[List[int]]:
        return [list(r.customers) for r in self.routes]

    def canonical_routes(self) -> frozenset:
        """Routes compared up to route order and orientation."""
        return frozenset(r.canonical() for r in self.routes)

    def unserved(self, instance: Instance) -> List[int]:
        served = {c for r in self.routes for c in r.customers}
        return [c for c in instance.customers if c not in served]

    def __repr__(self) -> str:
        flag = ", partial" if self.partial else ""
        return f"Solution({self.customer_lists()}, score={self.score}{flag})"


def route_length(customers: Sequence[int], rows: List[List[Number]]) -> Number:
    previous = 0
    total = 0
    for c in customers:
        total += rows[previous][c]
        previous = c
    return total + rows[previous][0]


def score(solution: Solution, instance: Instance) -> Number:
    """
    Sum over routes of c[0][first] + consecutive legs + c[last][0].
    """
    seen = set()
    rows = instance.dist_rows
    total = 0
    for route in solution.routes:
        if not route.customers:
            raise SolutionError("routes must be nonempty")
        for c in route.customers:
            if not 1 <= c <= instance.n:
                raise CustomerIndexError(f"customer {c} outside 1..{instance.n}")
            if c in seen:
                raise DuplicateCustomerError(f"customer {c} appears more than once")
            seen.add(c)
        total += route_length(route.customers, rows)
    return total


@dataclass
class FeasibilityReport:
    capacity_violations: List[Tuple[int, Number]] = field(default_factory=list)
    missing: List[int] = field(default_factory=list)
    duplicated: List[int] = field(default_factory=list)
    out_of_range: List[int] = field(default_factory=list)
    route_count: int = 0
    vehicles: int = 0

    @property
    def fleet_exceeded(self) -> bool:
        return self.route_count > self.vehicles

    @property
    def feasible(self) -> bool:
        """Capacity and completeness; fleet excess is reported separately."""
        return not (self.capacity_violations or self.missing or self.duplicated or self.out_of_range)


def check_feasible(solution: Solution, instance: Instance) -> FeasibilityReport:
    report = FeasibilityReport(route_count=len(solution.routes), vehicles=instance.vehicles)
    demand = instance.demand_list
    counts = {}
    for idx, route in enumerate(solution.routes):
        load = 0
        for c in route.customers:
            if not 1 <= c <= instance.n:
                report.out_of_range.append(c)
                continue
            counts[c] = counts.get(c, 0) + 1
            load += demand[c]
        if load > instance.capacity:
            report.capacity_violations.append((idx, load))
    report.duplicated = sorted(c for c, k in counts.items() if k > 1)
    report.missing = [c for c in instance.customers if c not in counts]
    return report
