from enum import Enum
from typing import Dict, List, Optional

from ...model.instance import Number


class CustomerStatus(str, Enum):
    UNASSIGNED = "unassigned"
    END = "end"
    INTERIOR = "interior"


class ProcessOutcome(str, Enum):
    NEW_ROUTE = "new_route"
    APPENDED = "appended"
    MERGED = "merged"
    REJECTED = "rejected"


class RouteBook:
    """
    Routes under construction by the savings methods.

    Route ids are handed out in creation order and a merge keeps the id of
    the route that received the other one, so iterating `routes` gives a
    stable order.
    """

    def __init__(self, n: int):
        self.routes: Dict[int, List[int]] = {}
        self.loads: Dict[int, Number] = {}
        self.route_of: List[Optional[int]] = [None] * (n + 1)
        self._next_id: int = 0

    def status(self, customer: int) -> CustomerStatus:
        rid = self.route_of[customer]
        if rid is None:
            return CustomerStatus.UNASSIGNED
        route = self.routes[rid]
        if customer == route[0] or customer == route[-1]:
            return CustomerStatus.END
        return CustomerStatus.INTERIOR

    def open_route(self, customers: List[int], load: Number) -> int:
        rid = self._next_id
        self._next_id += 1
        self.routes[rid] = list(customers)
        self.loads[rid] = load
        for c in customers:
            self.route_of[c] = rid
        return rid

    def add_at_end(self, rid: int, customer: int, demand: Number, at_head: bool) -> None:
        if at_head:
            self.routes[rid].insert(0, customer)
        else:
            self.routes[rid].append(customer)
        self.loads[rid] += demand
        self.route_of[customer] = rid

    def absorb(self, rid: int, other: int, merged: List[int]) -> None:
        """Replaces route `rid` by `merged` and drops route `other`."""
        self.routes[rid] = merged
        self.loads[rid] += self.loads.pop(other)
        del self.routes[other]
        for c in merged:
            self.route_of[c] = rid

    def assigned(self) -> int:
        return sum(len(route) for route in self.routes.values())

    def route_lists(self) -> List[List[int]]:
        return [list(route) for route in self.routes.values()]

    def copy(self) -> "RouteBook":
        book = RouteBook(len(self.route_of) - 1)
        book.routes = {rid: list(route) for rid, route in self.routes.items()}
        book.loads = dict(self.loads)
        book.route_of = list(self.route_of)
        book._next_id = self._next_id
        return book

    def __repr__(self) -> str:
        return f"RouteBook({self.route_lists()})"
