import logging
from typing import Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from ...model.instance import Instance, Number
from ...model.solution import Solution
from .route_book import CustomerStatus, ProcessOutcome, RouteBook


class SavingsEntry(NamedTuple):
    i: int
    j: int
    value: Number


SavingsList = List[SavingsEntry]


def build_savings(instance: Instance) -> SavingsList:
    """
    s_ij = c[0][i] + c[0][j] - c[i][j] for every customer pair, stored once
    with i > j and sorted by value descending, then i descending, then j
    descending.
    """
    n = instance.n
    dist = instance.dist
    depot = dist[0]
    saving = depot[:, None] + depot[None, :] - dist
    i, j = np.tril_indices(n + 1, k=-1)
    keep = j >= 1
    i, j = i[keep], j[keep]
    values = saving[i, j]
    order = np.lexsort((-j, -i, -values))
    entries = [
        SavingsEntry(a, b, v) for a, b, v in zip(i[order].tolist(), j[order].tolist(), values[order].tolist())
    ]
    logging.debug(f"[SAVINGS] Built {len(entries)} savings for {instance.name!r}")
    return entries


def pinned_savings(pairs: Iterable[Tuple[int, int]], instance: Instance) -> SavingsList:
    """Savings list in a caller-given order, e.g. a published tie order."""
    rows = instance.dist_rows
    entries = []
    for a, b in pairs:
        i, j = max(a, b), min(a, b)
        if j < 1 or i > instance.n or i == j:
            raise ValueError(f"pair ({a}, {b}) is not a pair of distinct customers")
        entries.append(SavingsEntry(i, j, rows[0][i] + rows[0][j] - rows[i][j]))
    return entries


def complete_savings(prefix: SavingsList, instance: Instance) -> SavingsList:
    """`prefix` followed by the remaining pairs in canonical order."""
    seen = {(e.i, e.j) for e in prefix}
    return list(prefix) + [e for e in build_savings(instance) if (e.i, e.j) not in seen]


def _oriented(route: List[int], customer: int, first: bool) -> List[int]:
    if (route[0] == customer) == first:
        return list(route)
    return route[::-1]


def process(entry: SavingsEntry, book: RouteBook, instance: Instance) -> ProcessOutcome:
    i, j = entry.i, entry.j
    demand = instance.demand_list
    capacity = instance.capacity
    ri, rj = book.route_of[i], book.route_of[j]

    if ri is None and rj is None:
        load = demand[i] + demand[j]
        if load > capacity:
            return ProcessOutcome.REJECTED
        book.open_route([i, j], load)
        return ProcessOutcome.NEW_ROUTE

    if ri is None or rj is None:
        inside, outside = (i, j) if ri is not None else (j, i)
        rid = ri if ri is not None else rj
        if book.status(inside) != CustomerStatus.END:
            return ProcessOutcome.REJECTED
        if book.loads[rid] + demand[outside] > capacity:
            return ProcessOutcome.REJECTED
        book.add_at_end(rid, outside, demand[outside], at_head=book.routes[rid][-1] != inside)
        return ProcessOutcome.APPENDED

    if ri == rj:
        return ProcessOutcome.REJECTED
    if book.status(i) != CustomerStatus.END or book.status(j) != CustomerStatus.END:
        return ProcessOutcome.REJECTED
    if book.loads[ri] + book.loads[rj] > capacity:
        return ProcessOutcome.REJECTED

    left, right = book.routes[ri], book.routes[rj]
    if left[-1] == i:
        merged = left + _oriented(right, j, first=True)
    else:
        merged = _oriented(right, j, first=False) + left
    book.absorb(ri, rj, merged)
    return ProcessOutcome.MERGED


def complete_solution(book: RouteBook, instance: Instance) -> Solution:
    """Book routes plus one singleton route per unassigned customer."""
    routes = book.route_lists()
    routes += [[c] for c in instance.customers if book.route_of[c] is None]
    return Solution.from_customer_lists(routes, instance)


def cws_solve(instance: Instance, savings: Optional[SavingsList] = None) -> Solution:
    if savings is None:
        savings = build_savings(instance)
    book = RouteBook(instance.n)
    for entry in savings:
        outcome = process(entry, book, instance)
        logging.debug(f"[CWS] {entry.i}-{entry.j} ({entry.value}): {outcome.value}")
    solution = complete_solution(book, instance)
    logging.info(f"[CWS] {instance.name}: {len(solution.routes)} routes, score {solution.score}")
    return solution
