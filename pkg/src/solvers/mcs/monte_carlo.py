import logging
from concurrent.futures import Executor
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np

from ...config import MEAN_TIE_TOLERANCE, PENALTY_FACTOR
from ...errors import EmptyChildrenError
from ...model.instance import Instance, Number
from ...model.solution import Solution

Child = TypeVar("Child")

# rollout(child, k) -> score of the k-th rollout below `child`
Rollout = Callable[[Child, int], Number]


def penalty_unit(instance: Instance) -> Number:
    """A multiple of the all-singletons cost, more than any legal completion adds."""
    depot = instance.dist_rows[0]
    return PENALTY_FACTOR * sum(2 * depot[c] for c in instance.customers)


def rollout_penalty(solution: Solution, instance: Instance, unit: Number) -> Number:
    """Score plus one penalty unit per unserved customer and per route over the fleet size."""
    missing = len(solution.unserved(instance))
    excess = max(0, len(solution.routes) - instance.vehicles)
    return solution.score + unit * (missing + excess)


def monte_carlo_best_child(
    children: Sequence[Child],
    rollout: Rollout,
    r: int,
    minimize: bool = True,
    executor: Optional[Executor] = None,
) -> Child:
    """
    Runs r rollouts per child and returns the child with the best mean score.
    Means within MEAN_TIE_TOLERANCE of the best go to the earliest child.

    With an executor the rollouts are mapped over it; `rollout` must then be
    picklable (a module-level function or a functools.partial of one).
    """
    if not children:
        raise EmptyChildrenError("monte carlo selection needs at least one child")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if len(children) == 1:
        return children[0]

    rollout_children: List[Child] = [child for child in children for _ in range(r)]
    rollout_index: List[int] = [k for _ in children for k in range(r)]
    if executor is None:
        scores = [rollout(child, k) for child, k in zip(rollout_children, rollout_index)]
    else:
        chunk = max(1, len(rollout_children) // 32)
        scores = list(executor.map(rollout, rollout_children, rollout_index, chunksize=chunk))

    means = np.asarray(scores, dtype=np.float64).reshape(len(children), r).mean(axis=1)
    best = means.min() if minimize else means.max()
    chosen = int(np.flatnonzero(np.abs(means - best) <= MEAN_TIE_TOLERANCE)[0])
    logging.debug(f"[MONTE CARLO] means {np.round(means, 3).tolist()} -> child {chosen}")
    return children[chosen]
