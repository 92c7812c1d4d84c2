import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Optional

from ...config import DEFAULT_MCS_SIMULATIONS, DEFAULT_P, U64_MASK
from ...model.instance import Instance, Number
from ...model.solution import Solution
from ...prng.generator import GeneratorParams
from ...prng.streams import spawn_substream
from ..savings.route_book import ProcessOutcome, RouteBook
from ..savings.savings import SavingsEntry, SavingsList, build_savings, complete_solution, process
from .binary_cws import default_max_passes, sweep
from .monte_carlo import monte_carlo_best_child, penalty_unit, rollout_penalty


class Branch(str, Enum):
    PROCESS = "process"
    SKIP = "skip"


@dataclass
class McsConfig:
    """
    simulations: rollouts per branch and decision.
    params: generator family and constants of the rollout substreams; the
        seeds are replaced per rollout.
    literal_orientation: process when the process branch mean is at least
        the skip branch mean, instead of committing the shorter branch.
    """

    params: GeneratorParams
    simulations: int = DEFAULT_MCS_SIMULATIONS
    p: float = DEFAULT_P
    master_seed: int = 0
    max_passes: Optional[int] = None
    literal_orientation: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.simulations < 1:
            raise ValueError(f"simulations must be >= 1, got {self.simulations}")
        if not 0 <= self.p <= 1:
            raise ValueError(f"skip probability p must be in [0, 1], got {self.p}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        self.params.validate()


def branch_rollout(
    instance: Instance,
    book: RouteBook,
    entry: SavingsEntry,
    rest: SavingsList,
    params: GeneratorParams,
    p: float,
    max_passes: int,
    decision_seed: int,
    unit: Number,
    branch: Branch,
    k: int,
) -> Number:
    """One Binary-CWS completion from the committed book after deciding `entry`."""
    trial = book.copy()
    if branch == Branch.PROCESS:
        process(entry, trial, instance)
        index = 2 * k
    else:
        index = 2 * k + 1
    rng = spawn_substream(decision_seed, index, params)
    sweep(trial, list(rest), instance, p, rng, max_passes)
    return rollout_penalty(complete_solution(trial, instance), instance, unit)


def _decide(
    instance: Instance,
    cfg: McsConfig,
    savings: SavingsList,
    executor: Optional[Executor],
) -> RouteBook:
    max_passes = cfg.max_passes if cfg.max_passes is not None else default_max_passes(savings)
    unit = penalty_unit(instance)
    book = RouteBook(instance.n)
    for position, entry in enumerate(savings):
        rest = savings[position + 1 :]
        trial = book.copy()
        if process(entry, trial, instance) == ProcessOutcome.REJECTED:
            # both branches leave the book as it is
            continue
        rollout = partial(
            branch_rollout,
            instance,
            book,
            entry,
            rest,
            cfg.params,
            cfg.p,
            max_passes,
            (cfg.master_seed + position) & U64_MASK,
            unit,
        )
        branch = monte_carlo_best_child(
            [Branch.PROCESS, Branch.SKIP],
            rollout,
            cfg.simulations,
            minimize=not cfg.literal_orientation,
            executor=executor,
        )
        if branch == Branch.PROCESS:
            book = trial
        logging.debug(f"[BINARY CWS MCS] {entry.i}-{entry.j}: {branch.value}")
    return book


def binary_cws_mcs(instance: Instance, cfg: McsConfig, savings: Optional[SavingsList] = None) -> Solution:
    """
    Walks the savings list once. For every entry that process() would
    accept, r rollouts start by processing it and r by skipping it for
    good; the branch with the better mean distance is committed.
    """
    cfg.validate()
    if savings is None:
        savings = build_savings(instance)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            book = _decide(instance, cfg, savings, executor)
    else:
        book = _decide(instance, cfg, savings, None)
    solution = complete_solution(book, instance)
    logging.info(
        f"[BINARY CWS MCS] {instance.name}: {cfg.params.family.value}, r={cfg.simulations}, "
        f"p={cfg.p}, score {solution.score}"
    )
    return solution
