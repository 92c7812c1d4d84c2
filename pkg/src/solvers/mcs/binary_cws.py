import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from ...config import MAX_PASSES_FACTOR, P_RANGE
from ...model.instance import Instance
from ...model.solution import Solution
from ...prng.generator import GeneratorState
from ..savings.route_book import RouteBook
from ..savings.savings import SavingsList, build_savings, complete_solution, process


@dataclass
class BinaryCwsConfig:
    p: float
    rng: GeneratorState
    max_passes: Optional[int] = None

    def validate(self) -> None:
        if not 0 <= self.p <= 1:
            raise ValueError(f"skip probability p must be in [0, 1], got {self.p}")
        if self.max_passes is not None and self.max_passes < 1:
            raise ValueError(f"max_passes must be >= 1, got {self.max_passes}")


def skip_threshold(p: float) -> int:
    """Draws mod 100 at or above this value are processed."""
    # 0.3 * 100 is 30.000000000000004 in binary floating point
    return math.ceil(round(p * 100, 9))


def draw_p(rng: GeneratorState) -> float:
    """A skip probability drawn in whole percents from P_RANGE."""
    low, high = P_RANGE
    steps = round((high - low) * 100) + 1
    return round(low + rng.next_mod(steps) / 100, 2)


def default_max_passes(savings: SavingsList) -> int:
    return max(1, MAX_PASSES_FACTOR * len(savings))


def sweep(
    book: RouteBook,
    pending: List,
    instance: Instance,
    p: float,
    rng: GeneratorState,
    max_passes: int,
) -> int:
    """
    Sweeps `pending` until it is empty, one draw per pending entry per pass.
    An entry whose draw reaches the threshold goes through process() and
    leaves the list. After max_passes the rest is processed in order.
    Mutates `book`; returns the number of passes made.
    """
    threshold = skip_threshold(p)
    passes = 0
    while pending and passes < max_passes:
        passes += 1
        kept = []
        for entry in pending:
            if rng.next_mod(100) >= threshold:
                process(entry, book, instance)
            else:
                kept.append(entry)
        pending = kept
    if pending:
        logging.debug(f"[BINARY CWS] Pass cap {max_passes} reached, processing {len(pending)} entries in order")
        for entry in pending:
            process(entry, book, instance)
    return passes


def binary_cws(instance: Instance, cfg: BinaryCwsConfig, savings: Optional[SavingsList] = None) -> Solution:
    cfg.validate()
    if savings is None:
        savings = build_savings(instance)
    max_passes = cfg.max_passes if cfg.max_passes is not None else default_max_passes(savings)
    book = RouteBook(instance.n)
    passes = sweep(book, list(savings), instance, cfg.p, cfg.rng, max_passes)
    solution = complete_solution(book, instance)
    logging.info(
        f"[BINARY CWS] {instance.name}: p={cfg.p}, {passes} passes, {cfg.rng.counter} draws, score {solution.score}"
    )
    return solution
