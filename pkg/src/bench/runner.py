import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import pandas as pd

from ..model.instance import Instance
from ..model.run_record import RunRecord
from ..model.solution import Solution, check_feasible
from ..prng.families import GeneratorFamily
from ..prng.generator import GeneratorState
from ..prng.streams import default_params, derive_seed, spawn_substream
from ..solvers.mcs.binary_cws import BinaryCwsConfig, binary_cws, draw_p
from ..solvers.mcs.binary_cws_mcs import McsConfig, binary_cws_mcs
from ..solvers.nearest.nearest import mcs_nni_solve, nni_solve
from ..solvers.savings.savings import cws_solve
from ..utils import load_instance
from .plan import Algorithm, BenchPlan


@dataclass
class BenchResult:
    records: List[RunRecord]
    summary: pd.DataFrame
    spread: pd.DataFrame

    @property
    def failures(self) -> List[RunRecord]:
        return [record for record in self.records if record.error is not None]


def run_algorithm(
    instance: Instance,
    algorithm: Algorithm,
    rng: GeneratorState,
    master_seed: int,
    p: float,
    sims: int,
    workers: int = 1,
    random_p: bool = False,
    literal: bool = False,
) -> Tuple[Solution, Optional[float]]:
    """
    Runs one algorithm. `rng` drives nni, mcs-nni and binary-cws,
    `master_seed` seeds the rollouts of binary-cws-mcs and `sims` is r for
    both Monte Carlo methods. Returns the solution and the p it used.
    """
    if algorithm == Algorithm.CWS:
        return cws_solve(instance), None
    if algorithm == Algorithm.NNI:
        return nni_solve(instance, rng), None
    if algorithm == Algorithm.MCS_NNI:
        return mcs_nni_solve(instance, rng, sims, workers=workers), None
    if random_p:
        p = draw_p(rng)
    if algorithm == Algorithm.BINARY_CWS:
        return binary_cws(instance, BinaryCwsConfig(p=p, rng=rng)), p
    if algorithm == Algorithm.BINARY_CWS_MCS:
        cfg = McsConfig(
            params=rng.params,
            simulations=sims,
            p=p,
            master_seed=master_seed,
            literal_orientation=literal,
            workers=workers,
        )
        return binary_cws_mcs(instance, cfg), p
    raise ValueError(f"Unknown algorithm: {algorithm}")


def sims_of(algorithm: Algorithm, plan: BenchPlan) -> Optional[int]:
    if algorithm == Algorithm.BINARY_CWS_MCS:
        return plan.sims
    if algorithm == Algorithm.MCS_NNI:
        return plan.rollouts
    return None


def _run_rep(
    plan: BenchPlan,
    path: str,
    instance: Optional[Instance],
    load_error: Optional[str],
    algorithm: Algorithm,
    family: GeneratorFamily,
    seed: int,
    rep_seed: int,
    rep: int,
) -> RunRecord:
    params = default_params(family)
    sims = sims_of(algorithm, plan)
    record = RunRecord(
        instance=instance.name if instance is not None else path,
        algorithm=algorithm.value,
        params=params,
        seed=seed,
        p=None,
        sims=sims,
        rep=rep,
        score=None,
        feasible=False,
        error=load_error,
    )
    if instance is None:
        return record
    started = time.perf_counter()
    try:
        rng = spawn_substream(rep_seed, 0, params)
        solution, p = run_algorithm(
            instance, algorithm, rng, rep_seed, plan.p, sims or 1, workers=plan.workers, random_p=plan.random_p
        )
    except Exception as e:
        record.error = f"{type(e).__name__}: {e}"
        logging.error(f"[BENCH] {record.instance} {algorithm.value} {family.value} rep {rep} failed: {record.error}")
        return record
    record.ms = (time.perf_counter() - started) * 1000
    report = check_feasible(solution, instance)
    record.p = p
    record.score = solution.score
    record.routes = solution.customer_lists()
    record.feasible = report.feasible
    record.fleet_exceeded = report.fleet_exceeded
    return record


def run_bench(plan: BenchPlan) -> BenchResult:
    """
    Runs every cell of the plan. Cell c under plan seed s uses repetition
    seeds derive_seed(derive_seed(s, c), rep), so results do not depend on
    scheduling. A failing cell is recorded and the plan goes on.
    """
    plan.validate()
    records: List[RunRecord] = []
    cell = 0
    for path in plan.instances:
        instance, load_error = None, None
        try:
            instance = load_instance(path, plan.vehicles)
        except (ValueError, OSError) as e:
            load_error = f"{type(e).__name__}: {e}"
            logging.error(f"[BENCH] Could not load {path}: {load_error}")
        for algorithm in plan.algorithms:
            for family in plan.prngs:
                for seed in plan.seeds:
                    cell_seed = derive_seed(seed, cell)
                    cell += 1
                    reps = [
                        _run_rep(
                            plan, path, instance, load_error, algorithm, family, seed, derive_seed(cell_seed, rep), rep
                        )
                        for rep in range(plan.repetitions)
                    ]
                    records += reps
                    scores = [r.score for r in reps if r.score is not None]
                    best = min(scores) if scores else None
                    logging.info(
                        f"[BENCH] {reps[0].instance} {algorithm.value} {family.value} seed {seed}: best {best}"
                    )
    summary, spread = summarize(records)
    return BenchResult(records=records, summary=summary, spread=spread)


def summarize(records: List[RunRecord]) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Best feasible score per cell, and mean ± std, with (algorithm, instance)
    rows and generator families as columns.
    """
    frame = pd.DataFrame([r.to_dict() for r in records if r.score is not None and r.feasible])
    if frame.empty:
        return pd.DataFrame(), pd.DataFrame()
    columns = [f.value for f in GeneratorFamily if f.value in set(frame["prng"])]

    summary = frame.pivot_table(index=["algorithm", "instance"], columns="prng", values="score", aggfunc="min")
    summary = summary[columns]

    scores = frame.groupby(["algorithm", "instance", "prng"])["score"]
    mean = scores.mean().round(1)
    std = scores.std(ddof=0).round(1)
    spread = (mean.astype(str) + " ± " + std.astype(str)).unstack("prng")[columns]
    return summary, spread
