import argparse
import logging
import sys
from contextlib import contextmanager
from dataclasses import replace
from typing import Iterator, List, Optional, TextIO

from .. import config
from ..errors import PlanError
from ..model.run_record import RunRecord
from ..model.solution import check_feasible
from ..prng.families import GeneratorFamily
from ..prng.generator import GeneratorParams, new_generator
from ..prng.numbertheory import verify_default_moduli
from ..prng.streams import default_params, seeded_params
from ..solvers.oracle.oracle import solve_exact
from ..utils import load_instance
from .output import format_table, write_csv, write_json
from .plan import Algorithm, BenchPlan, OutputFormat, load_plan
from .runner import run_algorithm, run_bench

ALGORITHMS = [a.value for a in Algorithm]
FAMILIES = [f.value for f in GeneratorFamily]
FORMATS = [f.value for f in OutputFormat]


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as file:
            yield file


def _generator_params(args: argparse.Namespace) -> GeneratorParams:
    params = default_params(GeneratorFamily(args.prng))
    overrides = {key: getattr(args, key) for key in ("a", "b", "modulus") if getattr(args, key) is not None}
    if overrides:
        params = replace(params, **overrides)
    if args.seed is not None:
        params = seeded_params(params, args.seed)
    return params


def _solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance, args.vehicles)
    algorithm = Algorithm(args.algorithm)
    params = _generator_params(args)
    rng = new_generator(params)
    master_seed = args.seed if args.seed is not None else params.seeds[-1]
    sims = args.sims
    if sims is None:
        sims = config.DEFAULT_NNI_ROLLOUTS if algorithm == Algorithm.MCS_NNI else config.DEFAULT_MCS_SIMULATIONS
    solution, p = run_algorithm(
        instance,
        algorithm,
        rng,
        master_seed,
        args.p,
        sims,
        workers=args.workers,
        random_p=args.random_p,
        literal=args.literal,
    )
    report = check_feasible(solution, instance)
    logging.info(f"[CLI] {instance.name} {algorithm.value}: score {solution.score}")

    with _output(args.out) as stream:
        if args.format == OutputFormat.TABLE.value:
            stream.write(f"{instance.name} {algorithm.value}\n")
            for number, route in enumerate(solution.routes, start=1):
                stream.write(f"route {number}: {' '.join(map(str, route.customers))} (load {route.load})\n")
            stream.write(f"score: {solution.score}\n")
            if solution.partial:
                stream.write(f"unserved: {' '.join(map(str, solution.unserved(instance)))}\n")
            if report.fleet_exceeded:
                stream.write(f"routes exceed the fleet of {instance.vehicles}\n")
            return 0
        record = RunRecord(
            instance=instance.name,
            algorithm=algorithm.value,
            params=params,
            seed=master_seed,
            p=p,
            sims=sims if algorithm in (Algorithm.MCS_NNI, Algorithm.BINARY_CWS_MCS) else None,
            rep=0,
            score=solution.score,
            feasible=report.feasible,
            routes=solution.customer_lists(),
            fleet_exceeded=report.fleet_exceeded,
        )
        if args.format == OutputFormat.CSV.value:
            write_csv([record], stream)
        else:
            write_json([record], stream)
    return 0


def _bench_plan(args: argparse.Namespace) -> BenchPlan:
    if args.plan is not None:
        plan = load_plan(args.plan)
    else:
        plan = BenchPlan(instances=args.instance or [])
    if args.plan is not None and args.instance:
        plan.instances = plan.instances + args.instance
    if args.algorithm:
        plan.algorithms = [Algorithm(a) for a in args.algorithm]
    if args.prng:
        plan.prngs = [GeneratorFamily(f) for f in args.prng]
    for key in ("seed", "p", "sims", "rollouts", "reps", "format", "out", "workers", "vehicles"):
        value = getattr(args, key)
        if value is None:
            continue
        if key == "seed":
            plan.seeds = value
        elif key == "reps":
            plan.repetitions = value
        elif key == "format":
            plan.output_format = OutputFormat(value)
        else:
            setattr(plan, key, value)
    if args.random_p:
        plan.random_p = True
    plan.validate()
    return plan


def _bench(args: argparse.Namespace) -> int:
    plan = _bench_plan(args)
    result = run_bench(plan)
    with _output(plan.out) as stream:
        if plan.output_format == OutputFormat.CSV:
            write_csv(result.records, stream)
        elif plan.output_format == OutputFormat.JSON:
            write_json(result.records, stream)
        else:
            stream.write(format_table(result))
    return 0


def _prng_dump(args: argparse.Namespace) -> int:
    if args.count < 0:
        raise ValueError(f"count must be >= 0, got {args.count}")
    rng = new_generator(_generator_params(args))
    modulus = 100 if args.mod_100 else args.mod
    values = [rng.next_mod(modulus) if modulus else rng.next() for _ in range(args.count)]
    print(" ".join(map(str, values)))
    return 0


def _oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance, args.vehicles)
    result = solve_exact(instance, args.limit)
    for number, route in enumerate(result.solution.routes, start=1):
        print(f"route {number}: {' '.join(map(str, route.customers))} (load {route.load})")
    print(f"score: {result.score}")
    print(f"nodes: {result.nodes}")
    return 0


def _generator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prng", choices=FAMILIES, default=GeneratorFamily.LEHMER.value)
    parser.add_argument("--seed", type=int, help="generator seed (default: the family's default seed)")
    parser.add_argument("--a", type=int, help="override the multiplier")
    parser.add_argument("--b", type=int, help="override the increment / second multiplier")
    parser.add_argument("--modulus", type=int, help="override the modulus")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(prog="cvrp", description="CVRP heuristics driven by congruential generators.")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", parents=[common], help="solve one instance")
    solve.add_argument("--instance", required=True, help="TSPLIB .vrp or JSON graph file")
    solve.add_argument("--algorithm", choices=ALGORITHMS, default=Algorithm.CWS.value)
    _generator_flags(solve)
    solve.add_argument("--p", type=float, default=config.DEFAULT_P, help="skip probability")
    solve.add_argument("--random-p", action="store_true", help="draw p from the generator")
    solve.add_argument("--sims", type=int, help="rollouts per choice for the Monte Carlo methods")
    solve.add_argument("--literal", action="store_true", help="process when the process mean is not lower")
    solve.add_argument("--vehicles", type=int, help="override the fleet size")
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--format", choices=FORMATS, default=OutputFormat.TABLE.value)
    solve.add_argument("--out", help="write here instead of stdout")
    solve.set_defaults(handler=_solve)

    bench = commands.add_parser("bench", parents=[common], help="run a benchmark plan")
    bench.add_argument("--plan", help="JSON plan file")
    bench.add_argument("--instance", action="append", help="repeatable")
    bench.add_argument("--algorithm", action="append", choices=ALGORITHMS, help="repeatable")
    bench.add_argument("--prng", action="append", choices=FAMILIES, help="repeatable")
    bench.add_argument("--seed", action="append", type=int, help="repeatable")
    bench.add_argument("--p", type=float)
    bench.add_argument("--random-p", action="store_true")
    bench.add_argument("--sims", type=int)
    bench.add_argument("--rollouts", type=int, help="rollouts per choice for mcs-nni")
    bench.add_argument("--reps", type=int)
    bench.add_argument("--vehicles", type=int)
    bench.add_argument("--workers", type=int)
    bench.add_argument("--format", choices=FORMATS)
    bench.add_argument("--out")
    bench.set_defaults(handler=_bench)

    dump = commands.add_parser("prng-dump", parents=[common], help="print the first outputs of a generator")
    _generator_flags(dump)
    dump.add_argument("--count", type=int, default=10)
    dump.add_argument("--mod-100", action="store_true", help="print values mod 100")
    dump.add_argument("--mod", type=int, help="print values mod this number")
    dump.set_defaults(handler=_prng_dump)

    oracle = commands.add_parser("oracle", parents=[common], help="exact solve of a tiny instance")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--vehicles", type=int)
    oracle.add_argument("--limit", type=int, default=config.ORACLE_LIMIT_N)
    oracle.set_defaults(handler=_oracle)
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(level=logging.DEBUG if args.verbose else config.LOG_LEVEL, format="%(levelname)s %(message)s")
    try:
        verify_default_moduli()
        return args.handler(args)
    except PlanError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
