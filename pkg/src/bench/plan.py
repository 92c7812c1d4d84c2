import json
from dataclasses import dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from ..config import DEFAULT_MCS_SIMULATIONS, DEFAULT_NNI_ROLLOUTS, DEFAULT_P, DEFAULT_REPETITIONS
from ..errors import PlanError
from ..prng.families import GeneratorFamily


class Algorithm(str, Enum):
    NNI = "nni"
    MCS_NNI = "mcs-nni"
    CWS = "cws"
    BINARY_CWS = "binary-cws"
    BINARY_CWS_MCS = "binary-cws-mcs"


class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


@dataclass
class BenchPlan:
    """
    Every instance x algorithm x generator family x seed is one cell, run
    `repetitions` times. `vehicles` overrides the fleet size of all
    instances.
    """

    instances: List[str]
    algorithms: List[Algorithm] = field(default_factory=lambda: [Algorithm.BINARY_CWS_MCS])
    prngs: List[GeneratorFamily] = field(default_factory=lambda: list(GeneratorFamily))
    seeds: List[int] = field(default_factory=lambda: [172361])
    p: float = DEFAULT_P
    sims: int = DEFAULT_MCS_SIMULATIONS
    rollouts: int = DEFAULT_NNI_ROLLOUTS
    repetitions: int = DEFAULT_REPETITIONS
    output_format: OutputFormat = OutputFormat.TABLE
    out: Optional[str] = None
    workers: int = 1
    random_p: bool = False
    vehicles: Optional[int] = None

    def validate(self) -> None:
        if not self.instances:
            raise PlanError("the plan lists no instances")
        missing = [path for path in self.instances if not Path(path).is_file()]
        if missing:
            raise PlanError(f"instance files not found: {missing}")
        if not self.algorithms:
            raise PlanError("the plan lists no algorithms")
        if not self.prngs:
            raise PlanError("the plan lists no generator families")
        if not self.seeds:
            raise PlanError("the plan lists no seeds")
        if any(seed < 0 for seed in self.seeds):
            raise PlanError(f"seeds must be nonnegative, got {self.seeds}")
        if self.repetitions < 1:
            raise PlanError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.sims < 1 or self.rollouts < 1:
            raise PlanError(f"sims and rollouts must be >= 1, got {self.sims} and {self.rollouts}")
        if not 0 <= self.p <= 1:
            raise PlanError(f"p must be in [0, 1], got {self.p}")
        if self.workers < 1:
            raise PlanError(f"workers must be >= 1, got {self.workers}")
        if self.vehicles is not None and self.vehicles < 1:
            raise PlanError(f"vehicles must be >= 1, got {self.vehicles}")


def load_plan(path: Union[str, Path]) -> BenchPlan:
    """
    Expected file
    {
        "instances": ["data/tsplib/E-n13-k4.vrp"],
        "algorithms": ["binary-cws-mcs"],
        "prngs": ["lehmer", "lcg", "mrg", "icg", "eicg"],
        "seeds": [172361],
        "p": 0.3,
        "sims": 1000,
        "repetitions": 20,
        "output_format": "csv"
    }
    Every key but "instances" is optional.
    """
    try:
        with open(path, "rb") as file:
            data = json.load(file)
    except json.JSONDecodeError as e:
        raise PlanError(f"plan {path} is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise PlanError(f"plan {path} must hold a JSON object")
    known = {f.name for f in fields(BenchPlan)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise PlanError(f"unknown plan fields: {unknown}")
    if "instances" not in data:
        raise PlanError("the plan lists no instances")
    try:
        if "algorithms" in data:
            data["algorithms"] = [Algorithm(a) for a in data["algorithms"]]
        if "prngs" in data:
            data["prngs"] = [GeneratorFamily(f) for f in data["prngs"]]
        if "output_format" in data:
            data["output_format"] = OutputFormat(data["output_format"])
    except ValueError as e:
        raise PlanError(str(e)) from None
    plan = BenchPlan(**data)
    plan.validate()
    return plan
