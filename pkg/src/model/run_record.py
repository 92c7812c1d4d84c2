from dataclasses import dataclass, field
from typing import List, Optional

from ..prng.generator import GeneratorParams
from .instance import Number

# column order of the CSV output
RECORD_FIELDS = ["instance", "algorithm", "prng", "seed", "p", "sims", "rep", "score", "feasible", "routes", "ms"]


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    params: GeneratorParams
    seed: int
    p: Optional[float]
    sims: Optional[int]
    rep: int
    score: Optional[Number]
    feasible: bool
    routes: List[List[int]] = field(default_factory=list)
    ms: float = 0.0
    fleet_exceeded: bool = False
    error: Optional[str] = None

    @property
    def prng(self) -> str:
        return self.params.family.value

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "algorithm": self.algorithm,
            "prng": self.prng,
            "seed": self.seed,
            "p": self.p,
            "sims": self.sims,
            "rep": self.rep,
            "score": self.score,
            "feasible": self.feasible,
            "routes": self.routes,
            "ms": round(self.ms, 3),
        }

    def to_row(self) -> List[str]:
        row = self.to_dict()
        row["routes"] = "|".join("-".join(str(c) for c in route) for route in self.routes)
        return ["" if row[key] is None else str(row[key]) for key in RECORD_FIELDS]
