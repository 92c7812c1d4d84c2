from typing import List, Sequence

import numpy as np

from ...config import RANK_WEIGHT_FLOOR, SAMPLING_RESOLUTION
from ...model.instance import Number
from ...prng.generator import GeneratorState


class RankTable:
    """
    Candidates around a focus customer ranked by distance (nearest = rank 1,
    ties to the lower index) with weights w = (1 - rank / count) ** power.
    A large power concentrates the weight on rank 1.

    Sampling uses max(w, floor) normalized into a distribution, so the last
    rank keeps a small chance.
    """

    def __init__(
        self,
        focus: int,
        candidates: Sequence[int],
        dist_rows: List[List[Number]],
        floor: float = RANK_WEIGHT_FLOOR,
        power: float = 1.0,
    ):
        if not candidates:
            raise ValueError(f"no candidates to rank around customer {focus}")
        row = dist_rows[focus]
        self.focus: int = focus
        self.candidates: List[int] = sorted(candidates, key=lambda c: (row[c], c))
        count = len(self.candidates)
        self.ranks: np.ndarray = np.arange(1, count + 1)
        self.weights: np.ndarray = (1.0 - self.ranks / count) ** power
        lifted = np.maximum(self.weights, floor)
        if lifted.sum() == 0:
            # a lone candidate with floor 0
            lifted = np.ones(count)
        self.probabilities: np.ndarray = lifted / lifted.sum()
        self._cumulative: np.ndarray = np.cumsum(self.probabilities)

    def sample(self, rng: GeneratorState) -> int:
        u = rng.next_mod(SAMPLING_RESOLUTION) / SAMPLING_RESOLUTION
        index = int(np.searchsorted(self._cumulative, u, side="right"))
        return self.candidates[min(index, len(self.candidates) - 1)]

    def __len__(self) -> int:
        return len(self.candidates)
