import logging
import math
from dataclasses import dataclass, field, replace
from typing import Tuple

from ..errors import InvalidGeneratorParams
from .families import GeneratorFamily
from .numbertheory import mod_inverse


@dataclass(frozen=True)
class GeneratorParams:
    """
    Parameters of one congruential generator.

    b is the increment for lcg and icg, the second-lag multiplier for mrg
    and unused by lehmer and eicg. For eicg the seed is k0.
    """

    family: GeneratorFamily
    a: int
    modulus: int
    seeds: Tuple[int, ...]
    b: int = 0

    def with_seeds(self, *seeds: int) -> "GeneratorParams":
        return replace(self, seeds=tuple(seeds))

    def validate(self) -> None:
        if self.modulus < 2:
            raise InvalidGeneratorParams(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.a < self.modulus:
            raise InvalidGeneratorParams(f"multiplier a={self.a} outside [0, {self.modulus})")
        if not 0 <= self.b < self.modulus:
            raise InvalidGeneratorParams(f"b={self.b} outside [0, {self.modulus})")
        expected_seeds = 2 if self.family == GeneratorFamily.MULTIPLE_RECURSIVE else 1
        if len(self.seeds) != expected_seeds:
            raise InvalidGeneratorParams(
                f"{self.family.value} takes exactly {expected_seeds} seed(s), got {len(self.seeds)}"
            )
        for seed in self.seeds:
            if not 0 <= seed < self.modulus:
                raise InvalidGeneratorParams(f"seed {seed} outside [0, {self.modulus})")
        if self.family == GeneratorFamily.LEHMER and math.gcd(self.seeds[0], self.modulus) != 1:
            raise InvalidGeneratorParams(
                f"lehmer seed {self.seeds[0]} is not coprime to modulus {self.modulus}"
            )
        if self.family == GeneratorFamily.LINEAR and math.gcd(self.a, self.modulus) != 1:
            raise InvalidGeneratorParams(f"lcg multiplier {self.a} is not coprime to modulus {self.modulus}")

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "a": self.a,
            "b": self.b,
            "modulus": self.modulus,
            "seeds": list(self.seeds),
        }


@dataclass
class GeneratorState:
    """
    Sequential stream of one generator. Not safe for concurrent mutation;
    parallel consumers each take their own substream.
    """

    params: GeneratorParams
    lag1: int
    lag2: int = 0
    counter: int = field(default=0)

    def next(self) -> int:
        params = self.params
        family = params.family
        m = params.modulus
        k = self.counter

        if family == GeneratorFamily.EXPLICIT_INVERSIVE:
            value = mod_inverse(params.a * (k + params.seeds[0]) % m, m)
        elif k < len(params.seeds):
            # seeds are emitted before the first recurrence value
            value = params.seeds[k]
        elif family == GeneratorFamily.LEHMER:
            value = params.a * self.lag1 % m
        elif family == GeneratorFamily.LINEAR:
            value = (params.a * self.lag1 + params.b) % m
        elif family == GeneratorFamily.MULTIPLE_RECURSIVE:
            value = (params.a * self.lag1 + params.b * self.lag2) % m
        elif family == GeneratorFamily.INVERSIVE:
            if self.lag1 == 0:
                value = params.b
            else:
                value = (params.a * mod_inverse(self.lag1, m) + params.b) % m
        else:
            raise ValueError(f"Unknown generator family: {family}")

        if family != GeneratorFamily.EXPLICIT_INVERSIVE:
            self.lag2, self.lag1 = self.lag1, value
        self.counter = k + 1
        return value

    def next_mod(self, modulus_small: int) -> int:
        if modulus_small < 1:
            raise ValueError(f"modulus_small must be >= 1, got {modulus_small}")
        return self.next() % modulus_small

    def copy(self) -> "GeneratorState":
        return GeneratorState(self.params, self.lag1, self.lag2, self.counter)


def new_generator(params: GeneratorParams) -> GeneratorState:
    params.validate()
    state = GeneratorState(params, lag1=params.seeds[0])
    logging.debug(f"[PRNG] New {params.family.value} generator with seeds {list(params.seeds)}")
    return state
