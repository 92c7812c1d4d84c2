from ..config import SUBSTREAM_GOLDEN, U64_MASK
from .families import GeneratorFamily
from .generator import GeneratorParams, GeneratorState, new_generator

MERSENNE_31 = 2**31 - 1

# increment conventionally paired with the 64-bit multiplier below
LCG_DEFAULT_INCREMENT = 1442695040888963407
MRG_DEFAULT_SECOND_MULTIPLIER = 1
ICG_DEFAULT_INCREMENT = 1

_DEFAULTS = {
    GeneratorFamily.LEHMER: GeneratorParams(GeneratorFamily.LEHMER, a=48271, modulus=MERSENNE_31, seeds=(172361,)),
    GeneratorFamily.LINEAR: GeneratorParams(
        GeneratorFamily.LINEAR,
        a=6364136223846793005,
        modulus=2**64,
        seeds=(172361,),
        b=LCG_DEFAULT_INCREMENT,
    ),
    GeneratorFamily.MULTIPLE_RECURSIVE: GeneratorParams(
        GeneratorFamily.MULTIPLE_RECURSIVE,
        a=1071064,
        modulus=2**31 - 19,
        seeds=(135623, 172361),
        b=MRG_DEFAULT_SECOND_MULTIPLIER,
    ),
    GeneratorFamily.INVERSIVE: GeneratorParams(
        GeneratorFamily.INVERSIVE, a=197331, modulus=MERSENNE_31, seeds=(172361,), b=ICG_DEFAULT_INCREMENT
    ),
    GeneratorFamily.EXPLICIT_INVERSIVE: GeneratorParams(
        GeneratorFamily.EXPLICIT_INVERSIVE, a=197331, modulus=2**48 - 59, seeds=(172361,)
    ),
}

# Park-Miller minimal standard multiplier on the same modulus and seed
MINIMAL_STANDARD_PARAMS = GeneratorParams(GeneratorFamily.LEHMER, a=16807, modulus=MERSENNE_31, seeds=(172361,))


def default_params(family: GeneratorFamily) -> GeneratorParams:
    return _DEFAULTS[GeneratorFamily(family)]


def derive_seed(master_seed: int, index: int) -> int:
    """
    64-bit seed of substream `index` under `master_seed`.
    """
    return (master_seed + (index + 1) * SUBSTREAM_GOLDEN) & U64_MASK


def _reduce(value: int, modulus: int) -> int:
    return value % modulus or 1


def spawn_substream(master_seed: int, index: int, params: GeneratorParams) -> GeneratorState:
    """
    Deterministic generator for (master_seed, index), built from `params`
    with the seed(s) replaced. mrg takes its second seed from a second
    golden step of the same derivation.
    """
    s = derive_seed(master_seed, index)
    seeds = [_reduce(s, params.modulus)]
    if params.family == GeneratorFamily.MULTIPLE_RECURSIVE:
        seeds.append(_reduce(derive_seed(s, 0), params.modulus))
    return new_generator(params.with_seeds(*seeds))


def seeded_params(params: GeneratorParams, seed: int) -> GeneratorParams:
    """
    `params` with the user seed reduced into the modulus. For mrg the seed
    replaces the most recent lag, so the default seed gives back the default stream.
    """
    value = seed % params.modulus
    if params.family == GeneratorFamily.MULTIPLE_RECURSIVE:
        return params.with_seeds(params.seeds[0], value)
    return params.with_seeds(value)
