from enum import Enum


class GeneratorFamily(str, Enum):
    LEHMER = "lehmer"
    LINEAR = "lcg"
    MULTIPLE_RECURSIVE = "mrg"
    INVERSIVE = "icg"
    EXPLICIT_INVERSIVE = "eicg"


# families whose modulus has to be prime for the recurrence to make sense
PRIME_MODULUS_FAMILIES = frozenset(
    {
        GeneratorFamily.LEHMER,
        GeneratorFamily.MULTIPLE_RECURSIVE,
        GeneratorFamily.INVERSIVE,
        GeneratorFamily.EXPLICIT_INVERSIVE,
    }
)
