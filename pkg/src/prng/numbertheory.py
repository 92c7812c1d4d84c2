import logging

from ..errors import InvalidGeneratorParams
from .families import PRIME_MODULUS_FAMILIES

# deterministic for every n < 3.3 * 10**24
_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def invert_euclid(x: int, p: int) -> int:
    "Multiplicative inverse of x mod p by the extended Euclidean algorithm."
    a = (x % p, 1)
    b = (p, 0)
    while a[0]:
        q = b[0] // a[0]
        a, b = (b[0] - q * a[0], b[1] - q * a[1]), a
    if b[0] != 1:
        raise InvalidGeneratorParams(f"{x} has no inverse modulo {p}")
    return b[1] % p


def invert_fermat(x: int, p: int) -> int:
    "Multiplicative inverse of x mod p as x^(p-2); p must be prime."
    return pow(x, p - 2, p)


def mod_inverse(x: int, p: int) -> int:
    """
    Inverse of x modulo the prime p, with mod_inverse(0, p) = 0.

    Primality of p is the caller's contract and is not checked.
    """
    x %= p
    if x == 0:
        return 0
    return invert_euclid(x, p)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in _MILLER_RABIN_BASES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MILLER_RABIN_BASES:
        y = pow(base, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def verify_default_moduli() -> None:
    """
    Checks once that every published prime modulus really is prime.
    Raises RuntimeError naming the offending family otherwise.
    """
    from .streams import default_params

    for family in sorted(PRIME_MODULUS_FAMILIES, key=lambda f: f.value):
        modulus = default_params(family).modulus
        if not is_probable_prime(modulus):
            raise RuntimeError(f"modulus {modulus} of the {family.value} generator is not prime")
        logging.debug(f"[PRNG] Modulus {modulus} of {family.value} passed Miller-Rabin")
