"""Exact modular arithmetic over Python integers.

Residues are always held as least nonnegative representatives so that two
congruent values compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    CoprimalityViolation,
    InvalidInput,
    InvalidModulus,
    NoInverse,
    UndefinedInput,
)
from .factor import is_prime


def _check_natural(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InvalidInput(f"{name} must be a nonnegative integer, got {value!r}")


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise InvalidInput(f"{self.value} is not reduced modulo {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> Residue:
        if modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
        return cls(value % modulus, modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"

    def to_json(self) -> dict:
        return {"value": str(self.value), "modulus": str(self.modulus)}


@dataclass(frozen=True)
class PrimePowerModulus:
    """An odd prime power p**m, primality checked on construction."""

    p: int
    m: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise InvalidInput(f"exponent must be >= 1, got {self.m}")
        if self.p == 2 or not is_prime(self.p):
            raise InvalidInput(f"{self.p} is not an odd prime")

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"{self.p}^{self.m}"


def mod_pow(base: int, exponent: int, modulus: int) -> Residue:
    _check_natural("exponent", exponent)
    if modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    return Residue(pow(base, exponent, modulus), modulus)


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise UndefinedInput("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def mod_inverse(a: int, modulus: int) -> Residue:
    if modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    if math.gcd(a, modulus) != 1:
        raise NoInverse(f"{a} has no inverse modulo {modulus}")
    return Residue(pow(a, -1, modulus), modulus)


def euler_phi_prime_power(pp: PrimePowerModulus) -> int:
    return (pp.p - 1) * pp.p ** (pp.m - 1)


@dataclass(frozen=True)
class CRTTerms:
    """The cofactors M_i = N / n_i and their inverses q_i modulo n_i."""

    moduli: tuple[int, ...]
    cofactors: tuple[int, ...]
    inverses: tuple[int, ...]

    @property
    def product(self) -> int:
        return math.prod(self.moduli)


def crt_terms(moduli: Sequence[int]) -> CRTTerms:
    if not moduli:
        raise InvalidInput("need at least one modulus")
    for m in moduli:
        if m < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {m}")
    for a, b in combinations(moduli, 2):
        if math.gcd(a, b) != 1:
            raise CoprimalityViolation(f"moduli {a} and {b} are not coprime")
    total = math.prod(moduli)
    cofactors = tuple(total // m for m in moduli)
    inverses = tuple(pow(M, -1, m) for M, m in zip(cofactors, moduli))
    return CRTTerms(tuple(moduli), cofactors, inverses)


def crt_combine(congruences: Iterable[Residue]) -> Residue:
    congruences = list(congruences)
    terms = crt_terms([c.modulus for c in congruences])
    total = terms.product
    x = sum(c.value * M * q for c, M, q in zip(congruences, terms.cofactors, terms.inverses))
    return Residue(x % total, total)
