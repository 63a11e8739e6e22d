"""The quotient numbers Q(z, y, n) = (z**n - y**n) / (z - y).

Every structural fact below is computed and compared, never assumed: a
disagreement raises ``TheoryViolation``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import (
    DegenerateInput,
    InvalidExponent,
    InvalidInput,
    PreconditionViolation,
    TheoryViolation,
)
from .factor import is_prime
from .modular import Residue


def _check_exponent(n: int) -> None:
    if n == 2 or not is_prime(n):
        raise InvalidExponent(f"n must be an odd prime, got {n}")


def _check_pair(z: int, y: int) -> None:
    for name, v in (("z", z), ("y", y)):
        if not isinstance(v, int) or v < 0:
            raise InvalidInput(f"{name} must be a nonnegative integer, got {v!r}")
    if z == y:
        raise DegenerateInput(f"z and y must differ (both are {z})")


def _check_coprime(z: int, y: int) -> None:
    if math.gcd(z, y) != 1:
        raise PreconditionViolation(f"gcd({z}, {y}) = {math.gcd(z, y)}, expected 1")


def quotient_power_sum(z: int, y: int, n: int) -> int:
    """sum_{k<n} z**k * y**(n-1-k); an evaluation path that never divides."""
    return sum(z**k * y ** (n - 1 - k) for k in range(n))


@dataclass(frozen=True)
class QuotientInstance:
    z: int
    y: int
    n: int
    value: int


def quotient(z: int, y: int, n: int, *, cross_check: bool = False) -> QuotientInstance:
    _check_pair(z, y)
    _check_exponent(n)
    value, rem = divmod(z**n - y**n, z - y)
    if rem:
        raise TheoryViolation(f"{z - y} does not divide {z}^{n} - {y}^{n}")
    if cross_check and value != quotient_power_sum(z, y, n):
        raise TheoryViolation(f"division and power sum disagree for Q({z}, {y}, {n})")
    return QuotientInstance(z, y, n, value)


def qvalue(z: int, y: int, n: int) -> int:
    """Shorthand for ``quotient(z, y, n).value``."""
    return quotient(z, y, n).value


@dataclass(frozen=True)
class GcdIsN:
    """n | z - y, and gcd(z - y, Q) came out equal to n."""

    n: int
    gcd_diff_q: int


@dataclass(frozen=True)
class PairwiseCoprime:
    """n does not divide z - y; n, z - y and Q are pairwise coprime."""

    gcd_n_diff: int
    gcd_n_q: int
    gcd_diff_q: int


GcdStructure = Union[GcdIsN, PairwiseCoprime]


def gcd_structure(z: int, y: int, n: int) -> GcdStructure:
    _check_pair(z, y)
    _check_exponent(n)
    _check_coprime(z, y)
    diff = abs(z - y)
    q = qvalue(z, y, n)
    if diff % n == 0:
        g = math.gcd(diff, q)
        if g != n:
            raise TheoryViolation(f"gcd(z-y, Q) = {g} for ({z}, {y}, {n}); expected {n}")
        return GcdIsN(n, g)
    result = PairwiseCoprime(math.gcd(n, diff), math.gcd(n, q), math.gcd(diff, q))
    if (result.gcd_n_diff, result.gcd_n_q, result.gcd_diff_q) != (1, 1, 1):
        raise TheoryViolation(f"({z}, {y}, {n}): expected pairwise coprime, got {result}")
    return result


def n_squared_check(z: int, y: int, n: int) -> bool:
    """True when n**2 does not divide Q; a failure raises instead of returning False."""
    _check_pair(z, y)
    _check_exponent(n)
    _check_coprime(z, y)
    if qvalue(z, y, n) % (n * n) == 0:
        raise TheoryViolation(f"{n}^2 divides Q({z}, {y}, {n})")
    return True


def quotient_residue_mod_n(z: int, y: int, n: int) -> Residue:
    q = qvalue(z, y, n)
    res = Residue.of(q, n)
    expected = pow(z - y, n - 1, n)
    if res.value != expected:
        raise TheoryViolation(f"Q({z}, {y}, {n}) = {res.value} mod {n}, expected {expected}")
    return res


def quotient_residue_mod_n2(z: int, y: int, n: int) -> Residue:
    _check_pair(z, y)
    _check_exponent(n)
    _check_coprime(z, y)
    if (z - y) % n:
        raise PreconditionViolation(f"{n} does not divide z - y = {z - y}")
    res = Residue.of(qvalue(z, y, n), n * n)
    expected = n * pow(y, n - 1, n * n) % (n * n)
    if res.value != expected:
        raise TheoryViolation(f"Q({z}, {y}, {n}) = {res.value} mod {n * n}, expected {expected}")
    return res


def parity(z: int, y: int, n: int) -> int:
    """Return Q(z, y, n) after confirming it is odd."""
    _check_pair(z, y)
    if z % 2 == 0 and y % 2 == 0:
        raise PreconditionViolation(f"z = {z} and y = {y} are both even")
    q = qvalue(z, y, n)
    if q % 2 == 0:
        raise TheoryViolation(f"Q({z}, {y}, {n}) = {q} is even")
    return q
