"""Multiplicative orders and primitive roots modulo odd prime powers.

A primitive root modulo p**2 stays primitive modulo every higher power of p,
so certificates are always verified at level 2. The smallest primitive root
modulo p occasionally fails modulo p**2 (p = 40487 with r = 5 is the first
such prime); in that case r + p is used, which is checked rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import EffortExceeded, InvalidInput, TheoryViolation
from .factor import DEFAULT_RHO_BUDGET, factorize
from .modular import PrimePowerModulus, euler_phi_prime_power


@lru_cache(maxsize=4096)
def _phi_factors(p: int, m: int, rho_budget: int) -> tuple[tuple[int, int], ...]:
    fac = factorize(p - 1, rho_budget)
    if not fac.complete:
        raise EffortExceeded(f"could not factor {p - 1} within budget")
    out = fac.as_dict()
    if m > 1:
        out[p] = m - 1
    return tuple(out.items())


def multiplicative_order(
    a: int, pp: PrimePowerModulus, rho_budget: int = DEFAULT_RHO_BUDGET
) -> int:
    """Least d >= 1 with a**d == 1 (mod p**m).

    Starts from phi(p**m) and strips each prime factor while the power stays 1.
    """
    modulus = pp.modulus
    if math.gcd(a, modulus) != 1:
        raise InvalidInput(f"{a} is not a unit modulo {modulus}")
    order = euler_phi_prime_power(pp)
    for q, e in _phi_factors(pp.p, pp.m, rho_budget):
        for _ in range(e):
            if pow(a, order // q, modulus) == 1:
                order //= q
            else:
                break
    return order


def is_primitive_root(r: int, pp: PrimePowerModulus, rho_budget: int = DEFAULT_RHO_BUDGET) -> bool:
    return multiplicative_order(r, pp, rho_budget) == euler_phi_prime_power(pp)


@dataclass(frozen=True)
class PrimitiveRootCert:
    """r is a primitive root modulo p**verified_level (hence modulo all p**k
    when verified_level is 2).

    ``trace`` records each candidate examined, as (candidate, level, passed).
    """

    p: int
    r: int
    verified_level: int
    trace: tuple[tuple[int, int, bool], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if math.gcd(self.r, self.p) != 1:
            raise InvalidInput(f"{self.r} shares a factor with {self.p}")
        if self.verified_level not in (1, 2):
            raise InvalidInput(f"verified_level must be 1 or 2, got {self.verified_level}")

    def verify(self, k: int | None = None) -> bool:
        """Re-check primitivity modulo p**k directly (default: verified_level)."""
        return is_primitive_root(self.r, PrimePowerModulus(self.p, k or self.verified_level))

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "r": str(self.r),
            "verified_level": self.verified_level,
            "trace": [
                {"candidate": str(c), "level": lvl, "primitive": ok} for c, lvl, ok in self.trace
            ],
        }


def lift_to_p_squared(p: int, r: int) -> PrimitiveRootCert:
    """Turn a primitive root r modulo p into one modulo p**2.

    At most one of r and r + p can fail modulo p**2.
    """
    level1 = PrimePowerModulus(p, 1)
    level2 = PrimePowerModulus(p, 2)
    if not is_primitive_root(r, level1):
        raise InvalidInput(f"{r} is not a primitive root modulo {p}")
    trace = [(r, 1, True)]
    for candidate in (r, r + p):
        ok = is_primitive_root(candidate, level2)
        trace.append((candidate, 2, ok))
        if ok:
            return PrimitiveRootCert(p, candidate, 2, tuple(trace))
    raise TheoryViolation(f"neither {r} nor {r + p} is primitive modulo {p}^2")


def find_primitive_root_mod_p_squared(
    p: int, rho_budget: int = DEFAULT_RHO_BUDGET
) -> PrimitiveRootCert:
    level1 = PrimePowerModulus(p, 1)
    trace = []
    for r in range(2, p):
        ok = is_primitive_root(r, level1, rho_budget)
        if ok:
            cert = lift_to_p_squared(p, r)
            return PrimitiveRootCert(p, cert.r, 2, tuple(trace) + cert.trace)
        trace.append((r, 1, False))
    raise TheoryViolation(f"no primitive root found modulo {p}")


def certify(p: int, r: int) -> PrimitiveRootCert:
    """Certificate for a caller-chosen root; raises unless r is primitive mod p**2."""
    if not is_primitive_root(r, PrimePowerModulus(p, 2)):
        raise InvalidInput(f"{r} is not a primitive root modulo {p}^2")
    return PrimitiveRootCert(p, r, 2, ((r, 2, True),))
