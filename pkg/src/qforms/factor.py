"""Primality testing, factorization and perfect-power detection.

Pipeline: trial division by primes below ``TRIAL_BOUND``, then Brent's variant
of Pollard rho on whatever composite cofactor remains. Each cofactor gets its
own iteration budget; when the budget runs out the result is returned with
``complete=False`` instead of guessing.

Primality is deterministic below 2**64 (Miller-Rabin with the first twelve
prime bases). Above that, 64 strong-pseudoprime rounds with bases drawn from a
generator seeded by ``n`` itself, followed by a strong Lucas test. The seeding
makes every verdict reproducible run to run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import EffortExceeded, InvalidInput

TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 2**22
PROBABILISTIC_ROUNDS = 64

_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = _DETERMINISTIC_BASES


@lru_cache(maxsize=None)
def primes_below(limit: int) -> tuple[int, ...]:
    """All primes p < limit, via a bytearray sieve."""
    if limit <= 2:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise InvalidInput(f"jacobi symbol needs a positive odd modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -(D + 2) if D > 0 else -(D - 2)
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n if x % 2 else x) // 2 % n

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 2**64:
        return all(_strong_probable_prime(n, a) for a in _DETERMINISTIC_BASES)
    rng = random.Random(n)
    for _ in range(PROBABILISTIC_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
            return False
    return _strong_lucas_probable_prime(n)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``value``.

    ``factors`` holds (prime, exponent) pairs with strictly increasing primes.
    If ``complete`` is False, ``cofactor`` is the product of the composite
    parts that could not be split within budget; otherwise it is 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    complete: bool = True
    cofactor: int = 1

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise InvalidInput(f"malformed factor list {self.factors}")
        if prod(p**e for p, e in self.factors) * self.cofactor != self.value:
            raise InvalidInput("factors do not recombine to value")
        if self.complete != (self.cofactor == 1):
            raise InvalidInput("complete flag inconsistent with cofactor")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def is_prime(self) -> bool:
        return self.complete and self.factors == ((self.value, 1),)

    def largest_prime(self) -> int:
        if not self.complete:
            raise EffortExceeded(
                f"factorization of {self.value} incomplete (cofactor {self.cofactor})"
            )
        return self.factors[-1][0]

    def __str__(self) -> str:
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors]
        if not self.complete:
            parts.append(f"C{self.cofactor}")
        return " * ".join(parts)

    def table_style(self) -> str:
        """Render like the printed decomposition tables: ``prime``, ``19*19``."""
        if self.is_prime:
            return "prime"
        return "*".join(str(p) for p, e in self.factors for _ in range(e))

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "factors": [{"prime": str(p), "exponent": e} for p, e in self.factors],
            "complete": self.complete,
            "cofactor": str(self.cofactor),
        }

    @classmethod
    def from_json(cls, data: dict) -> Factorization:
        return cls(
            value=int(data["value"]),
            factors=tuple((int(f["prime"]), int(f["exponent"])) for f in data["factors"]),
            complete=data["complete"],
            cofactor=int(data["cofactor"]),
        )


def _brent(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """One Brent-rho attempt with polynomial x^2 + c.

    Returns (nontrivial factor or None, iterations spent).
    """
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        spent += 2 * r
        r *= 2
        if g == 1 and spent >= budget:
            return None, spent
    if g == n:
        # Batched gcd overshot; backtrack one step at a time.
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), spent


def pollard_brent(n: int, budget: int = DEFAULT_RHO_BUDGET) -> int | None:
    """A nontrivial factor of composite n, or None once budget is spent."""
    if n % 2 == 0:
        return 2
    spent = 0
    c = 1
    while spent < budget:
        d, used = _brent(n, c, budget - spent)
        spent += used
        if d is not None:
            return d
        c += 1
    return None


def _split(n: int, budget: int, out: dict[int, int], stuck: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root, k = _perfect_power_base(n)
    if k > 1:
        sub: dict[int, int] = {}
        sub_stuck: list[int] = []
        _split(root, budget, sub, sub_stuck)
        for p, e in sub.items():
            out[p] = out.get(p, 0) + e * k
        stuck.extend(c**k for c in sub_stuck)
        return
    d = pollard_brent(n, budget)
    if d is None:
        stuck.append(n)
        return
    _split(d, budget, out, stuck)
    _split(n // d, budget, out, stuck)


def _perfect_power_base(n: int) -> tuple[int, int]:
    """(root, k) with n = root**k and k maximal among prime exponents tried."""
    best = (n, 1)
    for k in primes_below(n.bit_length() + 1):
        r = iroot(best[0], k)
        while r**k == best[0]:
            best = (r, best[1] * k)
            r = iroot(best[0], k)
    return best


def factorize(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    if n < 2:
        raise InvalidInput(f"cannot factor {n}; need n >= 2")
    original = n
    out: dict[int, int] = {}
    for p in primes_below(TRIAL_BOUND):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    stuck: list[int] = []
    if n > 1:
        if n < TRIAL_BOUND * TRIAL_BOUND:
            # No factor below TRIAL_BOUND survives, so n is prime.
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, rho_budget, out, stuck)
    return Factorization(
        value=original,
        factors=tuple(sorted(out.items())),
        complete=not stuck,
        cofactor=prod(stuck),
    )


def largest_prime_factor(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> int:
    return factorize(n, rho_budget).largest_prime()


def iroot(v: int, k: int) -> int:
    """floor(v ** (1/k)) for v >= 0, k >= 1, exact at any size."""
    if v < 0 or k < 1:
        raise InvalidInput(f"iroot needs v >= 0 and k >= 1, got v={v}, k={k}")
    if v < 2 or k == 1:
        return v
    if k == 2:
        return isqrt(v)
    x = 1 << -(-v.bit_length() // k)
    while True:
        y = ((k - 1) * x + v // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_perfect_nth_power(v: int, n: int) -> int | None:
    """The integer root if v == root**n, else None."""
    if v < 1:
        raise InvalidInput(f"need v >= 1, got {v}")
    if n < 2:
        raise InvalidInput(f"need exponent >= 2, got {n}")
    root = iroot(v, n)
    return root if root**n == v else None
