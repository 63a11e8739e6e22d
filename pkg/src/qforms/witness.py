"""Constructing z so that p**m divides Q(z, y, n), and recognizing such z.

For odd primes p != n with p not dividing y, p**m | Q(z, y, n) exactly when
n | p - 1 and z == y * r**(c * p**(m-1)) (mod p**m) for one of the n - 1
multipliers c = i * (p - 1) / n, where r is a primitive root modulo p**2.
Everything here works with least nonnegative residues modulo p**m.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    CharacterizationFails,
    InvalidExponent,
    InvalidInput,
    NotADivisor,
    NotAWitness,
    PreconditionViolation,
    TheoryViolation,
)
from .factor import is_prime
from .modular import CRTTerms, Residue, crt_terms
from .primroot import PrimitiveRootCert, certify, find_primitive_root_mod_p_squared
from .quotient import qvalue


def _odd_prime(name: str, v: int, exc=InvalidInput) -> None:
    if v == 2 or not is_prime(v):
        raise exc(f"{name} must be an odd prime, got {v}")


def _root_for(p: int, r: int | PrimitiveRootCert | None) -> PrimitiveRootCert:
    if r is None:
        return find_primitive_root_mod_p_squared(p)
    if isinstance(r, PrimitiveRootCert):
        if r.p != p or r.verified_level != 2:
            raise InvalidInput(f"certificate {r} does not certify a root modulo {p}^2")
        return r
    return certify(p, r)


def _check_setting(y: int, p: int, n: int, m: int) -> None:
    _odd_prime("p", p)
    _odd_prime("n", n, InvalidExponent)
    if p == n:
        raise PreconditionViolation(f"p and n must differ (both are {p})")
    if not isinstance(y, int) or y < 0:
        raise InvalidInput(f"y must be a nonnegative integer, got {y!r}")
    if y % p == 0:
        raise PreconditionViolation(f"p = {p} divides y = {y}")
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")


def c_values(p: int, n: int) -> list[int]:
    """The n - 1 admissible multipliers i * (p - 1) / n, i = 1 .. n - 1."""
    _odd_prime("p", p)
    _odd_prime("n", n, InvalidExponent)
    if p == n:
        raise PreconditionViolation(f"p and n must differ (both are {p})")
    if (p - 1) % n:
        raise CharacterizationFails(f"{n} does not divide {p} - 1")
    c1 = (p - 1) // n
    return [i * c1 for i in range(1, n)]


@dataclass(frozen=True)
class ConstructionParams:
    y: int
    p: int
    n: int
    m: int
    c: int
    r: PrimitiveRootCert

    def __post_init__(self):
        _check_setting(self.y, self.p, self.n, self.m)
        p, n, c = self.p, self.n, self.c
        if (p - 1) % n:
            raise CharacterizationFails(f"{n} does not divide {p} - 1")
        if not 0 < c < p - 1 or (n * c) % (p - 1):
            raise PreconditionViolation(f"c = {c} needs 0 < c < {p - 1} and {p - 1} | {n}*c")
        # Implied by the two conditions above; kept as a check on them.
        if c % 2 or 2 * c == p - 1:
            raise TheoryViolation(f"admissible c = {c} is odd or equals (p-1)/2")
        if self.r.p != p:
            raise InvalidInput(f"root certificate is for {self.r.p}, not {p}")

    @classmethod
    def build(
        cls,
        y: int,
        p: int,
        n: int,
        m: int = 1,
        c: int | None = None,
        r: int | PrimitiveRootCert | None = None,
    ) -> ConstructionParams:
        """Fill in defaults: the smallest admissible c and the smallest certified root."""
        _check_setting(y, p, n, m)
        if c is None:
            c = c_values(p, n)[0]
        return cls(y, p, n, m, c, _root_for(p, r))

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def exponent(self, c: int | None = None) -> int:
        return (self.c if c is None else c) * self.p ** (self.m - 1)


def construct_z(params: ConstructionParams) -> Residue:
    mod = params.modulus
    z = (params.y % mod) * pow(params.r.r, params.exponent(), mod) % mod
    if (z - params.y) % params.p == 0:
        raise TheoryViolation(f"constructed z = {z} is congruent to y modulo {params.p}")
    return Residue(z, mod)


@dataclass(frozen=True)
class Characterization:
    divides: bool
    c: int | None
    direct: bool
    criterion: bool


def divisibility_characterization(
    z: int,
    y: int,
    n: int,
    p: int,
    m: int,
    r: int | PrimitiveRootCert | None = None,
) -> Characterization:
    """Decide p**m | Q(z, y, n) twice: by division, and by the residue criterion.

    The two verdicts must agree; ``c`` is the matching multiplier when they hold.
    """
    _check_setting(y, p, n, m)
    if z == y:
        raise PreconditionViolation("z and y must differ")
    mod = p**m
    direct = qvalue(z, y, n) % mod == 0

    match = None
    if (p - 1) % n == 0:
        root = _root_for(p, r).r
        hits = [
            c for c in c_values(p, n) if (z - y * pow(root, c * p ** (m - 1), mod)) % mod == 0
        ]
        if len(hits) > 1:
            raise TheoryViolation(f"several multipliers {hits} match z = {z}")
        match = hits[0] if hits else None
    criterion = match is not None
    if direct != criterion:
        raise TheoryViolation(
            f"division says {direct}, criterion says {criterion} for "
            f"z={z}, y={y}, n={n}, p={p}, m={m}"
        )
    return Characterization(direct, match, direct, criterion)


def xi_enumerate(
    y: int, p: int, n: int, m: int, r: int | PrimitiveRootCert | None = None
) -> frozenset[Residue]:
    """All residues z modulo p**m with p**m | Q(z, y, n); empty when n does not divide p - 1."""
    _check_setting(y, p, n, m)
    if (p - 1) % n:
        return frozenset()
    cert = _root_for(p, r)
    out = frozenset(
        construct_z(ConstructionParams(y, p, n, m, c, cert)) for c in c_values(p, n)
    )
    if len(out) != n - 1:
        raise TheoryViolation(f"expected {n - 1} distinct residues, got {len(out)}")
    return out


def xi_pairs(
    p: int, n: int, m: int, ys: Iterable[int], r: int | PrimitiveRootCert | None = None
) -> Iterator[tuple[int, Residue]]:
    """(y, z) pairs over the given y values, skipping multiples of p."""
    cert = None
    for y in ys:
        if y % p == 0:
            continue
        if cert is None and (p - 1) % n == 0:
            cert = _root_for(p, r)
        for z in sorted(xi_enumerate(y, p, n, m, cert)):
            yield y, z


@dataclass(frozen=True)
class SwapPair:
    i: int
    j: int
    c_i: int
    c_j: int


def swap_pairing(params: ConstructionParams, z: int | Residue) -> SwapPair:
    """Locate z's multiplier c_i and the partner c_j that maps z back to y."""
    mod = params.modulus
    z = int(z) % mod
    y = params.y % mod
    cs = c_values(params.p, params.n)
    root = params.r.r

    def index(a: int, b: int) -> int | None:
        found = [k for k, c in enumerate(cs, 1) if (a - b * pow(root, params.exponent(c), mod)) % mod == 0]
        return found[0] if found else None

    i = index(z, y)
    if i is None:
        raise NotAWitness(f"{z} is not in the witness set for y = {params.y} modulo {mod}")
    j = index(y, z)
    if j is None:
        raise TheoryViolation(f"no multiplier maps {z} back to {y} modulo {mod}")
    pair = SwapPair(i, j, cs[i - 1], cs[j - 1])
    if pair.c_i + pair.c_j != params.p - 1 or i == j:
        raise TheoryViolation(f"swap pairing broken: {pair}")
    return pair


@dataclass(frozen=True)
class RootPowerSum:
    terms: tuple[int, ...]
    residue: Residue
    exact: int | None = None


def root_power_sum(
    p: int, n: int, m: int, c: int, r: int | PrimitiveRootCert, *, exact: bool = False
) -> RootPowerSum:
    """sum_{k<n} r**(k*c*p**(m-1)) modulo p**m, which must vanish.

    ``terms`` are the summands reduced modulo p**m. With ``exact=True`` the
    unreduced integer sum is also returned (can be very large).
    """
    params = ConstructionParams(1, p, n, m, c, _root_for(p, r))
    mod = params.modulus
    e = params.exponent()
    terms = tuple(pow(params.r.r, k * e, mod) for k in range(n))
    res = Residue(sum(terms) % mod, mod)
    if res.value:
        raise TheoryViolation(f"root power sum is {res}, expected 0")
    full = sum(params.r.r ** (k * e) for k in range(n)) if exact else None
    return RootPowerSum(terms, res, full)


@dataclass(frozen=True)
class CompositeSpec:
    y: int
    n: int
    parts: tuple[ConstructionParams, ...]

    def __post_init__(self):
        if not self.parts:
            raise InvalidInput("need at least one part")
        for part in self.parts:
            if part.y != self.y or part.n != self.n:
                raise InvalidInput(f"part {part} does not share y = {self.y}, n = {self.n}")
        primes = [part.p for part in self.parts]
        if len(set(primes)) != len(primes):
            raise InvalidInput(f"primes must be distinct, got {primes}")

    @classmethod
    def build(
        cls, y: int, n: int, parts: Sequence[tuple[int, ...]]
    ) -> CompositeSpec:
        """``parts`` entries are (p, m), (p, m, c) or (p, m, c, r)."""
        built = []
        for part in parts:
            p, m, *rest = part
            c = rest[0] if rest else None
            r = rest[1] if len(rest) > 1 else None
            built.append(ConstructionParams.build(y, p, n, m, c, r))
        return cls(y, n, tuple(built))

    @property
    def terms(self) -> CRTTerms:
        return crt_terms([part.modulus for part in self.parts])

    @property
    def cofactors(self) -> tuple[int, ...]:
        return self.terms.cofactors

    @property
    def inverses(self) -> tuple[int, ...]:
        return self.terms.inverses

    @property
    def modulus(self) -> int:
        return math.prod(part.modulus for part in self.parts)


def crt_construct(spec: CompositeSpec) -> Residue:
    """z == y * sum M_i q_i r_i**(c_i p_i**(m_i - 1)) modulo the product of the p_i**m_i."""
    terms = spec.terms
    N = terms.product
    acc = sum(
        M * q * pow(part.r.r, part.exponent(), N)
        for part, M, q in zip(spec.parts, terms.cofactors, terms.inverses)
    )
    z = Residue(spec.y * acc % N, N)
    for part in spec.parts:
        if z.value % part.modulus != construct_z(part).value:
            raise TheoryViolation(f"composite witness {z} disagrees with part p = {part.p}")
    return z


class DivisorClass(enum.Enum):
    DIVIDES_P_MINUS_1 = "divides_p_minus_1"
    EQUALS_N_AND_DIVIDES_DIFF = "equals_n_and_divides_diff"


def classify_divisor(q: int, z: int, y: int, n: int) -> DivisorClass:
    """Which of the two possible reasons lets the odd prime q divide Q(z, y, n).

    Either n | q - 1, or else q is n itself and divides z - y. (The original
    remark names the divisor ``t`` in its conclusion; it is the prime q here.)
    """
    _odd_prime("q", q)
    if math.gcd(z, y) != 1:
        raise PreconditionViolation(f"gcd({z}, {y}) must be 1")
    if qvalue(z, y, n) % q:
        raise NotADivisor(f"{q} does not divide Q({z}, {y}, {n})")
    if (q - 1) % n == 0:
        return DivisorClass.DIVIDES_P_MINUS_1
    if q != n or (z - y) % q:
        raise TheoryViolation(f"{q} divides Q({z}, {y}, {n}) without n | q-1 or q = n | z-y")
    return DivisorClass.EQUALS_N_AND_DIVIDES_DIFF


def fermat_form_guard(p: int, z: int, y: int, n: int) -> bool:
    """Confirm that a prime p = 2**k + 1 does not divide Q(z, y, n)."""
    _odd_prime("p", p)
    k = (p - 1).bit_length() - 1
    if p - 1 != 1 << k:
        raise PreconditionViolation(f"{p} is not of the form 2^k + 1")
    _odd_prime("n", n, InvalidExponent)
    if p == n:
        raise PreconditionViolation(f"p and n must differ (both are {p})")
    if y % p == 0:
        raise PreconditionViolation(f"{p} divides y = {y}")
    if qvalue(z, y, n) % p == 0:
        raise TheoryViolation(f"{p} = 2^{k} + 1 divides Q({z}, {y}, {n})")
    return True
