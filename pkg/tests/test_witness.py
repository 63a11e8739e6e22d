import pytest

from oracles import brute_divisible_set
from qforms.errors import (
    CharacterizationFails,
    InvalidInput,
    NotADivisor,
    NotAWitness,
    PreconditionViolation,
)
from qforms.factor import primes_below
from qforms.modular import PrimePowerModulus
from qforms.primroot import find_primitive_root_mod_p_squared, is_primitive_root
from qforms.quotient import qvalue
from qforms.witness import (
    CompositeSpec,
    ConstructionParams,
    DivisorClass,
    c_values,
    classify_divisor,
    construct_z,
    crt_construct,
    divisibility_characterization,
    fermat_form_guard,
    root_power_sum,
    swap_pairing,
    xi_enumerate,
    xi_pairs,
)

GRID_P = (7, 13, 31, 43)
GRID_N = (3, 5, 7)


def admissible(ps=GRID_P, ns=GRID_N):
    return [(p, n) for p in ps for n in ns if p != n and (p - 1) % n == 0]


def values(residues):
    return {r.value for r in residues}


def test_c_values():
    assert c_values(7, 3) == [2, 4]
    assert c_values(13, 3) == [4, 8]
    assert c_values(31, 5) == [6, 12, 18, 24]
    with pytest.raises(CharacterizationFails):
        c_values(13, 5)


@pytest.mark.parametrize("p,n", admissible())
def test_c_values_even_and_never_half(p, n):
    cs = c_values(p, n)
    assert len(cs) == n - 1
    assert all(c % 2 == 0 and 2 * c != p - 1 for c in cs)
    assert all((n * c) % (p - 1) == 0 and 0 < c < p - 1 for c in cs)


def test_construct_examples():
    P = ConstructionParams.build
    z = construct_z(P(1, 7, 3, 3, 2, 3))
    assert z.value == 324 and z.modulus == 343
    assert qvalue(324, 1, 3) == 105301 == 307 * 343
    assert construct_z(P(1, 7, 3, 1, 2, 3)).value == 2
    assert qvalue(2, 1, 3) == 7
    assert construct_z(P(1, 13, 3, 1, 4, 2)).value == 3
    assert qvalue(3, 1, 3) == 13


def test_params_validation():
    with pytest.raises(CharacterizationFails):
        ConstructionParams.build(1, 13, 5, 1)
    with pytest.raises(PreconditionViolation):
        ConstructionParams.build(7, 7, 3, 1)
    with pytest.raises(PreconditionViolation):
        ConstructionParams.build(1, 7, 3, 1, c=3)
    with pytest.raises(PreconditionViolation):
        ConstructionParams.build(1, 3, 3, 1)


def test_construct_reduces_large_y():
    small = construct_z(ConstructionParams.build(2, 7, 3, 2))
    big = construct_z(ConstructionParams.build(2 + 5 * 49, 7, 3, 2))
    assert small == big
    assert qvalue(big.value, 2 + 5 * 49, 3) % 49 == 0


@pytest.mark.parametrize("p,n", admissible())
@pytest.mark.parametrize("m", [1, 2, 3])
def test_soundness(p, n, m):
    cert = find_primitive_root_mod_p_squared(p)
    for y in range(1, 31):
        if y % p == 0:
            continue
        for c in c_values(p, n):
            z = construct_z(ConstructionParams(y, p, n, m, c, cert))
            assert (z.value - y) % p != 0
            assert qvalue(z.value, y, n) % p**m == 0


def test_characterization_examples():
    res = divisibility_characterization(324, 1, 3, 7, 3)
    assert res.divides and res.c == 2
    res = divisibility_characterization(3, 1, 3, 7, 1)
    assert not res.divides and res.c is None
    for z in range(40):
        if z != 1:
            assert not divisibility_characterization(z, 1, 5, 13, 1).divides


def test_characterization_handles_common_factor():
    # gcd(z, y) > 1 with p not dividing y still obeys the criterion.
    for z in range(0, 200, 2):
        if z != 4:
            divisibility_characterization(z, 4, 3, 7, 2)


def test_xi_examples():
    assert values(xi_enumerate(1, 7, 3, 1)) == {2, 4}
    assert values(xi_enumerate(1, 7, 3, 3)) == {324, 18}
    assert values(xi_enumerate(2, 7, 3, 1)) == {4, 1}
    assert xi_enumerate(1, 13, 5, 1) == frozenset()


def test_xi_matches_brute_force_small():
    for p, n in admissible((7, 13, 31)):
        for y in (1, 2, 5):
            assert values(xi_enumerate(y, p, n, 1)) == brute_divisible_set(y, p, n, 1)


def test_xi_pairs_skip_multiples_of_p():
    pairs = list(xi_pairs(7, 3, 1, range(1, 9)))
    assert {y for y, _ in pairs} == {1, 2, 3, 4, 5, 6, 8}
    assert len(pairs) == 14


@pytest.mark.parametrize("n", [3, 5, 7, 11])
def test_small_primes_never_divide(n):
    for p in primes_below(2 * n + 1):
        if p in (2, n):
            continue
        for y in range(1, p):
            assert not any(
                qvalue(z, y, n) % p == 0 for z in range(p) if z != y
            ), (p, n, y)


@pytest.mark.parametrize("p,n", admissible())
def test_nesting(p, n):
    for y in (1, 2, 3):
        top = xi_enumerate(y, p, n, 3)
        for m in (1, 2):
            lower = values(xi_enumerate(y, p, n, m))
            assert {r.value % p**m for r in top} <= lower


def _second_root(p):
    first = find_primitive_root_mod_p_squared(p).r
    pp = PrimePowerModulus(p, 2)
    return next(r for r in range(first + 1, p * p) if r % p and is_primitive_root(r, pp))


@pytest.mark.parametrize("p", [7, 13, 31])
def test_root_invariance(p):
    r1 = find_primitive_root_mod_p_squared(p).r
    r2 = _second_root(p)
    assert r1 != r2
    for n in GRID_N:
        if p == n or (p - 1) % n:
            continue
        for m in (1, 2, 3):
            for y in (1, 4, 6):
                assert xi_enumerate(y, p, n, m, r1) == xi_enumerate(y, p, n, m, r2)


def test_swap_pairing_examples():
    pair = swap_pairing(ConstructionParams.build(1, 7, 3, 1, 2, 3), 2)
    assert (pair.c_i, pair.c_j) == (2, 4)
    assert 2 * pow(3, 4, 7) % 7 == 1
    pair = swap_pairing(ConstructionParams.build(1, 13, 3, 1, 4, 2), 3)
    assert (pair.c_i, pair.c_j) == (4, 8)
    with pytest.raises(NotAWitness):
        swap_pairing(ConstructionParams.build(1, 7, 3, 1, 2, 3), 3)


@pytest.mark.parametrize("p,n", admissible())
def test_swap_pairing_grid(p, n):
    for m in (1, 2):
        for c in c_values(p, n):
            params = ConstructionParams.build(3, p, n, m, c)
            pair = swap_pairing(params, construct_z(params))
            assert pair.i != pair.j
            assert pair.c_i == c and pair.c_i + pair.c_j == p - 1


def test_root_power_sum_examples():
    s = root_power_sum(7, 3, 1, 2, 3, exact=True)
    assert s.exact == 91 and s.residue.value == 0
    s = root_power_sum(7, 3, 1, 2, 5, exact=True)
    assert s.exact == 651 and s.residue.value == 0
    s = root_power_sum(7, 3, 3, 2, 3)
    assert s.terms == (1, 324, 18)
    assert 324**2 % 343 == 361 % 343 == 18


@pytest.mark.parametrize("p,n", admissible())
def test_root_power_sum_grid(p, n):
    r = find_primitive_root_mod_p_squared(p)
    for m in (1, 2, 3):
        for c in c_values(p, n):
            assert root_power_sum(p, n, m, c, r).residue.value == 0


def test_crt_construct_examples():
    spec = CompositeSpec.build(1, 3, [(7, 1, 2, 3), (13, 1, 4, 2)])
    z = crt_construct(spec)
    assert (z.value, z.modulus) == (16, 91)
    assert qvalue(16, 1, 3) == 273 == 3 * 7 * 13
    assert spec.cofactors == (13, 7) and spec.inverses == (6, 2)

    single = CompositeSpec.build(1, 3, [(7, 3, 2, 3)])
    assert crt_construct(single) == construct_z(single.parts[0])

    spec = CompositeSpec.build(1, 3, [(7, 2, 2, 3), (13, 1, 4, 2)])
    z = crt_construct(spec)
    assert z.modulus == 637
    assert qvalue(z.value, 1, 3) % 637 == 0


def test_crt_construct_many_parts():
    spec = CompositeSpec.build(5, 3, [(7, 2), (13, 2), (19, 1), (31, 1)])
    z = crt_construct(spec)
    assert qvalue(z.value, 5, 3) % spec.modulus == 0
    for part in spec.parts:
        assert z.value % part.modulus == construct_z(part).value


def test_crt_construct_rejects_repeated_prime():
    with pytest.raises(InvalidInput):
        CompositeSpec.build(1, 3, [(7, 1), (7, 2)])


def test_classify_divisor():
    assert classify_divisor(13, 6, 5, 3) is DivisorClass.DIVIDES_P_MINUS_1
    assert classify_divisor(3, 4, 1, 3) is DivisorClass.EQUALS_N_AND_DIVIDES_DIFF
    assert classify_divisor(23, 2, 1, 11) is DivisorClass.DIVIDES_P_MINUS_1
    with pytest.raises(NotADivisor):
        classify_divisor(5, 6, 5, 3)


def test_fermat_form_guard_examples():
    assert fermat_form_guard(5, 2, 1, 3)
    assert fermat_form_guard(17, 3, 1, 5)
    assert fermat_form_guard(3, 4, 1, 5)
    with pytest.raises(PreconditionViolation):
        fermat_form_guard(7, 2, 1, 3)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_prime_equal_to_exponent(n):
    # Q == n * y^(n-1) (mod n) once n | z - y, so m = 1 picks up every z == y;
    # one level higher nothing survives.
    for y in range(1, 2 * n):
        if y % n == 0:
            continue
        assert brute_divisible_set(y, n, n, 1) == {y % n} - {y}
        assert brute_divisible_set(y, n, n, 2) == set()
    with pytest.raises(PreconditionViolation):
        xi_enumerate(1, n, n, 2)
