"""Re-run every published worked example in one pass.

Expected values live in ``PUBLISHED_VALUES`` (and ``table1.TABLE1``) so that a
corrupted fixture shows up as a named failure rather than a crash.
"""

from __future__ import annotations

from typing import Callable, Iterable

from . import table1 as golden
from .errors import QFormsError
from .factor import factorize, is_perfect_nth_power, is_prime
from .modular import PrimePowerModulus, mod_pow
from .primroot import find_primitive_root_mod_p_squared, is_primitive_root, lift_to_p_squared
from .quotient import qvalue
from .report import Report
from .scan import compare_table1, goormaghtigh_check, mersenne_check, table1_rows
from .witness import ConstructionParams, construct_z, divisibility_characterization, root_power_sum

PUBLISHED_VALUES: dict[str, dict] = {
    "construction": {"y": 1, "p": 7, "n": 3, "m": 3, "c": 2, "r": 3, "power": 324, "Q": 105301, "cofactor": 307},
    "root_sums": {"sum_m1_r3": 91, "sum_m1_r5": 651, "terms_m3": (1, 324, 361), "sum_m3": 686},
    "primroot487": {"p": 487, "r": 10},
    "probe": {"z": 16, "y": 5, "n": 3, "Q": 361, "root": 19},
    "mersenne": {"n": 13, "value": 8191},
}


def check_construction() -> Report:
    v = PUBLISHED_VALUES["construction"]
    rep = Report("construction")
    rep.expect("3^98 mod 7^3", v["power"], mod_pow(v["r"], v["c"] * v["p"] ** (v["n"] - 1), v["p"] ** 3).value)
    params = ConstructionParams.build(v["y"], v["p"], v["n"], v["m"], v["c"], v["r"])
    z = construct_z(params).value
    rep.expect("construct_z", v["power"], z)
    q = qvalue(z, v["y"], v["n"])
    rep.expect("Q(324, 1, 3)", v["Q"], q)
    rep.expect("Q = 307 * 7^3", v["Q"], v["cofactor"] * v["p"] ** v["m"])
    rep.expect("factorization", {v["p"]: v["m"], v["cofactor"]: 1}, factorize(q).as_dict())
    rep.expect("characterization witness c", v["c"], divisibility_characterization(z, v["y"], v["n"], v["p"], v["m"], v["r"]).c)
    return rep


def check_root_sums() -> Report:
    v = PUBLISHED_VALUES["root_sums"]
    rep = Report("root_sums")
    s3 = root_power_sum(7, 3, 1, 2, 3, exact=True)
    s5 = root_power_sum(7, 3, 1, 2, 5, exact=True)
    rep.expect("3^0+3^2+3^4", v["sum_m1_r3"], s3.exact)
    rep.expect("91 mod 7", 0, v["sum_m1_r3"] % 7)
    rep.expect("5^0+5^2+5^4", v["sum_m1_r5"], s5.exact)
    rep.expect("651 mod 7", 0, v["sum_m1_r5"] % 7)
    s = root_power_sum(7, 3, 3, 2, 3)
    # The printed terms write 324^2 as (-19)^2 = 361, which is not reduced mod 343.
    printed = v["terms_m3"]
    rep.expect("terms match modulo 343", [t % 343 for t in printed], list(s.terms))
    rep.expect("1+324+361", v["sum_m3"], sum(printed))
    rep.expect("686 mod 343", 0, v["sum_m3"] % 343)
    rep.expect("sum of r^(k c p^2) mod 343", 0, s.residue.value)
    return rep


def check_primroot487() -> Report:
    v = PUBLISHED_VALUES["primroot487"]
    p, r = v["p"], v["r"]
    rep = Report("primroot487")
    rep.expect(f"{r} primitive mod {p}", True, is_primitive_root(r, PrimePowerModulus(p, 1)))
    rep.expect(f"{r} not primitive mod {p}^2", True, not is_primitive_root(r, PrimePowerModulus(p, 2)))
    lifted = lift_to_p_squared(p, r)
    rep.expect("lifted root", r + p, lifted.r)
    cert = find_primitive_root_mod_p_squared(p)
    rep.expect("certificate verifies mod p^2", True, cert.verify(2))
    rep.expect("certificate verifies mod p^3", True, cert.verify(3))
    return rep


def check_probe() -> Report:
    v = PUBLISHED_VALUES["probe"]
    rep = Report("probe")
    q = qvalue(v["z"], v["y"], v["n"])
    rep.expect("Q(16, 5, 3)", v["Q"], q)
    rep.expect("square root", v["root"], is_perfect_nth_power(q, 2))
    rep.expect("root is prime", True, is_prime(v["root"]))
    rep.expect("not a cube", None, is_perfect_nth_power(q, 3))
    return rep


def check_mersenne() -> Report:
    v = PUBLISHED_VALUES["mersenne"]
    rep, fac = mersenne_check(v["n"])
    rep.name = "mersenne"
    rep.expect("2^13 - 1", v["value"], fac.value)
    for n in (3, 5, 7, 11):
        sub, _ = mersenne_check(n)
        rep.checks.extend(sub.checks)
    return rep


def check_table1() -> Report:
    rep = Report("table1")
    rows = table1_rows()
    rep.expect("rows", len(golden.TABLE1), len(rows))
    problems = compare_table1(rows, golden.TABLE1)
    rep.expect("mismatches", [], problems)
    return rep


FIXTURES: dict[str, Callable[[], Report]] = {
    "construction": check_construction,
    "root_sums": check_root_sums,
    "goormaghtigh": goormaghtigh_check,
    "mersenne": check_mersenne,
    "primroot487": check_primroot487,
    "probe": check_probe,
    "table1": check_table1,
}


def verify_published_examples(only: Iterable[str] | None = None) -> list[Report]:
    names = list(FIXTURES) if not only else list(only)
    unknown = [n for n in names if n not in FIXTURES]
    if unknown:
        raise KeyError(f"unknown fixture(s) {unknown}; choose from {sorted(FIXTURES)}")
    reports = []
    for name in names:
        try:
            reports.append(FIXTURES[name]())
        except QFormsError as exc:
            rep = Report(name)
            rep.expect("completed without error", None, f"{type(exc).__name__}: {exc}")
            reports.append(rep)
    return reports
