"""Command-line entry point: ``qforms <subcommand> ...``.

Exit codes: 0 success, 1 verification failure (counterexample, table
mismatch, theory violation, factoring gave up), 2 usage or input error.
All integers in JSON output are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field

from .errors import EffortExceeded, InputError, QFormsError, TableMismatch, TheoryViolation
from .factor import DEFAULT_RHO_BUDGET, factorize
from .modular import PrimePowerModulus
from .primroot import find_primitive_root_mod_p_squared, multiplicative_order
from .quotient import quotient
from .scan import (
    TSV_HEADER,
    compare_table1,
    conjecture_scan,
    goormaghtigh_check,
    mersenne_check,
    perfect_power_probe,
    table1_rows,
)
from .verify import FIXTURES, verify_published_examples
from .witness import (
    CompositeSpec,
    ConstructionParams,
    c_values,
    construct_z,
    crt_construct,
    divisibility_characterization,
    root_power_sum,
    xi_enumerate,
)

ENV_THREADS = "QF_THREADS"
ENV_RHO_BUDGET = "QF_RHO_BUDGET"


@dataclass
class Output:
    data: dict
    human: list[str] = field(default_factory=list)
    tsv: list[str] | None = None
    code: int = 0


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name}={raw!r} is not an integer") from None


def _executor(threads: int):
    return ProcessPoolExecutor(max_workers=threads) if threads > 1 else nullcontext(None)


def cmd_construct(args) -> Output:
    params = ConstructionParams.build(args.y, args.p, args.n, args.m, args.c, args.r)
    z = construct_z(params).value
    q = quotient(z, args.y, args.n).value
    divisor = params.modulus
    fac = factorize(q, args.rho_budget)
    data = {
        "y": str(args.y), "p": str(args.p), "n": str(args.n), "m": str(args.m),
        "c": str(params.c), "r": str(params.r.r), "z": str(z), "Q": str(q),
        "divisor": str(divisor), "Q_over_divisor": str(q // divisor),
        "divides": q % divisor == 0, "factorization": fac.to_json(),
    }
    human = [
        f"z = {z}  (= {args.y} * {params.r.r}^({params.c}*{args.p}^{args.m - 1}) mod {divisor})",
        f"Q = {q} = {q // divisor} * {divisor}",
        f"factorization: {fac}",
    ]
    return Output(data, human, code=0 if q % divisor == 0 else 1)


def cmd_check(args) -> Output:
    res = divisibility_characterization(args.z, args.y, args.n, args.p, args.m, args.r)
    data = {"divides": res.divides, "c": None if res.c is None else str(res.c),
            "direct": res.direct, "criterion": res.criterion, "modulus": str(args.p**args.m)}
    verdict = "divides" if res.divides else "does not divide"
    human = [f"{args.p}^{args.m} {verdict} Q({args.z}, {args.y}, {args.n})"]
    if res.c is not None:
        human.append(f"witness multiplier c = {res.c}")
    return Output(data, human)


def cmd_xi(args) -> Output:
    residues = sorted(r.value for r in xi_enumerate(args.y, args.p, args.n, args.m, args.r))
    mod = args.p**args.m
    cs = c_values(args.p, args.n) if (args.p - 1) % args.n == 0 else []
    data = {"y": str(args.y), "modulus": str(mod), "c_values": [str(c) for c in cs],
            "residues": [str(v) for v in residues]}
    human = [f"z mod {mod} in {{{', '.join(map(str, residues))}}}" if residues
             else f"no z: {args.n} does not divide {args.p} - 1"]
    return Output(data, human, tsv=[str(v) for v in residues])


def _parse_part(text: str) -> tuple[int, ...]:
    try:
        fields = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--part expects p,m[,c], got {text!r}") from None
    if len(fields) not in (2, 3):
        raise InputError(f"--part expects p,m[,c], got {text!r}")
    return fields


def cmd_crt(args) -> Output:
    spec = CompositeSpec.build(args.y, args.n, [_parse_part(p) for p in args.part])
    z = crt_construct(spec)
    q = quotient(z.value, args.y, args.n).value
    parts = [
        {"p": str(pt.p), "m": str(pt.m), "c": str(pt.c), "r": str(pt.r.r),
         "M": str(M), "q": str(qi), "z_mod_part": str(z.value % pt.modulus)}
        for pt, M, qi in zip(spec.parts, spec.cofactors, spec.inverses)
    ]
    data = {"z": str(z.value), "modulus": str(z.modulus), "Q": str(q),
            "divides": q % z.modulus == 0, "parts": parts}
    human = [f"z = {z}", f"Q = {q}, divisible by {z.modulus}: {q % z.modulus == 0}"]
    human += [f"  p={d['p']} m={d['m']} c={d['c']} r={d['r']} M={d['M']} q={d['q']}" for d in parts]
    return Output(data, human, code=0 if q % z.modulus == 0 else 1)


def cmd_sum(args) -> Output:
    s = root_power_sum(args.p, args.n, args.m, args.c, args.r)
    data = {"terms": [str(t) for t in s.terms], "residue": str(s.residue.value),
            "modulus": str(s.residue.modulus)}
    human = [f"{' + '.join(map(str, s.terms))} = {sum(s.terms)} == {s.residue}"]
    return Output(data, human)


def cmd_primroot(args) -> Output:
    cert = find_primitive_root_mod_p_squared(args.p, args.rho_budget)
    orders = {k: multiplicative_order(cert.r, PrimePowerModulus(args.p, k)) for k in (1, 2)}
    data = dict(cert.to_json(), orders={str(k): str(v) for k, v in orders.items()})
    human = [f"r = {cert.r} is a primitive root modulo {args.p}^k for all k"]
    human += [f"  candidate {c}: level {lvl} {'ok' if ok else 'rejected'}" for c, lvl, ok in cert.trace]
    human += [f"  order mod {args.p}^{k} = {v}" for k, v in orders.items()]
    return Output(data, human)


def cmd_q(args) -> Output:
    inst = quotient(args.z, args.y, args.n)
    fac = factorize(inst.value, args.rho_budget) if inst.value > 1 else None
    data = {"z": str(args.z), "y": str(args.y), "n": str(args.n), "Q": str(inst.value),
            "factorization": fac.to_json() if fac else None}
    human = [str(inst.value)] + ([f"= {fac}"] if fac else [])
    return Output(data, human, code=0 if fac is None or fac.complete else 1)


def cmd_factor(args) -> Output:
    fac = factorize(args.N, args.rho_budget)
    return Output(fac.to_json(), [f"{args.N} = {fac}"], code=0 if fac.complete else 1)


def _rows_output(rows, extra: dict, code: int, human_tail: list[str]) -> Output:
    data = dict(extra, rows=[r.to_json() for r in rows])
    human = [r.tsv().replace("\t", "  ") for r in rows] + human_tail
    return Output(data, human, tsv=[TSV_HEADER] + [r.tsv() for r in rows], code=code)


def cmd_table1(args) -> Output:
    with _executor(args.threads) as ex:
        rows = table1_rows(args.rho_budget, ex)
    problems = compare_table1(rows)
    tail = [f"{len(rows)} rows, " + ("all match" if not problems else f"{len(problems)} mismatches")]
    tail += problems
    return _rows_output(rows, {"mismatches": problems}, 1 if problems else 0, tail)


def cmd_scan(args) -> Output:
    with _executor(args.threads) as ex:
        res = conjecture_scan(args.n, args.ymax, args.zmax, args.rho_budget, ex)
    cx = [(r.y, r.z) for r in res.counterexamples]
    inc = [(r.y, r.z) for r in res.incomplete]
    tail = [f"{len(res.rows)} rows, {len(cx)} counterexamples, {len(inc)} incomplete"]
    tail += [f"counterexample: y={y} z={z}" for y, z in cx]
    extra = {"n": str(args.n), "counterexamples": [{"y": str(y), "z": str(z)} for y, z in cx],
             "incomplete": [{"y": str(y), "z": str(z)} for y, z in inc]}
    return _rows_output(res.rows, extra, 1 if cx else 0, tail)


def _report_output(reports) -> Output:
    data = {"ok": all(r.ok for r in reports), "reports": [r.to_json() for r in reports]}
    human = [line for r in reports for line in r.lines()]
    return Output(data, human, code=0 if data["ok"] else 1)


def cmd_goormaghtigh(args) -> Output:
    return _report_output([goormaghtigh_check()])


def cmd_mersenne(args) -> Output:
    rep, fac = mersenne_check(args.n, args.rho_budget)
    out = _report_output([rep])
    out.data["factorization"] = fac.to_json()
    out.human.insert(0, f"2^{args.n} - 1 = {fac}")
    return out


def cmd_probe(args) -> Output:
    res = perfect_power_probe(args.n, args.ymax, args.zmax, args.diff)
    data = {"n": str(args.n), "hits": [h.to_json() for h in res.hits],
            "nth_powers": [h.to_json() for h in res.nth_powers],
            "violations": [h.to_json() for h in res.violations]}
    human = [
        f"Q({h.z}, {h.y}, {args.n}) = {h.value} = "
        + ", ".join(f"{r}^{k}" for k, r in h.powers)
        for h in res.hits
    ]
    human.append(f"{len(res.hits)} perfect powers; {len(res.nth_powers)} with exponent a multiple "
                 f"of n = {args.n}; {len(res.violations)} of those with z - y also a power of n")
    return Output(data, human, code=1 if res.violations else 0)


def cmd_verify(args) -> Output:
    return _report_output(verify_published_examples(args.only))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "tsv"], default="human")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker processes for scans (env {ENV_THREADS}, default 1)")
    common.add_argument("--rho-budget", type=int, default=None,
                        help=f"Pollard rho iterations per cofactor (env {ENV_RHO_BUDGET})")

    parser = argparse.ArgumentParser(prog="qforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("construct", cmd_construct, "build z with p^m | Q(z, y, n)")
    for flag in ("--y", "--p", "--n", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--c", type=int)
    p.add_argument("--r", type=int, help="primitive root mod p^2 (default: smallest)")

    p = add("check", cmd_check, "decide p^m | Q(z, y, n) two ways")
    for flag in ("--z", "--y", "--n", "--p", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--r", type=int)

    p = add("xi", cmd_xi, "all z mod p^m with p^m | Q(z, y, n)")
    for flag in ("--y", "--p", "--n", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--r", type=int)

    p = add("crt", cmd_crt, "composite witness via the Chinese remainder theorem")
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--part", action="append", required=True, metavar="p,m[,c]")

    p = add("sum", cmd_sum, "sum of r^(k c p^(m-1)) modulo p^m")
    for flag in ("--p", "--n", "--m", "--c"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--r", type=int)

    p = add("primroot", cmd_primroot, "smallest primitive root modulo p^2")
    p.add_argument("p", type=int)

    p = add("q", cmd_q, "evaluate and factor Q(z, y, n)")
    p.add_argument("z", type=int)
    p.add_argument("y", type=int)
    p.add_argument("n", type=int)

    p = add("factor", cmd_factor, "factor an integer")
    p.add_argument("N", type=int)

    add("table1", cmd_table1, "reproduce the published decomposition table")

    p = add("scan", cmd_scan, "search for Q(z, y, n) without a prime factor above z")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--zmax", type=int, required=True)
    p.add_argument("--tsv", dest="format", action="store_const", const="tsv")
    p.add_argument("--json", dest="format", action="store_const", const="json")

    add("goormaghtigh", cmd_goormaghtigh, "check the two Goormaghtigh identities")

    p = add("mersenne", cmd_mersenne, "check n | q - 1 for primes q dividing 2^n - 1")
    p.add_argument("--n", type=int, required=True)

    p = add("probe", cmd_probe, "search for perfect powers among Q(z, y, n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ymax", type=int, required=True)
    p.add_argument("--zmax", type=int, required=True)
    p.add_argument("--diff", type=int, help="only pairs with z - y equal to this")

    p = add("verify", cmd_verify, "re-run every published worked example")
    p.add_argument("--only", action="append", choices=sorted(FIXTURES))
    return parser


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.data, indent=2)
    if fmt == "tsv" and out.tsv is not None:
        return "\n".join(out.tsv)
    return "\n".join(out.human)


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        args.threads = args.threads if args.threads is not None else _env_int(ENV_THREADS, 1)
        if args.rho_budget is None:
            args.rho_budget = _env_int(ENV_RHO_BUDGET, DEFAULT_RHO_BUDGET)
        out = args.func(args)
    except InputError as exc:
        print(f"qforms {args.command}: {exc}", file=sys.stderr)
        return 2
    except (TheoryViolation, TableMismatch, EffortExceeded) as exc:
        print(f"qforms {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except QFormsError as exc:
        print(f"qforms {args.command}: {exc}", file=sys.stderr)
        return 1
    print(render(out, args.format))
    return out.code


def main() -> None:
    sys.exit(dispatch())
