#!/usr/bin/env python3
"""List primes whose smallest primitive root r fails modulo p^2, and the lift used instead.

    python scripts/lifting_failures.py --limit 100000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from qforms.factor import primes_below
from qforms.primroot import find_primitive_root_mod_p_squared


@dataclass
class LiftConfig:
    limit: int = 50_000
    verify_level: int = 3


def parse_args() -> LiftConfig:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--limit", type=int, default=50_000, help="scan odd primes below this")
    ap.add_argument("--verify-level", type=int, default=3, help="re-check each root modulo p^k")
    a = ap.parse_args()
    return LiftConfig(a.limit, a.verify_level)


def main() -> None:
    cfg = parse_args()
    t0 = time.perf_counter()
    primes = [p for p in primes_below(cfg.limit) if p > 2]
    failures = []
    for p in primes:
        cert = find_primitive_root_mod_p_squared(p)
        if not cert.verify(cfg.verify_level):
            raise SystemExit(f"root {cert.r} for {p} fails at level {cfg.verify_level}")
        rejected = [c for c, level, ok in cert.trace if level == 2 and not ok]
        if rejected:
            failures.append((p, rejected[0], cert.r))
    dt = time.perf_counter() - t0
    print("p\tsmallest_root\tlifted_root")
    for p, r, lifted in failures:
        print(f"{p}\t{r}\t{lifted}")
    print(f"# {len(failures)} of {len(primes)} odd primes below {cfg.limit} need the lift ({dt:.2f}s)")


if __name__ == "__main__":
    main()
