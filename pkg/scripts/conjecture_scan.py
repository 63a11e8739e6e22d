#!/usr/bin/env python3
"""Scan Q(z, y, n) for coprime y < z and report rows with no prime factor above z.

    python scripts/conjecture_scan.py --n 3 5 7 --ymax 10 --zmax 40
    python scripts/conjecture_scan.py --n 3 --ymax 50 --zmax 200 --threads 4 --tsv scan.tsv
"""

from __future__ import annotations

import argparse
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from qforms.factor import DEFAULT_RHO_BUDGET
from qforms.scan import TSV_HEADER, conjecture_scan


@dataclass
class ScanConfig:
    exponents: list[int] = field(default_factory=lambda: [3, 5])
    y_max: int = 10
    z_max: int = 40
    threads: int = 1
    rho_budget: int = DEFAULT_RHO_BUDGET
    tsv: Path | None = None
    show: int = 20


def parse_args() -> ScanConfig:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--ymax", type=int, default=10)
    ap.add_argument("--zmax", type=int, default=40)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--rho-budget", type=int, default=DEFAULT_RHO_BUDGET)
    ap.add_argument("--tsv", type=Path, help="write every row here")
    ap.add_argument("--show", type=int, default=20, help="counterexamples to print per exponent")
    a = ap.parse_args()
    return ScanConfig(a.n, a.ymax, a.zmax, a.threads, a.rho_budget, a.tsv, a.show)


def main() -> None:
    cfg = parse_args()
    pool = ProcessPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    lines = [TSV_HEADER]
    try:
        for n in cfg.exponents:
            t0 = time.perf_counter()
            result = conjecture_scan(n, cfg.y_max, cfg.z_max, cfg.rho_budget, pool)
            dt = time.perf_counter() - t0
            bad = result.counterexamples
            print(
                f"n={n}: {len(result.rows)} rows, {len(bad)} counterexamples, "
                f"{len(result.incomplete)} undecided ({dt:.2f}s)"
            )
            for row in bad[: cfg.show]:
                print(f"  y={row.y} z={row.z} Q={row.q_value} = {row.factorization}")
            if len(bad) > cfg.show:
                print(f"  ... {len(bad) - cfg.show} more")
            lines.extend(row.tsv() for row in result.rows)
    finally:
        if pool is not None:
            pool.shutdown()
    if cfg.tsv is not None:
        cfg.tsv.write_text("\n".join(lines) + "\n")
        print(f"wrote {len(lines) - 1} rows to {cfg.tsv}")


if __name__ == "__main__":
    main()
