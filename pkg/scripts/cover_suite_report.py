"""Expand a seeded suite of random covers and tabulate branch statistics.

    python3 scripts/cover_suite_report.py --seed 0 --count 100
"""
import argparse
import time
from collections import Counter
from dataclasses import dataclass, fields

from meroflat.covers import components, is_logarithmic, kappa_shift, newton_puiseux, pole_order, section_roundtrip
from meroflat.fixtures import CoverSuiteConfig, cover_suite


@dataclass(frozen=True)
class ReportConfig:
    seed: int = 0
    count: int = 100
    max_degree: int = 4
    min_exponent: int = -3


def run(cfg):
    t0 = time.perf_counter()
    covers = cover_suite(cfg.seed, CoverSuiteConfig(cfg.count, cfg.max_degree, cfg.min_exponent))
    built = time.perf_counter() - t0
    stats = Counter()
    pole_orders = Counter()
    for P in covers:
        branches = newton_puiseux(P)
        stats["branches"] += len(branches)
        stats["inexact branches"] += sum(b.guaranteed_valuation != float("inf") for b in branches)
        stats["ramified branches"] += sum(b.ramification > 1 for b in branches)
        Q, bounds = section_roundtrip(branches, with_bounds=True)
        stats["roundtrip failures"] += Q != P.truncated(bounds)
        for a, (C, _) in components(P, branches=branches).items():
            stats["components"] += 1
            stats["non-log after shift"] += not is_logarithmic(kappa_shift(C, a))
        pole_orders[pole_order(P)] += 1
    print(f"{cfg.count} covers built in {built:.1f}s, analysed in {time.perf_counter() - t0 - built:.1f}s")
    for key, value in stats.items():
        print(f"  {key:<22}{value}")
    print("  pole orders           " + ", ".join(f"N={n}: {k}" for n, k in sorted(pole_orders.items())))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(ReportConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    run(ReportConfig(**vars(parser.parse_args())))


if __name__ == "__main__":
    main()
