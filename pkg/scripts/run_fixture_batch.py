"""Run the seeded CLI fixture batch at several parallelism levels and compare the reports.

    python3 scripts/run_fixture_batch.py --seed 0 --jobs 1 2 4
"""
import argparse
import hashlib
import time
from collections import Counter
from dataclasses import dataclass

from meroflat.cli import emit_report, load_jobs, run_jobs
from meroflat.fixtures import fixture_batch


@dataclass(frozen=True)
class BatchConfig:
    seed: int = 0
    jobs: tuple = (1, 4)


def run(cfg):
    jobs = load_jobs(fixture_batch(cfg.seed))
    digests = {}
    for workers in cfg.jobs:
        t0 = time.perf_counter()
        results = run_jobs(jobs, workers=workers)
        report = emit_report(results)
        digests[workers] = hashlib.sha256(report.encode()).hexdigest()
        status = Counter(r["status"] for r in results)
        print(f"--jobs {workers}: {len(results)} results {dict(status)} in {time.perf_counter() - t0:.2f}s  sha256 {digests[workers][:16]}")
    print("identical" if len(set(digests.values())) == 1 else "REPORTS DIFFER")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, nargs="+", default=[1, 4])
    args = parser.parse_args()
    run(BatchConfig(args.seed, tuple(args.jobs)))


if __name__ == "__main__":
    main()
