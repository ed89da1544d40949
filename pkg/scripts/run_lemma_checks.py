"""Run every reduction check over a sweep of random cubic graphs.

    python3 scripts/run_lemma_checks.py --sizes 4 6 8 --seeds 5
"""

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from mla.checks import run_checks
from mla.graph import gen_random_cubic


@dataclass
class SweepConfig:
    sizes: list[int] = field(default_factory=lambda: [4, 6, 8, 10])
    seeds: int = 5
    certify: bool = True


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for n in cfg.sizes:
        for seed in range(cfg.seeds):
            t0 = time.perf_counter()
            results = run_checks(gen_random_cubic(n, seed), certify=cfg.certify)
            failed = [f"{r.name}:{r.subject}" for r in results if not r.ok]
            rows.append({"n": n, "seed": seed, "checks": len(results), "failed": failed,
                         "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=SweepConfig().sizes)
    p.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    p.add_argument("--no-certify", action="store_true")
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    cfg = SweepConfig(a.sizes, a.seeds, not a.no_certify)
    rows = sweep(cfg)
    if a.json:
        print(json.dumps({"config": asdict(cfg), "runs": rows}))
    else:
        for r in rows:
            status = "ok" if not r["failed"] else "FAIL " + ", ".join(r["failed"])
            print(f"n={r['n']:<3} seed={r['seed']:<3} checks={r['checks']:<3} {r['seconds']:>7.2f}s  {status}")
    return 1 if any(r["failed"] for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
