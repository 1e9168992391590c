#!/usr/bin/env python3
"""Run every seeded random campaign at its full trial count and save the
reports (structured JSON) next to a one-line summary per run.

    python3 scripts/campaigns.py --out results/campaigns
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from lambek_chase.harness.campaign import CampaignSpec, run_campaign
from lambek_chase.harness.report import save_report

# (suite, backend, trials, seed)
RUNS = [
    ("axioms", "fgab", 1000, 1),
    ("homology-criterion", "fgab", 1000, 2),
    ("homology-oracle", "fgab", 500, 3),
    ("composition", "fgab", 500, 4),
    ("composition", "pset", 500, 4),
    ("lambek-oracle", "fgab", 500, 5),
    ("lambek-iso", "fgab", 1000, 6),
    ("nomura1", "fgab", 500, 7),
    ("nomura2", "fgab", 500, 8),
    ("kernel-row", "fgab", 400, 9),
    ("five-lemma", "fgab", 200, 9),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--only", metavar="SUITE", help="run just this suite")
    a = ap.parse_args(argv)
    a.out.mkdir(parents=True, exist_ok=True)
    ok = True
    for suite, backend, trials, seed in RUNS:
        if a.only and suite != a.only:
            continue
        t = time.time()
        rep = run_campaign(CampaignSpec(suite, backend, trials=trials, seed=seed, record_trials=False))
        save_report(rep, a.out / f"{suite}-{backend}.json")
        c = rep.counts
        print(f"{suite:20s} {backend:5s} pass {c['pass']:5d} skip {c['skip']:5d} fail {c['fail']:3d}"
              f"  {time.time() - t:6.1f} s", flush=True)
        ok &= rep.ok
    print("OK" if ok else "FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
