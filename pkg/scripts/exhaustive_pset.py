#!/usr/bin/env python3
"""Exhaustive pointed-set campaign, sharded by object sizes.

Every isomorphism class of diagrams with objects of size <= --max-size is
checked once and weighted by its orbit size.  A shard covers all size tuples
sharing their first three entries; shards are written to --out as they
finish, so an interrupted run resumes where it stopped.  At the end they are
merged into summary.json.

    python3 scripts/exhaustive_pset.py nomura1 --max-size 4 --out results/nomura1-pset4
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from lambek_chase.harness import enumerate as en
from lambek_chase.harness.campaign import SUITES, CampaignSpec, run_campaign, _SHAPES


def shard_name(prefix) -> str:
    return "s" + "".join(map(str, prefix)) + ".json"


def shards(nobjects: int, max_size: int) -> dict[tuple, list[tuple]]:
    out: dict[tuple, list[tuple]] = {}
    for sizes in en.size_tuples(nobjects, max_size):
        out.setdefault(tuple(sizes[:3]), []).append(tuple(sizes))
    return out


def run_shard(suite: str, max_size: int, tuples) -> dict:
    t = time.time()
    d = {"summary": {"pass": 0, "skip": 0, "fail": 0, "labelled": 0}, "trials": []}
    for sizes in tuples:
        spec = CampaignSpec(suite, "pset", exhaustive=True, max_size=max_size, sizes=sizes,
                            record_trials=False)
        rep = run_campaign(spec).as_dict()
        for k in d["summary"]:
            d["summary"][k] += rep["summary"][k]
        d["trials"] += rep["trials"]
    d["seconds"] = round(time.time() - t, 2)
    return d


def run(suite: str, max_size: int, out: Path, quiet: bool = False) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    groups = shards(_SHAPES[SUITES[suite].shape].nobjects, max_size)
    t0 = time.time()
    for i, (prefix, tuples) in enumerate(groups.items()):
        path = out / shard_name(prefix)
        if path.exists():
            continue
        d = run_shard(suite, max_size, tuples)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(d, sort_keys=True, indent=1) + "\n")
        tmp.replace(path)
        if not quiet:
            s = d["summary"]
            print(f"[{i + 1}/{len(groups)}] {prefix} classes {s['pass'] + s['skip'] + s['fail']} "
                  f"fail {s['fail']} ({d['seconds']}s, total {time.time() - t0:.0f}s)", flush=True)
    return merge(suite, max_size, out, groups)


def merge(suite: str, max_size: int, out: Path, groups) -> dict:
    total = {"pass": 0, "skip": 0, "fail": 0, "labelled": 0, "classes": 0, "seconds": 0.0}
    failures = []
    missing = []
    for prefix in groups:
        path = out / shard_name(prefix)
        if not path.exists():
            missing.append(list(prefix))
            continue
        d = json.loads(path.read_text())
        s = d["summary"]
        for k in ("pass", "skip", "fail", "labelled"):
            total[k] += s[k]
        total["classes"] += s["pass"] + s["skip"] + s["fail"]
        total["seconds"] += d["seconds"]
        failures += d.get("trials", [])
    total["seconds"] = round(total["seconds"], 1)
    summary = {"suite": suite, "backend": "pset", "max_size": max_size, "totals": total,
               "complete": not missing, "missing": missing, "failures": failures,
               "ok": not missing and total["fail"] == 0}
    (out / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return summary


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("suite", choices=sorted(n for n, s in SUITES.items() if s.shape in ("pair", "two-square", "five-column")))
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--quiet", action="store_true")
    a = ap.parse_args(argv)
    s = run(a.suite, a.max_size, a.out, a.quiet)
    print(json.dumps(s["totals"], sort_keys=True))
    print("OK" if s["ok"] else ("INCOMPLETE" if not s["complete"] else "FAILED"))
    return 0 if s["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
