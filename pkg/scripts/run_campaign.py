#!/usr/bin/env python3
"""Run one or more experiment configs and print a one-line summary per config.

    python scripts/run_campaign.py scripts/configs/*.json
    python scripts/run_campaign.py scripts/configs/thm13_n36.json --results /tmp/out
"""
import argparse
import json
import logging
from pathlib import Path

from seqembed.harness.experiment import ExperimentConfig, run_experiment, summarize


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("configs", nargs="+", type=Path)
    ap.add_argument("--results", type=Path, default=None,
                    help="directory for CSV output (overrides the directory part of each config's 'out')")
    ap.add_argument("--trials", type=int, default=None, help="override the trial count of every config")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    for path in args.configs:
        raw = json.loads(path.read_text())
        if args.trials is not None:
            raw["trials"] = args.trials
        out = Path(raw.get("out") or f"results/{path.stem}.csv")
        if args.results is not None:
            out = args.results / out.name
        raw["out"] = str(out)
        cfg = ExperimentConfig.from_dict(raw)
        s = summarize(run_experiment(cfg))
        print(f"{path.name:22s} mode={cfg.mode:9s} n={cfg.n:3d} trials={s['trials']:3d} "
              f"success={s['pipeline_success_rate']:.2f} valid={s['maps_valid']}/{s['maps_checked']} "
              f"oracle={s['oracle']} failed_at={s['failed_stage']} -> {out}")


if __name__ == "__main__":
    main()
