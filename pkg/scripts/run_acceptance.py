"""Run the bundled acceptance config and write JSON reports plus a CSV summary.

    python scripts/run_acceptance.py --out reports/acceptance
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from lpzeros.harness.cases import timed_run
from lpzeros.harness.sweep import exit_code, load_config, summary_csv, write_reports

ROOT = Path(__file__).resolve().parents[1]


@dataclass
class RunConfig:
    config: Path = ROOT / "configs" / "acceptance.yaml"
    out: Path = ROOT / "reports" / "acceptance"


def main(argv=None) -> int:
    defaults = RunConfig()
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--config", type=Path, default=defaults.config)
    parser.add_argument("--out", type=Path, default=defaults.out)
    cfg = RunConfig(**vars(parser.parse_args(argv)))

    reports = []
    start = time.perf_counter()
    for entry in load_config(cfg.config):
        report, seconds = timed_run(entry.case)
        reports.append(report)
        print(f"{entry.case_id:32s} {report.verdict.value:13s} "
              f"predicted={report.predicted} observed={report.primary_observed}  {seconds:6.1f} s",
              flush=True)
    write_reports(reports, cfg.out)
    print(f"\n{len(reports)} cases in {time.perf_counter() - start:.0f} s; reports in {cfg.out}")
    sys.stdout.write(summary_csv(reports))
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
