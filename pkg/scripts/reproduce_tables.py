"""Print the closed-form tables: Shearer recurrences, Bollobas lower bounds,
the triangle-free chi_f bound and the girth-7 greedy bound."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from hallratio.cli import main as cli_main


@dataclass(frozen=True)
class TablesConfig:
    fmt: str = "text"
    table3_deltas: str = "1:20,50,100,200,500,1000"
    thm7_deltas: str = "1:120"


def run(cfg: TablesConfig) -> int:
    worst = 0
    for name, extra in (
        ("table1", []),
        ("table2", []),
        ("table3", ["--delta", cfg.table3_deltas]),
        ("thm7", ["--delta", cfg.thm7_deltas]),
    ):
        print(f"== {name}", flush=True)
        worst = max(worst, cli_main(["table", name, "--format", cfg.fmt, *extra]))
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", default="text", choices=("text", "csv", "json"))
    args = ap.parse_args()
    sys.exit(run(TablesConfig(fmt=args.format)))
