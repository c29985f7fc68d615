"""Cubic vertex-rooted acyclic family of depth 5 (about 1.3 million root
multisets).  Expected to take minutes to hours depending on the machine."""

from __future__ import annotations

import argparse
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from hallratio.pipeline import PipelineConfig, hall_ratio
from hallratio.rational import format_rational

REFERENCE = Fraction(29727802051155412, 11841961450578397)


@dataclass(frozen=True)
class StretchConfig:
    d: int = 3
    r: int = 5
    prune_mode: str = "weaker"


def run(cfg: StretchConfig) -> bool:
    t = time.perf_counter()
    res = hall_ratio(cfg.d, math.inf, cfg.r, "vertex", PipelineConfig(prune_mode=cfg.prune_mode, log=print))
    print(f"value {format_rational(res.value)} ~{float(res.value):.12f}")
    print(f"rows kept {res.kept} of {res.constraints} distinct, method {res.method}")
    print(f"certificate {'ok' if res.ok else res.self_check}, {time.perf_counter() - t:.1f}s")
    if (cfg.d, cfg.r) == (3, 5):
        print(f"matches reference: {res.value == REFERENCE}")
        return res.ok and res.value == REFERENCE
    return res.ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prune", default="weaker", choices=("weaker", "relative"))
    args = ap.parse_args()
    raise SystemExit(0 if run(StretchConfig(prune_mode=args.prune)) else 2)
