"""Tabulate dim HH^{n,s} of a Koszul-verified quadratic algebra over a box of bidegrees."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from f2hoch.algebra import build_table, builtin
from f2hoch.hochschild import hh_dimension, koszul_window
from f2hoch.resolutions import check_koszul_truncated, koszul_spaces


@dataclass
class SweepConfig:
    algebra: str = "paper"
    n_max: int = 4
    s_min: int = -4
    s_max: int = 2


def sweep(cfg: SweepConfig) -> dict[tuple[int, int], int]:
    D = cfg.n_max + 1 + cfg.s_max
    t = build_table(builtin(cfg.algebra), max(D, cfg.n_max + 2))
    kd = koszul_spaces(t, cfg.n_max + 2)
    verdict = check_koszul_truncated(t, kd, cfg.n_max + 2)
    if not verdict.passed:
        raise SystemExit(f"not Koszul in the needed range: {verdict.witness}")
    out = {}
    for n in range(1, cfg.n_max + 1):
        for s in range(max(cfg.s_min, -n), cfg.s_max + 1):
            out[n, s] = hh_dimension(koszul_window(t, kd, n, s))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in asdict(SweepConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    ap.add_argument("--json", action="store_true")
    cfg = SweepConfig(**{k: v for k, v in vars(ap.parse_args()).items() if k != "json"})
    table = sweep(cfg)
    if vars(ap.parse_args())["json"]:
        print(json.dumps({"config": asdict(cfg),
                          "dims": {f"{n},{s}": d for (n, s), d in table.items()}}, indent=2))
        return
    ss = range(cfg.s_min, cfg.s_max + 1)
    print("n\\s " + "".join(f"{s:>5}" for s in ss))
    for n in range(1, cfg.n_max + 1):
        row = "".join(f"{table[n, s]:>5}" if (n, s) in table else "    ." for s in ss)
        print(f"{n:>3} " + row)


if __name__ == "__main__":
    main()
