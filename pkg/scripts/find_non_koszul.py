"""Random search for quadratic presentations whose Koszul complex is not exact.

Each hit is confirmed independently by the Hilbert series identity
``H_A(t) H_{A!}(-t) = 1``, which every Koszul algebra satisfies.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import asdict, dataclass

from f2hoch.algebra import QuadraticPresentation, build_table
from f2hoch.gf2 import GF2Matrix, kernel_basis
from f2hoch.resolutions import check_koszul_truncated, koszul_spaces


@dataclass
class SearchConfig:
    generators: int = 2
    trials: int = 200
    max_internal: int = 5
    seed: int = 0
    hits: int = 5


def koszul_dual(p: QuadraticPresentation) -> QuadraticPresentation:
    g = p.g
    rel = GF2Matrix(len(p.relations), g * g, tuple(p.relations))
    return QuadraticPresentation(p.generators, tuple(kernel_basis(rel).basis))


def series_defect(p: QuadraticPresentation, T: int) -> list[int]:
    h = build_table(p, T).hilbert_function()
    hd = build_table(koszul_dual(p), T).hilbert_function()
    return [sum(h[i] * hd[n - i] * (-1) ** (n - i) for i in range(n + 1)) - (n == 0)
            for n in range(T + 1)]


def search(cfg: SearchConfig):
    rng = random.Random(cfg.seed)
    g = cfg.generators
    names = tuple("abcdefgh"[:g])
    seen = set()
    for _ in range(cfg.trials):
        rels = [r for r in (rng.getrandbits(g * g) for _ in range(rng.randint(1, g * g - 1))) if r]
        if not rels:
            continue
        p = QuadraticPresentation(names, tuple(rels))
        if p.relations in seen:
            continue
        seen.add(p.relations)
        T = cfg.max_internal
        t = build_table(p, T)
        v = check_koszul_truncated(t, koszul_spaces(t, T), T)
        if not v.passed:
            yield p, v.witness, series_defect(p, T + 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in asdict(SearchConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    cfg = SearchConfig(**vars(ap.parse_args()))
    for k, (p, witness, defect) in enumerate(search(cfg)):
        if k >= cfg.hits:
            break
        rels = ", ".join(p.vector_label(r, 2) for r in p.relations)
        print(f"({rels}): {witness}; series defect {defect}")


if __name__ == "__main__":
    main()
