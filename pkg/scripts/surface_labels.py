"""Search diagonal labels on small closed surfaces and tabulate the outcome.

    python scripts/surface_labels.py [--lo -4] [--hi 4]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from duncehat import construct as cons
from duncehat import delta


@dataclass(frozen=True)
class Row:
    name: str
    chi: int
    found: bool
    explored: int
    seconds: float


SURFACES = {
    "sphere": [("a", "+"), ("a", "-"), ("b", "+"), ("b", "-")],
    "projective plane": [("a", "+"), ("b", "+"), ("a", "+"), ("b", "+")],
    "torus": [("a", "+"), ("b", "+"), ("a", "-"), ("b", "-")],
    "klein bottle": [("a", "+"), ("b", "+"), ("a", "-"), ("b", "+")],
    "genus 2": [("a", "+"), ("b", "+"), ("a", "-"), ("b", "-"), ("c", "+"), ("d", "+"), ("c", "-"), ("d", "-")],
    "3 cross-caps": [("a", "+"), ("a", "+"), ("b", "+"), ("b", "+"), ("c", "+"), ("c", "+")],
}


def run(lo: int, hi: int) -> list[Row]:
    rows = []
    for name, word in SURFACES.items():
        cx = delta.polygon_surface(word)
        t0 = time.perf_counter()
        res = cons.search_combinatorial_labels(cx, lo, hi)
        rows.append(Row(name, delta.euler_characteristic(cx), res.found, res.explored,
                        time.perf_counter() - t0))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=-4)
    ap.add_argument("--hi", type=int, default=4)
    args = ap.parse_args()
    print(f"labels in [{args.lo}, {args.hi}]")
    print(f"{'surface':<18}{'chi':>4}  {'labeling':<9}{'nodes':>8}{'seconds':>9}")
    for r in run(args.lo, args.hi):
        print(f"{r.name:<18}{r.chi:>4}  {'yes' if r.found else 'no':<9}{r.explored:>8}{r.seconds:>9.2f}")


if __name__ == "__main__":
    main()
