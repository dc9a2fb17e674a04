#!/usr/bin/env python3
"""Write one convergence CSV per moduli list into an output directory.

    python scripts/convergence_table.py --limit 1e8 --out results/ 3 3,4 5,8 7,9,16
"""
import argparse
import pathlib
import time

from resavoid.cli import parse_int, parse_moduli
from resavoid.sieve import SieveConfig, convergence_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("moduli", nargs="+", type=parse_moduli)
    ap.add_argument("--limit", type=parse_int, default=10**7)
    ap.add_argument("--segment-size", type=parse_int, default=2**20)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    config = SieveConfig(args.limit, args.segment_size)
    for m in args.moduli:
        t0 = time.perf_counter()
        rep = convergence_report(m, config)
        name = "a_" + ("_".join(map(str, m.raw)) or "none") + ".csv"
        (args.out / name).write_text(rep.to_csv())
        dev = "n/a" if rep.deviation is None else f"{rep.deviation:.2e}"
        print(f"{name:24s} exact={rep.exact}  deviation={dev}  {rep.status}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
