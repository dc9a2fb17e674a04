#!/usr/bin/env python3
"""Survey how far the exact prime density sits above the product bound.

Draws random moduli lists, computes exact density and both bounds, and prints
the lists with the largest gap plus a histogram of exact/bound ratios.
"""
import argparse
import random
from collections import Counter

from resavoid.density import exact_relative_density, theorem2_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--max-a", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--top", type=int, default=10)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.trials):
        moduli = tuple(rng.randint(3, args.max_a) for _ in range(rng.randint(1, args.max_k)))
        exact = exact_relative_density(moduli)
        bound = theorem2_bound(moduli)
        assert bound <= exact, moduli
        rows.append((exact - bound, moduli, exact, bound, theorem2_bound(moduli, reduced=True)))

    rows.sort(reverse=True)
    print(f"{'moduli':28s} {'exact':>14s} {'bound':>14s} {'reduced':>14s} {'gap':>8s}")
    for gap, moduli, exact, bound, red in rows[: args.top]:
        print(f"{str(moduli):28s} {str(exact):>14s} {str(bound):>14s} {str(red):>14s} {float(gap):8.4f}")

    tight = sum(1 for r in rows if r[0] == 0)
    print(f"\nbound attained exactly in {tight}/{len(rows)} lists")
    hist = Counter(min(int(float(r[0]) * 20), 19) for r in rows)
    for b in range(20):
        if hist[b]:
            print(f"gap in [{b / 20:.2f}, {(b + 1) / 20:.2f}): {hist[b]}")


if __name__ == "__main__":
    main()
