#!/usr/bin/env python3
"""Trace the vacancy counts (a_k, b_k) while components are spread over K_{a,b}.

Prints, per instance, whether every component was placed, whether a_k <= b_k
held at every step, and the extreme values of h*a_k - b_k.
"""
import argparse
import random

from seqembed.embed.phases import distribute_components
from seqembed.errors import Infeasible


def instance(rng, q, d):
    h = rng.randint(1, q)
    a = rng.randint(4 * (2 * q + 1) * d * d, 150)
    b = h * a
    cap = a + b - 4 * (2 * q + 1) * d * d
    comps, vol = [], 0
    while True:
        s = rng.randint(1, max(1, 2 * d * d // q))
        t = rng.randint(q * s, 2 * d * d)
        if vol + s + t > cap:
            return comps, a, b, h
        comps.append((s, t))
        vol += s + t


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    print("h\ta\tb\tcomps\tplaced\ta<=b\tmin(ha-b)\tmax(ha-b)")
    for _ in range(args.instances):
        comps, a, b, h = instance(rng, args.q, args.max_degree)
        try:
            trace = distribute_components(comps, a, b, h).trace
            placed = True
        except Infeasible as exc:
            trace, placed = exc.trace, False
        gap = [h * ak - bk for ak, bk in trace]
        held = all(ak <= bk for ak, bk in trace)
        print(f"{h}\t{a}\t{b}\t{len(comps)}\t{placed}\t{held}\t{min(gap)}\t{max(gap)}")


if __name__ == "__main__":
    main()
