#!/usr/bin/env python3
"""Regenerates data/sample/shop_sessions.csv: synthetic web-shop sessions.

Two visitor populations walk different Markov chains over the same event
types, so the prefix/suffix matrix and the mined patterns show contrasts.
Output is deterministic for a given seed.
"""
import argparse
import csv
import random

EVENTS = ["Home", "Search", "View", "Compare", "Review", "AddToCart",
          "Checkout", "Purchase", "Support", "Leave"]

BROWSER = {
    "Start": {"Home": 6, "Search": 3, "View": 2},
    "Home": {"Search": 4, "View": 4, "Leave": 2, "Support": 1},
    "Search": {"View": 6, "Search": 2, "Leave": 2},
    "View": {"View": 4, "Compare": 2, "Review": 2, "Leave": 3, "AddToCart": 1},
    "Compare": {"View": 3, "Review": 2, "Leave": 2},
    "Review": {"View": 2, "Leave": 3, "Compare": 1},
    "AddToCart": {"View": 2, "Leave": 3, "Checkout": 1},
    "Checkout": {"Leave": 2, "Purchase": 1},
    "Support": {"Home": 1, "Leave": 2},
}

BUYER = {
    "Start": {"Search": 5, "Home": 3, "View": 2},
    "Home": {"Search": 5, "View": 3},
    "Search": {"View": 7, "Search": 1},
    "View": {"AddToCart": 5, "View": 2, "Review": 1, "Compare": 1},
    "Compare": {"AddToCart": 3, "View": 1},
    "Review": {"AddToCart": 3, "View": 1},
    "AddToCart": {"Checkout": 6, "View": 2},
    "Checkout": {"Purchase": 8, "Support": 1},
    "Support": {"Checkout": 1, "Leave": 1},
    "Purchase": {"Leave": 1},
}


def walk(rng, chain, max_len=14):
    state, out = "Start", []
    while len(out) < max_len:
        options = chain.get(state)
        if not options:
            break
        state = rng.choices(list(options), weights=list(options.values()))[0]
        out.append(state)
        if state in ("Leave", "Purchase") and rng.random() < 0.8:
            break
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/sample/shop_sessions.csv")
    ap.add_argument("--sessions", type=int, default=600)
    ap.add_argument("--seed", type=int, default=20181021)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rows = []
    t0 = 1_540_000_000_000
    for i in range(args.sessions):
        chain, segment = (BUYER, "buyer") if rng.random() < 0.35 else (BROWSER, "browser")
        t = t0 + i * 3_600_000
        for ev in walk(rng, chain):
            t += rng.randint(1, 90) * 1000
            rows.append((f"v{i + 1:04d}", ev, t, segment))
    rng.shuffle(rows)  # ingestion restores order from timestamps
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["visitor", "event", "time", "segment"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
