"""Regenerate exampleNetwork.txt.

A ~400-node, ~1000-link directed network with skewed degrees, a block
of planted feed-forward loops and three-cycles, and a layer of mutual
dyads, so the bundled demo produces visibly structured Z-scores.  The
seed is fixed; rerunning reproduces the committed file byte for byte.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

N = 400
UNI_TARGET = 810
MUTUAL_TARGET = 95
FFL_TRIPLES = 60
CYCLE_TRIPLES = 40
SEED = 20240501


def main() -> None:
    rng = np.random.default_rng(SEED)
    weights = 1.0 / np.arange(1, N + 1) ** 0.7
    weights /= weights.sum()

    out: dict[int, set[int]] = {v: set() for v in range(N)}

    def dyad_free(a: int, b: int) -> bool:
        return b not in out[a] and a not in out[b]

    def add(a: int, b: int) -> bool:
        if a == b or b in out[a]:
            return False
        out[a].add(b)
        return True

    edges = 0
    for _ in range(FFL_TRIPLES):
        a, b, c = rng.choice(N, size=3, replace=False, p=weights)
        edges += add(a, b) + add(a, c) + add(b, c)
    for _ in range(CYCLE_TRIPLES):
        a, b, c = rng.choice(N, size=3, replace=False, p=weights)
        if dyad_free(a, b) and dyad_free(b, c) and dyad_free(c, a):
            edges += add(a, b) + add(b, c) + add(c, a)

    while edges < UNI_TARGET:
        a = rng.choice(N, p=weights)
        b = rng.choice(N, p=weights)
        if a != b and dyad_free(a, b):
            edges += add(a, b)

    mutual = 0
    while mutual < MUTUAL_TARGET:
        a = rng.choice(N, p=weights)
        b = rng.choice(N, p=weights)
        if a != b and dyad_free(a, b):
            add(a, b)
            add(b, a)
            mutual += 1

    lines = [f"{a + 1}\t{b + 1}" for a in range(N) for b in sorted(out[a])]
    order = rng.permutation(len(lines))
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("exampleNetwork.txt")
    target.write_text("".join(lines[k] + "\n" for k in order), encoding="utf-8")

    from nospam import load_edge_list

    g, _ = load_edge_list(target)
    print(f"{target}: {g.num_nodes} nodes, {g.num_uni_edges} unidirectional, "
          f"{g.num_mutual_dyads} mutual ({g.num_directed_edges} directed links)")


if __name__ == "__main__":
    main()
