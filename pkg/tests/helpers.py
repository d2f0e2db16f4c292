"""Shared test utilities: random graph generation and an independent
brute-force enumerator of degree-signature classes."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from nospam import Graph


def random_graph(rng: np.random.Generator, n: int, density: float,
                 mutual_frac: float) -> Graph:
    """Simple digraph where each unordered pair independently carries a
    dyad with probability `density`, mutual with probability
    `mutual_frac`, else unidirectional with a random direction."""
    edges = []
    for a, b in combinations(range(n), 2):
        if rng.random() >= density:
            continue
        if rng.random() < mutual_frac:
            edges.append((a, b))
            edges.append((b, a))
        elif rng.random() < 0.5:
            edges.append((a, b))
        else:
            edges.append((b, a))
    return Graph(range(n), edges)


def signature_of(g: Graph) -> tuple[tuple[int, int, int], ...]:
    return tuple(g.degree_signature(v) for v in range(g.num_nodes))


def graph_key(g: Graph):
    return tuple(sorted(g.directed_edges()))


def enumerate_signature_class(n: int, sig) -> list[tuple[tuple[int, int], ...]]:
    """All simple digraphs on n nodes with the given per-node
    (uni-out, uni-in, mutual) signature, as sorted directed-edge
    tuples.  Backtracks over unordered dyads with degree pruning;
    independent of the package's graph machinery."""
    dyads = list(combinations(range(n), 2))
    ruo = [s[0] for s in sig]
    rui = [s[1] for s in sig]
    rmu = [s[2] for s in sig]
    remaining = [[d for d in range(len(dyads)) if v in dyads[d]] for v in range(n)]
    state = [0] * len(dyads)
    found: list[tuple[tuple[int, int], ...]] = []

    def feasible(k: int) -> bool:
        for v in range(n):
            need = ruo[v] + rui[v] + rmu[v]
            if min(ruo[v], rui[v], rmu[v]) < 0:
                return False
            if need > sum(1 for d in remaining[v] if d >= k):
                return False
        return True

    def emit() -> None:
        edges = []
        for (a, b), s in zip(dyads, state):
            if s == 1:
                edges.append((a, b))
            elif s == 2:
                edges.append((b, a))
            elif s == 3:
                edges.append((a, b))
                edges.append((b, a))
        found.append(tuple(sorted(edges)))

    def rec(k: int) -> None:
        if k == len(dyads):
            if all(ruo[v] == 0 and rui[v] == 0 and rmu[v] == 0 for v in range(n)):
                emit()
            return
        a, b = dyads[k]
        for s in range(4):
            state[k] = s
            if s == 1:
                ruo[a] -= 1
                rui[b] -= 1
            elif s == 2:
                ruo[b] -= 1
                rui[a] -= 1
            elif s == 3:
                rmu[a] -= 1
                rmu[b] -= 1
            if feasible(k + 1):
                rec(k + 1)
            if s == 1:
                ruo[a] += 1
                rui[b] += 1
            elif s == 2:
                ruo[b] += 1
                rui[a] += 1
            elif s == 3:
                rmu[a] += 1
                rmu[b] += 1
        state[k] = 0

    rec(0)
    return found
