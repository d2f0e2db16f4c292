"""Degree-signature-preserving link switching.

The null model keeps, for every node, its unidirectional out-degree,
unidirectional in-degree and number of mutual partners, and keeps the
graph simple.  Randomization runs a Markov chain over the graphs with
the same signature using three moves:

* unidirectional pair switch: a->b, c->d  =>  a->d, c->b
* mutual pair switch: dyads {p,q}, {r,s} are recombined into one of the
  two other pairings, chosen by a coin flip
* loop switch: a three-cycle of unidirectional links is reversed

Each attempt picks a first slot uniformly among all u + m slots (u
unidirectional links plus m mutual dyads, so link types are hit in
proportion to their multiplicity) and a partner slot uniformly within
the same type.  Picks that would break the signature, create a parallel
or antiparallel duplicate, or hit the same slot twice are rejected;
rejected attempts still advance the chain clock.  Every unordered move
is reachable by the same number of ordered picks in both directions, so
the chain is symmetric and converges to the uniform distribution over
the reachable signature class.

Randomness is consumed in a fixed pattern (four draws per attempt,
taken in chunks) so a run is fully determined by its stream.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .graph import Graph

_CHUNK = 4096


@dataclass(frozen=True)
class RngStream:
    """Reproducible random source: a root seed plus a substream path.

    Streams with different paths are statistically independent, and the
    same (seed, path) always yields the same generator, regardless of
    which process or worker asks for it.
    """

    seed: int
    path: tuple[int, ...] = ()

    def child(self, *steps: int) -> "RngStream":
        return RngStream(self.seed, self.path + steps)

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.PCG64(ss))


@dataclass
class SwitchStats:
    """Outcome tally of one or more randomization runs."""

    attempts: int = 0
    uni_pair_switches: int = 0
    mutual_pair_switches: int = 0
    loop_switches: int = 0
    rejected_self_pick: int = 0
    rejected_shared_node: int = 0
    rejected_existing_link: int = 0
    rejected_no_loop: int = 0
    rejected_no_links: int = 0

    @property
    def switches(self) -> int:
        return self.uni_pair_switches + self.mutual_pair_switches + self.loop_switches

    @property
    def rejected(self) -> int:
        return (
            self.rejected_self_pick
            + self.rejected_shared_node
            + self.rejected_existing_link
            + self.rejected_no_loop
            + self.rejected_no_links
        )

    def __add__(self, other: "SwitchStats") -> "SwitchStats":
        return SwitchStats(
            *(getattr(self, f.name) + getattr(other, f.name) for f in fields(self))
        )


def randomize(g: Graph, attempts: int, rng: RngStream) -> tuple[Graph, SwitchStats]:
    """Run `attempts` switching attempts starting from g.

    Returns the resulting graph (a new object; g is untouched) and the
    attempt tally.  attempts counts proposals, not accepted moves.
    """
    if attempts < 0:
        raise ValueError("attempts must be >= 0")
    stats = SwitchStats(attempts=attempts)
    u = g.num_uni_edges
    m = g.num_mutual_dyads
    if u + m == 0 or attempts == 0:
        if u + m == 0:
            stats.rejected_no_links = attempts
        return Graph(g.labels, g.directed_edges()), stats

    uni = list(g.unidirectional_edges())
    mut = list(g.mutual_dyads())
    out = [set(g.out_neighbors(v)) for v in range(g.num_nodes)]
    pos = {e: k for k, e in enumerate(uni)}
    gen = rng.generator()

    total = u + m
    done = 0
    while done < attempts:
        n = min(_CHUNK, attempts - done)
        # fixed draw pattern per attempt: slot, both partner slots, coin
        slots = gen.integers(0, total, size=n).tolist()
        e2us = gen.integers(0, u, size=n).tolist() if u else None
        e2ms = gen.integers(0, m, size=n).tolist() if m else None
        bits = gen.integers(0, 2, size=n).tolist()

        for k in range(n):
            s1 = slots[k]
            if s1 < u:
                s2 = e2us[k]
                if s2 == s1:
                    stats.rejected_self_pick += 1
                    continue
                a, b = uni[s1]
                c, d = uni[s2]
                if a == c or a == d or b == c or b == d:
                    # shared node: the only legal move is reversing a
                    # three-cycle, which needs a head-to-tail pair
                    if b == c:
                        x, h, y = a, b, d
                        slot_xh, slot_hy = s1, s2
                    elif d == a:
                        x, h, y = c, d, b
                        slot_xh, slot_hy = s2, s1
                    else:
                        stats.rejected_no_loop += 1
                        continue
                    if x in out[y] and y not in out[x]:
                        out[x].remove(h)
                        out[h].remove(y)
                        out[y].remove(x)
                        out[h].add(x)
                        out[y].add(h)
                        out[x].add(y)
                        slot_yx = pos.pop((y, x))
                        del pos[(x, h)]
                        del pos[(h, y)]
                        uni[slot_xh] = (h, x)
                        uni[slot_hy] = (y, h)
                        uni[slot_yx] = (x, y)
                        pos[(h, x)] = slot_xh
                        pos[(y, h)] = slot_hy
                        pos[(x, y)] = slot_yx
                        stats.loop_switches += 1
                    else:
                        stats.rejected_no_loop += 1
                elif d in out[a] or a in out[d] or b in out[c] or c in out[b]:
                    stats.rejected_existing_link += 1
                else:
                    out[a].remove(b)
                    out[c].remove(d)
                    out[a].add(d)
                    out[c].add(b)
                    del pos[(a, b)]
                    del pos[(c, d)]
                    uni[s1] = (a, d)
                    uni[s2] = (c, b)
                    pos[(a, d)] = s1
                    pos[(c, b)] = s2
                    stats.uni_pair_switches += 1
            else:
                t1 = s1 - u
                t2 = e2ms[k]
                if t2 == t1:
                    stats.rejected_self_pick += 1
                    continue
                p, q = mut[t1]
                r, s = mut[t2]
                if p == r or p == s or q == r or q == s:
                    stats.rejected_shared_node += 1
                    continue
                if bits[k]:
                    n1, n2 = (p, r), (q, s)
                else:
                    n1, n2 = (p, s), (q, r)
                if (
                    n1[1] in out[n1[0]]
                    or n1[0] in out[n1[1]]
                    or n2[1] in out[n2[0]]
                    or n2[0] in out[n2[1]]
                ):
                    stats.rejected_existing_link += 1
                    continue
                out[p].remove(q)
                out[q].remove(p)
                out[r].remove(s)
                out[s].remove(r)
                for x, y in (n1, n2):
                    out[x].add(y)
                    out[y].add(x)
                mut[t1] = n1 if n1[0] < n1[1] else (n1[1], n1[0])
                mut[t2] = n2 if n2[0] < n2[1] else (n2[1], n2[0])
                stats.mutual_pair_switches += 1
        done += n

    edges = list(uni)
    for p, q in mut:
        edges.append((p, q))
        edges.append((q, p))
    return Graph(g.labels, edges), stats


def verify_signature(a: Graph, b: Graph) -> bool:
    """True when both graphs have identical labels and per-node
    (uni-out, uni-in, mutual) degree signatures."""
    if a.labels != b.labels:
        return False
    return all(
        a.degree_signature(v) == b.degree_signature(v) for v in range(a.num_nodes)
    )
