"""Directed-graph data model and edge-list ingestion.

A graph is simple (no self-loops, no duplicate directed edges) and is
stored with dense internal node indices ``0..N-1``; the integer labels
from the input file are kept alongside.  Edges are split by dyad type:
a *unidirectional* edge ``a -> b`` has no companion ``b -> a``, while a
*mutual* dyad carries both directions.  Graphs are immutable after
construction and safe to share across worker processes.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence


class DyadState(IntEnum):
    """Relation between an ordered node pair (a, b)."""

    NONE = 0
    FORWARD = 1   # a -> b only
    BACKWARD = 2  # b -> a only
    MUTUAL = 3    # both directions

    @property
    def letter(self) -> str:
        return "NFBM"[self]


#: reverse_state[s] swaps FORWARD/BACKWARD and fixes NONE/MUTUAL.
REVERSE_STATE = (
    DyadState.NONE,
    DyadState.BACKWARD,
    DyadState.FORWARD,
    DyadState.MUTUAL,
)


def reverse_state(state: DyadState) -> DyadState:
    """State of (b, a) given the state of (a, b)."""
    return REVERSE_STATE[state]


class ParseError(ValueError):
    """Malformed edge-list line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class IngestReport:
    """Bookkeeping from one edge-list parse."""

    lines_read: int = 0
    lines_skipped: int = 0        # blank or '#'-comment lines
    edges_kept: int = 0
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0
    extra_field_lines: int = 0    # lines whose trailing fields were ignored

    def warnings(self) -> list[str]:
        out = []
        if self.self_loops_dropped:
            out.append(f"dropped {self.self_loops_dropped} self-loop(s)")
        if self.duplicates_dropped:
            out.append(f"dropped {self.duplicates_dropped} duplicate edge(s)")
        return out


class Graph:
    """Immutable simple directed graph with per-dyad-type adjacency.

    Parameters
    ----------
    labels:
        External integer label for each internal index.
    edges:
        Directed edges as (source, target) internal index pairs.
        Self-loops and duplicates are rejected here; ingestion filters
        them out before construction.
    """

    def __init__(self, labels: Sequence[int], edges: Iterable[tuple[int, int]]):
        self.labels: tuple[int, ...] = tuple(labels)
        n = len(self.labels)
        self.index_of: dict[int, int] = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index_of) != n:
            raise ValueError("node labels must be distinct")

        out: list[set[int]] = [set() for _ in range(n)]
        edge_list: list[tuple[int, int]] = []
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for {n} nodes")
            if a == b:
                raise ValueError(f"self-loop at node index {a}")
            if b in out[a]:
                raise ValueError(f"duplicate edge ({a}, {b})")
            out[a].add(b)
            edge_list.append((a, b))

        uni: list[tuple[int, int]] = []
        mut: list[tuple[int, int]] = []
        seen_mut: set[tuple[int, int]] = set()
        und: list[set[int]] = [set() for _ in range(n)]
        for a, b in edge_list:
            und[a].add(b)
            und[b].add(a)
            if a in out[b]:
                key = (a, b) if a < b else (b, a)
                if key not in seen_mut:
                    seen_mut.add(key)
                    mut.append(key)
            else:
                uni.append((a, b))

        uo = [0] * n
        ui = [0] * n
        mu = [0] * n
        for a, b in uni:
            uo[a] += 1
            ui[b] += 1
        for a, b in mut:
            mu[a] += 1
            mu[b] += 1

        self._out = out
        self._und = und
        self._uni = uni
        self._mut = mut
        self._uni_out = uo
        self._uni_in = ui
        self._mutual = mu

    # -- size ---------------------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_uni_edges(self) -> int:
        return len(self._uni)

    @property
    def num_mutual_dyads(self) -> int:
        return len(self._mut)

    @property
    def num_directed_edges(self) -> int:
        return len(self._uni) + 2 * len(self._mut)

    # -- queries ------------------------------------------------------------

    def dyad_state(self, a: int, b: int) -> DyadState:
        """State of the ordered pair (a, b) of internal indices."""
        if a == b:
            raise ValueError("dyad state is undefined for a node paired with itself")
        f = b in self._out[a]
        r = a in self._out[b]
        return DyadState(f + 2 * r)

    def degree_signature(self, a: int) -> tuple[int, int, int]:
        """(unidirectional out, unidirectional in, mutual partner) counts."""
        return (self._uni_out[a], self._uni_in[a], self._mutual[a])

    def out_neighbors(self, a: int) -> set[int]:
        """Successors of a.  Internal set, treat as read-only."""
        return self._out[a]

    def undirected_neighbors(self, a: int) -> set[int]:
        """Nodes sharing any dyad with a.  Internal set, treat as read-only."""
        return self._und[a]

    def unidirectional_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._uni)

    def mutual_dyads(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._mut)

    def directed_edges(self) -> Iterator[tuple[int, int]]:
        """All directed edges; mutual dyads contribute both directions."""
        yield from self._uni
        for a, b in self._mut:
            yield (a, b)
            yield (b, a)

    def directed_edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.directed_edges())

    def labeled_edge_set(self) -> frozenset[tuple[int, int]]:
        labs = self.labels
        return frozenset((labs[a], labs[b]) for a, b in self.directed_edges())

    def connected_dyads(self) -> Iterator[tuple[int, int, DyadState]]:
        """Unordered connected dyads as (i, j, state(i, j)) with i < j."""
        for a, b in self._uni:
            if a < b:
                yield (a, b, DyadState.FORWARD)
            else:
                yield (b, a, DyadState.BACKWARD)
        for a, b in self._mut:
            yield (a, b, DyadState.MUTUAL)

    # -- serialization ------------------------------------------------------

    def edge_lines(self) -> Iterator[str]:
        """Edge-list lines that parse back to the same labeled edge set."""
        labs = self.labels
        for a, b in self.directed_edges():
            yield f"{labs[a]}\t{labs[b]}"


def parse_edge_list(lines: Iterable[str]) -> tuple[Graph, IngestReport]:
    """Parse edge-list lines into a graph.

    Each non-skipped line must start with two whitespace-separated
    integer fields (source, target); trailing fields such as weights are
    ignored.  Blank lines and lines starting with ``#`` are skipped.
    Self-loops and repeated directed edges are dropped and counted in
    the report.  Node labels are mapped to dense internal indices in
    order of first appearance on a kept edge.

    Raises
    ------
    ParseError
        On a line with fewer than two fields or a non-integer node field.
    """
    report = IngestReport()
    labels: list[int] = []
    index_of: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    for line_no, raw in enumerate(lines, start=1):
        report.lines_read += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            report.lines_skipped += 1
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(line_no, f"expected two node fields, found {len(fields)}")
        try:
            src = int(fields[0])
            dst = int(fields[1])
        except ValueError:
            raise ParseError(
                line_no, f"node labels must be integers, got {fields[0]!r} {fields[1]!r}"
            ) from None
        if len(fields) > 2:
            report.extra_field_lines += 1
        if src == dst:
            report.self_loops_dropped += 1
            continue
        if (src, dst) in seen:
            report.duplicates_dropped += 1
            continue
        seen.add((src, dst))
        for lab in (src, dst):
            if lab not in index_of:
                index_of[lab] = len(labels)
                labels.append(lab)
        edges.append((index_of[src], index_of[dst]))
        report.edges_kept += 1

    return Graph(labels, edges), report


def load_edge_list(path) -> tuple[Graph, IngestReport]:
    """Read and parse an edge-list file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh)
