"""Triad pattern catalog.

An ordered node triple (x, y, z) is described by the states of its
three dyads, packed into a 6-bit code::

    code = state(x, y) + 4 * state(x, z) + 16 * state(y, z)

There are 64 codes, of which 54 describe connected triads (at least two
dyads present).  Two quotients matter:

* *marked* classes keep node x distinguished and identify codes that
  differ only by swapping y and z.  The 54 connected codes fall into 30
  marked classes: the patterns a single node can sit in.
* *unmarked* classes identify codes under all six orderings of the
  triple.  The connected codes fall into 13 such classes: the classic
  connected-triad census.

Classes are numbered from 1 in ascending order of their smallest member
code; 0 is reserved for "disconnected" in the lookup tables.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from .graph import DyadState, REVERSE_STATE

NUM_CODES = 64


def pack_code(d_xy: int, d_xz: int, d_yz: int) -> int:
    return d_xy + 4 * d_xz + 16 * d_yz


def unpack_code(code: int) -> tuple[int, int, int]:
    return (code & 3, (code >> 2) & 3, (code >> 4) & 3)


def swap_yz(code: int) -> int:
    """Code of the same triad read as (x, z, y)."""
    a, b, c = unpack_code(code)
    return pack_code(b, a, REVERSE_STATE[c])


def ordering_codes(code: int) -> tuple[int, ...]:
    """Codes of the triad under all six orderings of (x, y, z).

    The order is (x,y,z), (x,z,y), (y,x,z), (y,z,x), (z,x,y), (z,y,x);
    entry k starts from the k-th permutation's first node, so entries
    0, 2 and 4 give the codes seen from x, y and z respectively.
    """
    a, b, c = unpack_code(code)
    r = REVERSE_STATE
    return (
        pack_code(a, b, c),              # (x, y, z)
        pack_code(b, a, r[c]),           # (x, z, y)
        pack_code(r[a], c, b),           # (y, x, z)
        pack_code(c, r[a], r[b]),        # (y, z, x)
        pack_code(r[b], r[c], a),        # (z, x, y)
        pack_code(r[c], r[b], r[a]),     # (z, y, x)
    )


def is_connected_code(code: int) -> bool:
    """A triad is connected iff at least two of its dyads are present."""
    a, b, c = unpack_code(code)
    return (a != 0) + (b != 0) + (c != 0) >= 2


def _is_connected_union_find(code: int) -> bool:
    parent = [0, 1, 2]

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    a, b, c = unpack_code(code)
    for state, (u, v) in ((a, (0, 1)), (b, (0, 2)), (c, (1, 2))):
        if state != 0:
            parent[find(u)] = find(v)
    return len({find(v) for v in range(3)}) == 1


@dataclass(frozen=True)
class TriadCatalog:
    """Lookup tables and representatives for both triad quotients."""

    #: code -> marked class id (1..30), 0 for disconnected codes
    marked_class: tuple[int, ...]
    #: code -> unmarked class id (1..13), 0 for disconnected codes
    unmarked_class: tuple[int, ...]
    #: marked class id - 1 -> smallest member code
    marked_reps: tuple[int, ...]
    #: unmarked class id - 1 -> smallest member code
    unmarked_reps: tuple[int, ...]
    #: marked class id - 1 -> number of member codes (1 or 2)
    marked_orbit_size: tuple[int, ...]
    #: unmarked class id - 1 -> number of member codes (divides 6)
    unmarked_orbit_size: tuple[int, ...]
    #: marked class id - 1 -> unmarked class id it belongs to
    marked_parent: tuple[int, ...]

    @property
    def num_codes(self) -> int:
        return NUM_CODES

    @property
    def num_connected_codes(self) -> int:
        return sum(1 for c in self.marked_class if c != 0)

    @property
    def num_marked_classes(self) -> int:
        return len(self.marked_reps)

    @property
    def num_unmarked_classes(self) -> int:
        return len(self.unmarked_reps)

    def classify_marked(self, code: int) -> Optional[int]:
        cls = self.marked_class[code]
        return cls if cls else None

    def classify_unmarked(self, code: int) -> Optional[int]:
        cls = self.unmarked_class[code]
        return cls if cls else None

    def marked_children(self, unmarked_id: int) -> tuple[int, ...]:
        """Marked classes whose codes belong to the given unmarked class."""
        return tuple(
            m + 1
            for m, parent in enumerate(self.marked_parent)
            if parent == unmarked_id
        )

    def code_letters(self, code: int) -> str:
        """Dyad states of a code as three letters from NFBM (xy, xz, yz)."""
        return "".join(DyadState(s).letter for s in unpack_code(code))


def build_catalog() -> TriadCatalog:
    connected = [is_connected_code(c) for c in range(NUM_CODES)]
    for code in range(NUM_CODES):
        assert connected[code] == _is_connected_union_find(code)

    marked_class = [0] * NUM_CODES
    marked_reps: list[int] = []
    marked_orbit: list[int] = []
    for code in range(NUM_CODES):
        if not connected[code] or marked_class[code]:
            continue
        orbit = {code, swap_yz(code)}
        cls = len(marked_reps) + 1
        marked_reps.append(code)
        marked_orbit.append(len(orbit))
        for member in orbit:
            assert connected[member]
            marked_class[member] = cls

    unmarked_class = [0] * NUM_CODES
    unmarked_reps: list[int] = []
    unmarked_orbit: list[int] = []
    for code in range(NUM_CODES):
        if not connected[code] or unmarked_class[code]:
            continue
        orbit = set(ordering_codes(code))
        cls = len(unmarked_reps) + 1
        unmarked_reps.append(code)
        unmarked_orbit.append(len(orbit))
        for member in orbit:
            assert connected[member]
            unmarked_class[member] = cls

    marked_parent: list[int] = []
    for rep in marked_reps:
        parents = {unmarked_class[c] for c in (rep, swap_yz(rep))}
        assert len(parents) == 1
        marked_parent.append(parents.pop())

    num_connected = sum(connected)
    swap_fixed = sum(1 for c in range(NUM_CODES) if connected[c] and swap_yz(c) == c)
    assert num_connected == 54
    assert len(marked_reps) == 30
    assert len(unmarked_reps) == 13
    # orbit-counting check for the two-element swap group
    assert (num_connected + swap_fixed) // 2 == len(marked_reps)
    assert sum(marked_orbit) == num_connected
    assert sum(unmarked_orbit) == num_connected

    return TriadCatalog(
        marked_class=tuple(marked_class),
        unmarked_class=tuple(unmarked_class),
        marked_reps=tuple(marked_reps),
        unmarked_reps=tuple(unmarked_reps),
        marked_orbit_size=tuple(marked_orbit),
        unmarked_orbit_size=tuple(unmarked_orbit),
        marked_parent=tuple(marked_parent),
    )


CATALOG = build_catalog()


def write_catalog_tsv(out: TextIO = sys.stdout, catalog: TriadCatalog = CATALOG) -> None:
    """Dump both class tables as TSV rows.

    Columns: kind, id, code, dyads (xy/xz/yz letters), orbit, parent.
    The parent column links each marked class to its unmarked class and
    is empty for unmarked rows.
    """
    out.write("kind\tid\tcode\tdyads\torbit\tparent\n")
    for i, rep in enumerate(catalog.unmarked_reps):
        out.write(
            f"unmarked\t{i + 1}\t{rep}\t{catalog.code_letters(rep)}"
            f"\t{catalog.unmarked_orbit_size[i]}\t\n"
        )
    for i, rep in enumerate(catalog.marked_reps):
        out.write(
            f"marked\t{i + 1}\t{rep}\t{catalog.code_letters(rep)}"
            f"\t{catalog.marked_orbit_size[i]}\t{catalog.marked_parent[i]}\n"
        )
