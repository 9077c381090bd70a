"""Pure-Python smoothing enumeration (reference kernel).

Enumerates all 2^c smoothing states of a diagram or tangle given as a list
of crossings, where each crossing contributes two arc joins per smoothing
choice.  Loops are counted by union-find over arc identifiers.

Keys of the returned histogram are (boundary matching, B-count, loops):

* ``matching`` is a tuple: position i of the tangle boundary (circle
  order) is joined to position matching[i].  Closed diagrams use ().
* ``b`` is the number of crossings given their B smoothing.
* ``loops`` counts closed curves that touch no boundary point.
"""

from __future__ import annotations

Quad = tuple[int, int, int, int]


def smoothing_histogram(
    n_arcs: int,
    joins_a: list[Quad],
    joins_b: list[Quad],
    boundary: tuple[int, ...] = (),
) -> dict[tuple[tuple[int, ...], int, int], int]:
    c = len(joins_a)
    if len(joins_b) != c:
        raise ValueError("joins_a and joins_b must have equal length")
    hist: dict[tuple[tuple[int, ...], int, int], int] = {}
    base = list(range(n_arcs))

    for state in range(1 << c):
        parent = base[:]

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        bits = state
        for t in range(c):
            quad = joins_b[t] if (bits >> t) & 1 else joins_a[t]
            r1, r2 = find(quad[0]), find(quad[1])
            if r1 != r2:
                parent[r2] = r1
            r1, r2 = find(quad[2]), find(quad[3])
            if r1 != r2:
                parent[r2] = r1

        if boundary:
            roots = [find(a) for a in boundary]
            first: dict[int, int] = {}
            matching = [-1] * len(boundary)
            for i, r in enumerate(roots):
                if r in first:
                    j = first.pop(r)
                    matching[i], matching[j] = j, i
                else:
                    first[r] = i
            if first:
                raise ValueError("tangle strand with unpaired boundary point")
            key_match = tuple(matching)
            boundary_roots = set(roots)
        else:
            key_match = ()
            boundary_roots = set()

        loops = 0
        for i in range(n_arcs):
            if parent[i] == i and i not in boundary_roots:
                loops += 1

        key = (key_match, state.bit_count(), loops)
        hist[key] = hist.get(key, 0) + 1
    return hist
