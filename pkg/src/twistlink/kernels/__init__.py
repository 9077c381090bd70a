"""Smoothing-state enumeration kernels.

Two interchangeable backends: a compiled Cython core and a pure-Python
reference.  The compiled core is used when it imported successfully and
the environment variable TWISTLINK_PURE is unset.  Both produce the same
histogram {(matching, b, loops): count}; see statesum_py for key semantics.
"""

from __future__ import annotations

import os

from .statesum_py import Quad, smoothing_histogram as _pure_histogram

try:
    from . import _statesum as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if (_compiled is not None and not os.environ.get("TWISTLINK_PURE")) else "pure"


def pack_matching(matching: tuple[int, ...]) -> int:
    """Pack a boundary matching (partner per position) into nibbles."""
    if len(matching) > 16:
        raise ValueError("packed matchings support at most 16 boundary points")
    key = 0
    for i, j in enumerate(matching):
        key |= j << (4 * i)
    return key


def smoothing_histogram(
    n_arcs: int,
    joins_a: list[Quad],
    joins_b: list[Quad],
    boundary: tuple[int, ...] = (),
    candidates: list[tuple[int, ...]] | None = None,
) -> dict[tuple[tuple[int, ...], int, int], int]:
    """Histogram of all 2^c smoothing states, on whichever backend is active.

    ``candidates`` must list every matching the tangle can produce (any
    superset works) when a boundary is given and the compiled core is in
    use; closed diagrams never need it.
    """
    if BACKEND == "pure":
        return _pure_histogram(n_arcs, joins_a, joins_b, boundary)
    if not boundary:
        hist = _compiled.smoothing_histogram_ranked(n_arcs, joins_a, joins_b, (), [0])
        return {((), b, loops): v for (_, b, loops), v in hist.items()}
    if candidates is None:
        raise ValueError("compiled kernel needs candidate matchings for tangles")
    order = sorted(range(len(candidates)), key=lambda i: pack_matching(candidates[i]))
    packed = [pack_matching(candidates[i]) for i in order]
    hist = _compiled.smoothing_histogram_ranked(n_arcs, joins_a, joins_b, boundary, packed)
    return {
        (candidates[order[rank]], b, loops): v for (rank, b, loops), v in hist.items()
    }
