# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled smoothing-state enumeration (union-find per state).

Same contract as statesum_py.smoothing_histogram, except matchings are
reported as ranks into a caller-supplied sorted list of packed matchings
(4 bits per boundary position).  The dispatcher translates ranks back to
partner tuples so both kernels are interchangeable.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.stdint cimport int32_t, uint64_t


cdef inline int _find(int32_t* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def smoothing_histogram_ranked(int n_arcs, joins_a, joins_b, boundary, packed_matchings):
    """Return {(matching_rank, b, loops): count} over all 2^c states.

    ``packed_matchings`` must be a sorted list of every admissible packed
    matching of the boundary (empty boundary: [0]).  A state producing a
    matching outside the list is an input error.
    """
    cdef int c = len(joins_a)
    if len(joins_b) != c:
        raise ValueError("joins_a and joins_b must have equal length")
    if c > 30:
        raise ValueError(f"crossing count {c} too large for the compiled kernel")
    cdef int nb = len(boundary)
    if nb > 16:
        raise ValueError("compiled kernel supports at most 16 boundary points")
    cdef int nmatch = len(packed_matchings)
    if nmatch < 1:
        raise ValueError("packed_matchings must be nonempty")

    # joins laid out as [t*8 .. t*8+3] = A quad, [t*8+4 .. t*8+7] = B quad
    cdef int32_t* joins = <int32_t*> malloc(8 * (c if c else 1) * sizeof(int32_t))
    cdef int32_t* bnd = <int32_t*> malloc((nb if nb else 1) * sizeof(int32_t))
    cdef uint64_t* packed = <uint64_t*> malloc(nmatch * sizeof(uint64_t))
    cdef int32_t* parent = <int32_t*> malloc((n_arcs if n_arcs else 1) * sizeof(int32_t))
    cdef int32_t* broot = <int32_t*> malloc((nb if nb else 1) * sizeof(int32_t))
    cdef int32_t* partner = <int32_t*> malloc((nb if nb else 1) * sizeof(int32_t))
    cdef int max_loops = n_arcs + 1
    cdef uint64_t* counts = <uint64_t*> calloc(
        <size_t> nmatch * (c + 1) * max_loops, sizeof(uint64_t))
    if not joins or not bnd or not packed or not parent or not broot or not partner or not counts:
        free(joins); free(bnd); free(packed); free(parent)
        free(broot); free(partner); free(counts)
        raise MemoryError()

    cdef int t, i, j
    for t in range(c):
        qa = joins_a[t]
        qb = joins_b[t]
        for i in range(4):
            joins[t * 8 + i] = qa[i]
            joins[t * 8 + 4 + i] = qb[i]
    for i in range(nb):
        bnd[i] = boundary[i]
    for i in range(nmatch):
        packed[i] = packed_matchings[i]

    cdef uint64_t nstates = (<uint64_t> 1) << c
    cdef uint64_t state
    cdef int b, loops, base, r1, r2, lo, hi, mid, rank
    cdef uint64_t key
    cdef int bad = 0

    with nogil:
        for state in range(nstates):
            for i in range(n_arcs):
                parent[i] = i
            b = 0
            for t in range(c):
                base = t * 8
                if (state >> t) & 1:
                    base += 4
                    b += 1
                r1 = _find(parent, joins[base]); r2 = _find(parent, joins[base + 1])
                if r1 != r2:
                    parent[r2] = r1
                r1 = _find(parent, joins[base + 2]); r2 = _find(parent, joins[base + 3])
                if r1 != r2:
                    parent[r2] = r1

            key = 0
            if nb:
                for i in range(nb):
                    broot[i] = _find(parent, bnd[i])
                    partner[i] = -1
                for i in range(nb):
                    if partner[i] >= 0:
                        continue
                    for j in range(i + 1, nb):
                        if partner[j] < 0 and broot[j] == broot[i]:
                            partner[i] = j
                            partner[j] = i
                            break
                    if partner[i] < 0:
                        bad = 1
                        break
                if bad:
                    break
                for i in range(nb):
                    key |= (<uint64_t> partner[i]) << (4 * i)

            # rank = index of key in packed[] (binary search)
            lo = 0; hi = nmatch - 1; rank = -1
            while lo <= hi:
                mid = (lo + hi) >> 1
                if packed[mid] == key:
                    rank = mid
                    break
                elif packed[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid - 1
            if rank < 0:
                bad = 2
                break

            loops = 0
            for i in range(n_arcs):
                if parent[i] == i:
                    loops += 1
            if nb:
                # boundary components are not closed loops; each spans two
                # boundary points, so subtract distinct boundary roots
                for i in range(nb):
                    if partner[i] > i:
                        loops -= 1

            counts[(<size_t> rank * (c + 1) + b) * max_loops + loops] += 1

    hist = {}
    cdef size_t idx
    cdef int m
    if not bad:
        for m in range(nmatch):
            for b in range(c + 1):
                for loops in range(max_loops):
                    idx = (<size_t> m * (c + 1) + b) * max_loops + loops
                    if counts[idx]:
                        hist[(m, b, loops)] = counts[idx]
    free(joins); free(bnd); free(packed); free(parent)
    free(broot); free(partner); free(counts)
    if bad == 1:
        raise ValueError("tangle strand with unpaired boundary point")
    if bad == 2:
        raise ValueError("state produced a matching outside packed_matchings")
    return hist
