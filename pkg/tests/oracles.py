"""Independent reference implementations used only by the test suite.

Everything here recomputes package outputs from first principles with
deliberately different plumbing: raw dicts for polynomials, a grid walk
for DT codes, long division for the torus-knot formula, and Bareiss
elimination for determinants.  Nothing imports from twistlink.
"""

from __future__ import annotations

from fractions import Fraction

# ---------------------------------------------------------------------------
# Laurent polynomials as raw {exponent: coefficient} dicts


def poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def poly_pow(a: dict, k: int) -> dict:
    out = {0: 1}
    for _ in range(k):
        out = poly_mul(out, a)
    return out


# ---------------------------------------------------------------------------
# Kauffman bracket by brute smoothing enumeration over braid letters


def _dsu_find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _dsu_union(parent: dict, x, y):
    parent.setdefault(x, x)
    parent.setdefault(y, y)
    rx, ry = _dsu_find(parent, x), _dsu_find(parent, y)
    if rx != ry:
        parent[rx] = ry


def brute_bracket(strands: int, letters: tuple[int, ...]) -> dict:
    """<closure> as a raw dict in A, delta = -A^2 - A^-2, unknot -> {0: 1}."""
    c = len(letters)
    delta = {2: -1, -2: -1}
    total: dict = {}
    for state in range(1 << c):
        parent: dict = {}
        segments = [("s", i) for i in range(strands)]
        for i in range(strands):
            parent[("s", i)] = ("s", i)
        current = list(segments)
        b_count = 0
        for t, g in enumerate(letters):
            j = abs(g) - 1
            pick_b = (state >> t) & 1
            b_count += pick_b
            # A smooths a positive crossing to the identity tangle,
            # B to the cup-cap; signs swap the roles
            cupcap = (g > 0) == bool(pick_b)
            if cupcap:
                _dsu_union(parent, current[j], current[j + 1])
                fresh = ("c", t, 0)
                fresh2 = ("c", t, 1)
                parent[fresh] = fresh
                parent[fresh2] = fresh2
                _dsu_union(parent, fresh, fresh2)
                current[j], current[j + 1] = fresh, fresh2
        for i in range(strands):
            _dsu_union(parent, current[i], ("s", i))
        loops = len({_dsu_find(parent, x) for x in parent})
        term = poly_mul({c - 2 * b_count: 1}, poly_pow(delta, loops - 1))
        total = poly_add(total, term)
    return total


def brute_jones(strands: int, letters: tuple[int, ...]) -> dict:
    """V(closure) in A after writhe normalization (t = A^-4 left implicit)."""
    w = sum(1 if g > 0 else -1 for g in letters)
    bracket = brute_bracket(strands, letters)
    sign = 1 if w % 2 == 0 else -1
    return poly_mul({-3 * w: sign}, bracket)


def jones_dict_in_t(strands: int, letters: tuple[int, ...]) -> dict:
    """As brute_jones but with exponents divided by -4; requires a knot."""
    va = brute_jones(strands, letters)
    assert all(e % 4 == 0 for e in va), "closure is not a knot (half-integer span)"
    return {-e // 4: c for e, c in va.items()}


# ---------------------------------------------------------------------------
# Closed torus-knot formula, evaluated by long division in t


def torus_jones(p: int, q: int) -> dict:
    """V(T(p,q)) = t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)."""
    if q < 0:
        return {-e: c for e, c in torus_jones(p, -q).items()}
    num = {0: 1, p + 1: -1, q + 1: -1, p + q: 1}
    quot: dict = {}
    while num:
        lo = min(num)
        coef = num[lo]
        quot[lo] = coef
        num = poly_add(num, {lo: -coef, lo + 2: coef})
    shift = (p - 1) * (q - 1) // 2
    return {e + shift: c for e, c in quot.items()}


# ---------------------------------------------------------------------------
# DT code by exhaustive grid traversal of a braid closure


def grid_dt(strands: int, letters: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical DT code of the closure, which must be a knot."""
    c = len(letters)
    if c == 0:
        raise ValueError("need at least one crossing")
    # follow the knot through the braid grid, recording (crossing, over) visits
    visits = []
    pos, t = 0, 0
    seen_starts = {0}
    while True:
        if t == len(letters):
            t = 0
            if pos == 0:
                break
            seen_starts.add(pos)
        g = letters[t]
        j = abs(g) - 1
        if pos == j:
            visits.append((t, g > 0))
            pos = j + 1
        elif pos == j + 1:
            visits.append((t, g < 0))
            pos = j
        t += 1
    if len(seen_starts) != strands:
        raise ValueError("closure has more than one component")
    assert len(visits) == 2 * c

    def code_for(seq):
        by_cross: dict = {}
        for idx, (cross, over) in enumerate(seq):
            by_cross.setdefault(cross, []).append((idx, over))
        out = [0] * c
        for (i1, o1), (i2, o2) in by_cross.values():
            assert (i1 + i2) % 2 == 1, "each crossing needs one odd and one even label"
            odd0, even0 = (i1, i2) if i1 % 2 == 0 else (i2, i1)
            over_at_even = o2 if even0 == i2 else o1
            entry = even0 + 1
            out[odd0 // 2] = -entry if over_at_even else entry
        return tuple(out)

    best = None
    for seq in (visits, visits[::-1]):
        for shift in range(2 * c):
            rotated = seq[shift:] + seq[:shift]
            code = code_for(rotated)
            key = (tuple(abs(e) for e in code), tuple(e < 0 for e in code))
            if best is None or key < best[0]:
                best = (key, code)
    return best[1]


# ---------------------------------------------------------------------------
# Integer determinant by fraction-free Bareiss elimination


def det_bareiss(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Random-object helpers shared by property tests


def random_knot_braid(rng, max_strands=5, max_letters=12):
    """A braid whose closure is a knot, by rejection sampling."""
    while True:
        n = rng.randint(2, max_strands)
        k = rng.randint(n, max_letters)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(k)
        )
        # closure component count = cycles of the strand permutation
        perm = list(range(n))
        for g in letters:
            j = abs(g) - 1
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
        seen = set()
        cycles = 0
        for i in range(n):
            if i not in seen:
                cycles += 1
                x = i
                while x not in seen:
                    seen.add(x)
                    x = perm.index(x)
        if cycles == 1:
            return n, letters
