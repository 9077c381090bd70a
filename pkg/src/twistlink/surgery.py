"""Framed-link surgery presentations and Kirby-move bookkeeping.

A presentation is the algebraic shadow of a framed link: rational (or
infinite) coefficients, a symmetric integer linking matrix, per-component
unknottedness flags, and declared meridian edges (a, b) stating that a is
a meridian of b.  Moves never see an embedded diagram, so unknottedness
is downgraded conservatively whenever a move could knot a component; the
declared meridian structure is what lets the common reductions (Rolfsen
twists along a chain) keep their flags.

A meridian edge (a, b) requires a unknotted with lk(a, b) = +-1 and zero
linking elsewhere, except that a may link components that are themselves
declared meridians of a; that exception is what allows chains, where each
link of the chain carries the next as its meridian.

First homology is the machine-checkable invariant: every move preserves
it, and kirby_reduce fails hard if a step changes it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .poly import INF, Slope, format_slope, is_integral, parse_slope


@dataclass(frozen=True)
class Component:
    name: str
    coefficient: Slope
    unknotted: bool


@dataclass(frozen=True)
class SurgeryPresentation:
    components: tuple[Component, ...]
    linking: tuple[tuple[int, ...], ...]
    meridian_edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        k = len(self.components)
        names = [c.name for c in self.components]
        if len(set(names)) != k:
            raise ValueError("component names must be distinct")
        if len(self.linking) != k or any(len(row) != k for row in self.linking):
            raise ValueError("linking matrix size must match component count")
        for i in range(k):
            if self.linking[i][i] != 0:
                raise ValueError("linking diagonal must be zero")
            for j in range(i):
                if self.linking[i][j] != self.linking[j][i]:
                    raise ValueError("linking matrix must be symmetric")
        for edge in self.meridian_edges:
            problem = _edge_problem(self.components, self.linking, self.meridian_edges, edge)
            if problem:
                raise ValueError(f"meridian edge {edge[0]}->{edge[1]}: {problem}")

    def index(self, name: str) -> int:
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise ValueError(f"no component named {name!r}")

    def component(self, name: str) -> Component:
        return self.components[self.index(name)]

    def lk(self, a: str, b: str) -> int:
        return self.linking[self.index(a)][self.index(b)]


def _edge_problem(components, linking, edges, edge) -> str | None:
    a, b = edge
    names = {c.name: i for i, c in enumerate(components)}
    if a not in names or b not in names:
        return "unknown component"
    if a == b:
        return "component cannot be its own meridian"
    ca = components[names[a]]
    if not ca.unknotted:
        return "meridian must be unknotted"
    if abs(linking[names[a]][names[b]]) != 1:
        return "meridian must link its target exactly once"
    own = {src for src, tgt in edges if tgt == a}
    for c in components:
        if c.name in (a, b) or c.name in own:
            continue
        if linking[names[a]][names[c.name]] != 0:
            return f"meridian links stray component {c.name!r}"
    return None


def presentation(
    components: list[tuple[str, Slope | int | str, bool]],
    linking: dict[tuple[str, str], int] | None = None,
    meridians: list[tuple[str, str]] | None = None,
) -> SurgeryPresentation:
    """Convenience builder taking sparse linking entries."""
    comps = tuple(
        Component(name, coeff if coeff is INF else parse_slope(str(coeff)), bool(unk))
        for name, coeff, unk in components
    )
    idx = {c.name: i for i, c in enumerate(comps)}
    k = len(comps)
    mat = [[0] * k for _ in range(k)]
    for (a, b), v in (linking or {}).items():
        mat[idx[a]][idx[b]] = v
        mat[idx[b]][idx[a]] = v
    return SurgeryPresentation(
        comps, tuple(tuple(row) for row in mat), frozenset(meridians or ())
    )


def _prune_edges(components, linking, edges) -> frozenset[tuple[str, str]]:
    kept = set(edges)
    while True:
        bad = {e for e in kept if _edge_problem(components, linking, kept, e)}
        if not bad:
            return frozenset(kept)
        kept -= bad


def _rebuild(components, linking, edges) -> SurgeryPresentation:
    mat = tuple(tuple(row) for row in linking)
    return SurgeryPresentation(tuple(components), mat, _prune_edges(components, mat, edges))


def blow_down(p: SurgeryPresentation, name: str) -> SurgeryPresentation:
    """Delete an unknotted +-1-framed component, twisting its neighbors.

    Neighbor i picks up coefficient -eps*lk(i)^2 and pairwise linking
    -eps*lk(i)*lk(j).  Neighbors lose their unknotted flag unless they sit
    on a meridian edge with the deleted component (a Rolfsen twist on a
    single strand cannot knot it).  A meridian of the deleted component is
    re-aimed at the deletion target when it is the only one.
    """
    ci = p.index(name)
    c = p.components[ci]
    if not c.unknotted:
        raise ValueError(f"blow-down needs an unknotted component; {name!r} is not known to be")
    if c.coefficient is INF or c.coefficient.denominator != 1 or abs(c.coefficient) != 1:
        raise ValueError(f"blow-down needs coefficient +1 or -1, got {format_slope(c.coefficient)}")
    eps = int(c.coefficient)
    lk_c = [p.linking[i][ci] for i in range(len(p.components))]
    for i, comp in enumerate(p.components):
        if i == ci or lk_c[i] == 0 or comp.coefficient is INF:
            continue
        if comp.coefficient.denominator != 1:
            raise ValueError(
                f"cannot blow down through {comp.name!r}: rational coefficient "
                f"{format_slope(comp.coefficient)} with nonzero linking"
            )

    keep = [i for i in range(len(p.components)) if i != ci]
    exempt = {
        other
        for a, b in p.meridian_edges
        for other in ((a,) if b == name else (b,) if a == name else ())
    }
    comps = []
    for i in keep:
        comp = p.components[i]
        coeff = comp.coefficient
        if lk_c[i] and coeff is not INF:
            coeff = coeff - eps * lk_c[i] ** 2
        unknotted = comp.unknotted and (lk_c[i] == 0 or comp.name in exempt)
        comps.append(replace(comp, coefficient=coeff, unknotted=unknotted))
    mat = [
        [p.linking[i][j] - eps * lk_c[i] * lk_c[j] if i != j else 0 for j in keep] for i in keep
    ]

    edges = {e for e in p.meridian_edges if name not in e}
    sources = [a for a, b in p.meridian_edges if b == name]
    targets = [b for a, b in p.meridian_edges if a == name]
    if len(sources) == 1 and targets:
        edges.add((sources[0], targets[0]))
    return _rebuild(comps, mat, edges)


def blow_up(
    p: SurgeryPresentation, eps: int, links_to: list[int], name: str | None = None
) -> SurgeryPresentation:
    """Add an eps-framed unknot with the given linking vector, twisting
    the components it passes through; exact inverse of blow_down up to
    the conservative unknottedness downgrade."""
    if eps not in (1, -1):
        raise ValueError("blow-up framing must be +1 or -1")
    if len(links_to) != len(p.components):
        raise ValueError("linking vector length must match component count")
    if name is None:
        taken = {c.name for c in p.components}
        k = 1
        while f"u{k}" in taken:
            k += 1
        name = f"u{k}"
    elif any(c.name == name for c in p.components):
        raise ValueError(f"component name {name!r} already in use")
    comps = []
    for comp, v in zip(p.components, links_to):
        coeff = comp.coefficient
        if v and coeff is not INF:
            coeff = coeff + eps * v * v
        comps.append(replace(comp, coefficient=coeff))
    comps.append(Component(name, Fraction(eps), True))
    k = len(p.components)
    mat = [
        [p.linking[i][j] + eps * links_to[i] * links_to[j] if i != j else 0 for j in range(k)]
        + [links_to[i]]
        for i in range(k)
    ]
    mat.append(list(links_to) + [0])
    return _rebuild(comps, mat, p.meridian_edges)


def slam_dunk(p: SurgeryPresentation, meridian: str, target: str) -> SurgeryPresentation:
    """Absorb a meridian with coefficient r into its target: n -> n - 1/r."""
    if (meridian, target) not in p.meridian_edges:
        raise ValueError(f"no meridian edge {meridian}->{target}")
    mi, ti = p.index(meridian), p.index(target)
    own = [a for a, b in p.meridian_edges if b == meridian]
    if own:
        raise ValueError(
            f"{meridian!r} has its own meridian {own[0]!r}; slam-dunk from the chain tail first"
        )
    r = p.components[mi].coefficient
    n = p.components[ti].coefficient
    if n is INF or n.denominator != 1:
        raise ValueError(f"slam-dunk target must have an integer coefficient, got {format_slope(n)}")
    if r is INF:
        coeff = n
    elif r == 0:
        raise ValueError("meridian coefficient 0 cannot be slam-dunked")
    else:
        coeff = n - 1 / r
    keep = [i for i in range(len(p.components)) if i != mi]
    comps = [
        replace(p.components[i], coefficient=coeff) if i == ti else p.components[i] for i in keep
    ]
    mat = [[p.linking[i][j] for j in keep] for i in keep]
    edges = {e for e in p.meridian_edges if meridian not in e}
    return _rebuild(comps, mat, edges)


def handle_slide(p: SurgeryPresentation, i_name: str, j_name: str, sign: int) -> SurgeryPresentation:
    """Slide component i over j (second Kirby move), both integer framed."""
    if sign not in (1, -1):
        raise ValueError("slide sign must be +1 or -1")
    i, j = p.index(i_name), p.index(j_name)
    if i == j:
        raise ValueError("cannot slide a component over itself")
    ni, nj = p.components[i].coefficient, p.components[j].coefficient
    if ni is INF or nj is INF or ni.denominator != 1 or nj.denominator != 1:
        raise ValueError("handle slides need integer coefficients on both components")
    k = len(p.components)
    mat = [list(row) for row in p.linking]
    for x in range(k):
        if x not in (i, j):
            mat[i][x] += sign * p.linking[j][x]
            mat[x][i] = mat[i][x]
    mat[i][j] += sign * int(nj)
    mat[j][i] = mat[i][j]
    coeff = ni + nj + 2 * sign * p.linking[i][j]
    comps = [
        replace(c, coefficient=coeff, unknotted=False) if x == i else c
        for x, c in enumerate(p.components)
    ]
    edges = {e for e in p.meridian_edges if e[0] != i_name}
    return _rebuild(comps, mat, edges)


@dataclass(frozen=True)
class ContinuedFraction:
    """Negative (minus-sign) continued fraction a1 - 1/(a2 - 1/(...))."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("continued fraction needs at least one term")
        if any(a < 2 for a in self.terms[1:]):
            raise ValueError("canonical form needs every term after the first to be >= 2")


def cfrac_expand(x: Slope) -> ContinuedFraction:
    """Canonical negative expansion by ceiling recursion."""
    if x is INF:
        raise ValueError("cannot expand the infinite slope")
    terms = []
    while True:
        a = -((-x.numerator) // x.denominator)  # ceil
        terms.append(a)
        rest = a - x
        if rest == 0:
            return ContinuedFraction(tuple(terms))
        x = 1 / rest


def cfrac_eval(cf: ContinuedFraction) -> Fraction:
    val = Fraction(cf.terms[-1])
    for a in reversed(cf.terms[:-1]):
        val = a - 1 / val
    return val


def rational_to_chain(p: SurgeryPresentation, name: str) -> SurgeryPresentation:
    """Replace a rational coefficient by its integer chain.

    The component keeps the leading term; fresh meridian components carry
    the rest, each a meridian of the one before.  Slam-dunking the chain
    tail-first restores the input exactly.
    """
    ci = p.index(name)
    coeff = p.components[ci].coefficient
    if coeff is INF:
        raise ValueError("cannot expand the infinite slope into a chain")
    if coeff.denominator == 1:
        raise ValueError(f"coefficient {coeff} is already an integer")
    terms = cfrac_expand(coeff).terms
    fresh = [f"{name}.{i}" for i in range(2, len(terms) + 1)]
    taken = {c.name for c in p.components}
    for f in fresh:
        if f in taken:
            raise ValueError(f"chain name {f!r} already in use")
    comps = list(p.components)
    comps[ci] = replace(comps[ci], coefficient=Fraction(terms[0]))
    comps += [Component(f, Fraction(a), True) for f, a in zip(fresh, terms[1:])]
    k = len(p.components)
    total = k + len(fresh)
    mat = [[0] * total for _ in range(total)]
    for i in range(k):
        for j in range(k):
            mat[i][j] = p.linking[i][j]
    chain = [ci] + list(range(k, total))
    for a, b in zip(chain, chain[1:]):
        mat[a][b] = mat[b][a] = 1
    edges = set(p.meridian_edges)
    prev = name
    for f in fresh:
        edges.add((f, prev))
        prev = f
    return _rebuild(comps, mat, edges)


@dataclass(frozen=True)
class Homology:
    """H1 as invariant factors (each > 1) plus free rank."""

    torsion: tuple[int, ...]
    free_rank: int

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "trivial"


def _smith_diagonal(rows: list[list[int]]) -> list[int]:
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    diag = []
    top = 0
    while True:
        pivot = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        if m[top][top] < 0:
            m[top] = [-v for v in m[top]]
        p = m[top][top]
        dirty = False
        for i in range(top + 1, nr):
            q = m[i][top] // p
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, nc):
            q = m[top][j] // p
            if q:
                for row in m:
                    row[j] -= q * row[top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue
        stray = next(
            ((i, j) for i in range(top + 1, nr) for j in range(top + 1, nc) if m[i][j] % p),
            None,
        )
        if stray:
            # pull a non-divisible entry into the pivot row and retry
            m[top] = [a + b for a, b in zip(m[top], m[stray[0]])]
            continue
        diag.append(p)
        top += 1
    return diag


def h1(p: SurgeryPresentation) -> Homology:
    """First homology of the surgered manifold via Smith normal form.

    Row i of the presentation matrix is q_i * linking(i, .) with diagonal
    p_i, for coefficient p_i/q_i; components with infinite coefficient are
    erased first.
    """
    keep = [i for i, c in enumerate(p.components) if c.coefficient is not INF]
    rows = []
    for i in keep:
        coeff = p.components[i].coefficient
        row = [coeff.denominator * p.linking[i][j] for j in keep]
        row[keep.index(i)] = coeff.numerator
        rows.append(row)
    if not rows:
        return Homology((), 0)
    diag = _smith_diagonal(rows)
    return Homology(tuple(d for d in diag if d > 1), len(keep) - len(diag))


MOVE_NAMES = ("blowdown", "blowup", "slamdunk", "slide", "chain")


def apply_move(p: SurgeryPresentation, move: tuple) -> SurgeryPresentation:
    kind = move[0]
    if kind == "blowdown":
        return blow_down(p, move[1])
    if kind == "blowup":
        return blow_up(p, move[1], list(move[2]))
    if kind == "slamdunk":
        return slam_dunk(p, move[1], move[2])
    if kind == "slide":
        return handle_slide(p, move[1], move[2], move[3])
    if kind == "chain":
        return rational_to_chain(p, move[1])
    raise ValueError(f"unknown move {kind!r}")


def render_move(move: tuple) -> str:
    if move[0] == "blowup":
        return f"blowup {move[1]:+d} " + " ".join(str(v) for v in move[2])
    if move[0] == "slide":
        return f"slide {move[1]} {move[2]} {'+' if move[3] > 0 else '-'}"
    return " ".join(str(f) for f in move)


@dataclass(frozen=True)
class TraceStep:
    move: str
    components_before: int
    components_after: int
    h1: Homology
    result: SurgeryPresentation
    note: str = ""


@dataclass(frozen=True)
class KirbyTrace:
    initial_h1: Homology
    steps: tuple[TraceStep, ...]


def kirby_reduce(
    p: SurgeryPresentation, script: list[tuple]
) -> tuple[SurgeryPresentation, KirbyTrace]:
    """Apply a move script, checking H1 after every step.

    A move that fails its own contract is reported with its step index;
    a move that changes H1 is an internal error and raises immediately.
    """
    invariant = h1(p)
    steps = []
    current = p
    for k, move in enumerate(script, start=1):
        note = ""
        try:
            if move[0] == "blowdown":
                ci = current.index(move[1])
                if any(abs(row[ci]) >= 2 for row in current.linking):
                    note = (
                        "a strand passes the deleted unknot more than once; "
                        "writhe not tracked"
                    )
            after = apply_move(current, move)
        except ValueError as exc:
            raise ValueError(f"step {k} ({render_move(move)}): {exc}") from exc
        step_h1 = h1(after)
        if step_h1 != invariant:
            raise RuntimeError(
                f"step {k} ({render_move(move)}) changed H1 from "
                f"{invariant.render()} to {step_h1.render()}; this is a bug"
            )
        steps.append(
            TraceStep(
                render_move(move),
                len(current.components),
                len(after.components),
                step_h1,
                after,
                note,
            )
        )
        current = after
    return current, KirbyTrace(invariant, tuple(steps))


def render_presentation(p: SurgeryPresentation) -> str:
    lines = [f"components {len(p.components)}"]
    for c in p.components:
        lines.append(f"{c.name} {format_slope(c.coefficient)} {1 if c.unknotted else 0}")
    for i in range(len(p.components)):
        for j in range(i + 1, len(p.components)):
            if p.linking[i][j]:
                lines.append(
                    f"lk {p.components[i].name} {p.components[j].name} {p.linking[i][j]}"
                )
    for a, b in sorted(p.meridian_edges):
        lines.append(f"meridian {a} {b}")
    return "\n".join(lines)


def parse_presentation(text: str) -> SurgeryPresentation:
    comps: list[tuple[str, object, bool]] = []
    linking: dict[tuple[str, str], int] = {}
    meridians: list[tuple[str, str]] = []
    want = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "components":
                want = int(fields[1])
            elif fields[0] == "lk":
                linking[(fields[1], fields[2])] = int(fields[3])
            elif fields[0] == "meridian":
                meridians.append((fields[1], fields[2]))
            else:
                name, coeff, unk = fields
                if unk not in ("0", "1"):
                    raise ValueError(f"unknotted flag must be 0 or 1, got {unk!r}")
                comps.append((name, parse_slope(coeff), unk == "1"))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if want is None:
        raise ValueError("missing 'components' header")
    if want != len(comps):
        raise ValueError(f"header says {want} components, found {len(comps)}")
    return presentation(comps, linking, meridians)


def parse_script(text: str) -> list[tuple]:
    moves: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            kind = fields[0]
            if kind == "blowdown" and len(fields) == 2:
                moves.append(("blowdown", fields[1]))
            elif kind == "blowup" and len(fields) >= 2:
                moves.append(("blowup", int(fields[1]), tuple(int(v) for v in fields[2:])))
            elif kind == "slamdunk" and len(fields) == 3:
                moves.append(("slamdunk", fields[1], fields[2]))
            elif kind == "slide" and len(fields) == 4 and fields[3] in "+-":
                moves.append(("slide", fields[1], fields[2], 1 if fields[3] == "+" else -1))
            elif kind == "chain" and len(fields) == 2:
                moves.append(("chain", fields[1]))
            else:
                raise ValueError(f"unrecognized move {line!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return moves
