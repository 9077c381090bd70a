"""Braid words, twisted torus knot generators, and Markov moves.

A braid on n strands is a word in the generators sigma_1 .. sigma_{n-1},
written as a tuple of nonzero integers: letter g > 0 means the strand in
position g crosses over the strand in position g+1, and g < 0 is the
inverse crossing.  Words read left to right, top to bottom; the closure
joins each bottom endpoint back to the top endpoint in the same position.

Handedness convention: positive letters are right-handed crossings, so a
positive number of full twists inserts positive letters.

The twisted torus knot T(p, q, r, s) is the closure of

    (sigma_1 ... sigma_{p-1})^q  (sigma_1 ... sigma_{r-1})^{r s}

that is, the (p, q) torus braid with s extra full twists on the first r
strands.  Mirrors are T(p, -q, r, -s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from .poly import INF, Slope, format_slope, is_integral


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for g in letters:
            if not isinstance(g, int) or g == 0:
                raise ValueError(f"letters must be nonzero integers, got {g!r}")
            if abs(g) > self.strands - 1:
                raise ValueError(
                    f"letter {g} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def writhe(self) -> int:
        """Sum of letter signs (the writhe of the closure)."""
        return sum(1 if g > 0 else -1 for g in self.letters)

    def permutation(self) -> list[int]:
        """Image of each starting position 1..n under the braid, 1-indexed.

        Entry i-1 is the bottom position where the strand entering at top
        position i exits.  Crossing handedness does not matter here.
        """
        slots = list(range(self.strands))  # slots[pos] = strand occupying pos
        for g in self.letters:
            i = abs(g) - 1
            slots[i], slots[i + 1] = slots[i + 1], slots[i]
        out = [0] * self.strands
        for final_pos, start in enumerate(slots):
            out[start] = final_pos + 1
        return out


def mirror(b: BraidWord) -> BraidWord:
    """Flip every crossing: the closure of the result is the mirror link."""
    return BraidWord(b.strands, tuple(-g for g in b.letters))


def conjugate(b: BraidWord, g: int) -> BraidWord:
    """The word g . b . g^{-1} (a Markov conjugation, no reduction applied)."""
    if g == 0 or abs(g) > b.strands - 1:
        raise ValueError(f"conjugating letter {g} out of range")
    return BraidWord(b.strands, (g,) + b.letters + (-g,))


def markov_stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Add a strand and one crossing sigma_n^{+-1} at the end of the word."""
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    n = b.strands
    return BraidWord(n + 1, b.letters + (sign * n,))


def markov_destabilize(b: BraidWord) -> BraidWord:
    """Inverse of stabilization.

    Requires that the last letter is +-(n-1) and that generator n-1 occurs
    nowhere else in the word.
    """
    n = b.strands
    if n < 2 or not b.letters:
        raise ValueError("nothing to destabilize")
    top = n - 1
    count = sum(1 for g in b.letters if abs(g) == top)
    if abs(b.letters[-1]) != top or count != 1:
        raise ValueError(
            f"sigma_{top} occurs {count} time(s); destabilization needs it "
            "exactly once, as the final letter"
        )
    return BraidWord(n - 1, b.letters[:-1])


def free_reduce_cyclic(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Cancel adjacent inverse letters, treating the word as a cycle.

    The closure identifies the end of the word with its start, so a
    trailing g and leading -g also cancel.  Iterates to a fixed point.
    """
    word = list(letters)
    changed = True
    while changed and word:
        changed = False
        out: list[int] = []
        for g in word:
            if out and out[-1] == -g:
                out.pop()
                changed = True
            else:
                out.append(g)
        while len(out) >= 2 and out[0] == -out[-1]:
            out = out[1:-1]
            changed = True
        word = out
    return tuple(word)


# -- generators -------------------------------------------------------------


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_{p-1})^q on p strands; q < 0 uses inverse letters."""
    if p < 2:
        raise ValueError(f"torus braid needs p >= 2, got {p}")
    if q >= 0:
        cycle = tuple(range(1, p))
        reps = q
    else:
        cycle = tuple(-i for i in range(p - 1, 0, -1))
        reps = -q
    return BraidWord(p, cycle * reps)


def insert_full_twists(b: BraidWord, first: int, width: int, s: int) -> BraidWord:
    """Append s full twists on strands first .. first+width-1.

    A full twist on w strands is (sigma_first ... sigma_{first+w-2})^w, so
    s twists append that cycle w*s times (inverse letters for s < 0).
    """
    if width < 2:
        raise ValueError(f"twist region width must be >= 2, got {width}")
    if first < 1 or first + width - 1 > b.strands:
        raise ValueError(
            f"twist region [{first}, {first + width - 1}] does not fit in "
            f"{b.strands} strands"
        )
    k = width * s
    if k >= 0:
        cycle = tuple(range(first, first + width - 1))
        reps = k
    else:
        cycle = tuple(-i for i in range(first + width - 2, first - 1, -1))
        reps = -k
    return BraidWord(b.strands, b.letters + cycle * reps)


@dataclass(frozen=True)
class TwistedTorusSpec:
    """Parameters (p, q, r, s): s full twists on r strands of T(p, q).

    The classical regime is r < p; r = p is a full twist on every strand
    and larger r only arises through the generalized pathway.
    """

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if gcd(self.p, abs(self.q)) != 1:
            raise ValueError(f"gcd(p, q) must be 1, got ({self.p}, {self.q})")
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")
        if self.s == 0:
            raise ValueError("s must be nonzero (use a plain torus braid)")


def ttk_braid(spec: TwistedTorusSpec) -> BraidWord:
    """Braid word for the twisted torus knot T(p, q, r, s)."""
    if spec.r > spec.p:
        raise ValueError(
            f"r = {spec.r} exceeds p = {spec.p}; widen with gttk_braid instead"
        )
    base = torus_braid(spec.p, spec.q)
    return insert_full_twists(base, 1, spec.r, spec.s)


@dataclass(frozen=True)
class Stabilize:
    """Markov stabilization step: add one strand and sigma_n^{sign}."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("stabilization sign must be +1 or -1")


@dataclass(frozen=True)
class TwistRegion:
    """Full-twist step: ``twists`` full twists on strands first..first+width-1."""

    first: int
    width: int
    twists: int

    def __post_init__(self):
        if self.first < 1:
            raise ValueError(f"first strand must be >= 1, got {self.first}")
        if self.width < 2:
            raise ValueError(f"width must be >= 2, got {self.width}")
        if self.twists == 0:
            raise ValueError("twist count must be nonzero")


GeneralizedOp = Union[Stabilize, TwistRegion]


@dataclass(frozen=True)
class GeneralizedTTKSpec:
    """A torus knot base plus interleaved stabilizations and twist regions."""

    p: int
    q: int
    ops: tuple[GeneralizedOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if gcd(self.p, abs(self.q)) != 1:
            raise ValueError(f"gcd(p, q) must be 1, got ({self.p}, {self.q})")
        strands = self.p
        for op in self.ops:
            if isinstance(op, Stabilize):
                strands += 1
            elif isinstance(op, TwistRegion):
                if op.first + op.width - 1 > strands:
                    raise ValueError(
                        f"twist region [{op.first}, {op.first + op.width - 1}] "
                        f"does not fit in {strands} strands"
                    )
            else:
                raise ValueError(f"unknown op {op!r}")


def gttk_braid(spec: GeneralizedTTKSpec) -> BraidWord:
    """Braid word for a generalized twisted torus knot."""
    b = torus_braid(spec.p, spec.q)
    for op in spec.ops:
        if isinstance(op, Stabilize):
            b = markov_stabilize(b, op.sign)
        else:
            b = insert_full_twists(b, op.first, op.width, op.twists)
    return b


def blow_down_axis(b: BraidWord, first: int, width: int, coeff: Slope) -> BraidWord:
    """Twists produced by blowing down a -1/s framed axis circle.

    An unknotted surgery circle with coefficient -1/s around ``width``
    adjacent strands, when blown down, gives those strands s full twists.
    The coefficient must therefore be a nonzero fraction with numerator
    +-1; the emitted word is letter-for-letter the output of
    insert_full_twists with s = -1/coeff.
    """
    if coeff is INF or not isinstance(coeff, Fraction):
        raise ValueError("axis coefficient must be a finite rational")
    if coeff == 0 or abs(coeff.numerator) != 1:
        raise ValueError(
            f"axis coefficient must be -1/s for integer s, got {format_slope(coeff)}"
        )
    s = -coeff.denominator * coeff.numerator  # -1/coeff, exactly
    return insert_full_twists(b, first, width, s)


# -- text format --------------------------------------------------------------


def render_braid(b: BraidWord) -> str:
    """``n: g1 g2 ... gk`` (no letters after the colon for a trivial word)."""
    if not b.letters:
        return f"{b.strands}:"
    return f"{b.strands}: " + " ".join(str(g) for g in b.letters)


def parse_braid(text: str) -> BraidWord:
    head, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"braid text needs 'n: letters', got {text!r}")
    try:
        strands = int(head.strip())
    except ValueError:
        raise ValueError(f"bad strand count {head.strip()!r}") from None
    letters = []
    for tok in rest.split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise ValueError(f"bad letter {tok!r}") from None
    return BraidWord(strands, tuple(letters))
