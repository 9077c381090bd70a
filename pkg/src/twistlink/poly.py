"""Exact Laurent-polynomial and rational-slope arithmetic.

All coefficients are arbitrary-precision integers and all slope arithmetic
runs on ``fractions.Fraction``; nothing in this package touches floating
point.  A Laurent polynomial carries a variable tag, "A" for the bracket
variable or "t" for the Jones variable, and two polynomials combine only
when their tags agree.  Exponents may be negative.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

VAR_A = "A"
VAR_T = "t"


class _Infinity:
    """The slope 1/0, used as a surgery coefficient for unfilled components.

    A single instance ``INF`` exists.  It compares unequal to every finite
    value and supports no arithmetic.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

# A surgery coefficient: a reduced fraction or the infinite slope.
Slope = Fraction | _Infinity


def parse_slope(text: str) -> Slope:
    """Parse ``p/q``, a bare integer, or ``inf``."""
    text = text.strip()
    if text == "inf":
        return INF
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: {exc}") from None


def format_slope(value: Slope) -> str:
    if value is INF:
        return "inf"
    assert isinstance(value, Fraction)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integral(value: Slope) -> bool:
    return isinstance(value, Fraction) and value.denominator == 1


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    Stored sparsely as exponent -> coefficient with no zero entries.
    """

    __slots__ = ("variable", "_coeffs", "_hash")

    def __init__(self, variable: str, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if variable not in (VAR_A, VAR_T):
            raise ValueError(f"unknown variable tag {variable!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        table: dict[int, int] = {}
        for exp, c in items:
            if not isinstance(exp, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be int")
            c = table.get(exp, 0) + c
            if c:
                table[exp] = c
            else:
                table.pop(exp, None)
        self.variable = variable
        self._coeffs = table
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, variable: str, table: dict[int, int]) -> "LaurentPoly":
        # Internal: table must already be pruned of zeros.
        p = cls.__new__(cls)
        p.variable = variable
        p._coeffs = table
        p._hash = None
        return p

    @classmethod
    def zero(cls, variable: str) -> "LaurentPoly":
        return cls(variable)

    @classmethod
    def one(cls, variable: str) -> "LaurentPoly":
        return cls(variable, {0: 1})

    @classmethod
    def constant(cls, variable: str, c: int) -> "LaurentPoly":
        return cls(variable, {0: c})

    @classmethod
    def monomial(cls, variable: str, exp: int, c: int = 1) -> "LaurentPoly":
        return cls(variable, {exp: c})

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> Iterator[tuple[int, int]]:
        """Yield (exponent, coefficient) pairs in ascending exponent order."""
        return iter(sorted(self._coeffs.items()))

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def degree_span(self) -> tuple[int, int]:
        """(lowest, highest) exponent; the zero polynomial has no span."""
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree span")
        return (min(self._coeffs), max(self._coeffs))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.variable != self.variable:
            raise ValueError(
                f"variable mismatch: {self.variable!r} vs {other.variable!r}"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        table = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            c = table.get(exp, 0) + c
            if c:
                table[exp] = c
            else:
                table.pop(exp, None)
        return self._raw(self.variable, table)

    def __neg__(self) -> "LaurentPoly":
        return self._raw(self.variable, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        table: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                c = table.get(e, 0) + c1 * c2
                if c:
                    table[e] = c
                else:
                    del table[e]
        return self._raw(self.variable, table)

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPoly.one(self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scaled(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero(self.variable)
        return self._raw(self.variable, {e: k * c for e, k in self._coeffs.items()})

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by variable**k."""
        return self._raw(self.variable, {e + k: c for e, c in self._coeffs.items()})

    def substitute(self, value: Fraction) -> Fraction:
        """Evaluate at an exact rational value.

        Rejects the infinite slope outright and rejects 0 when a negative
        exponent is present.
        """
        if value is INF or isinstance(value, _Infinity):
            raise ValueError("cannot evaluate at inf")
        value = Fraction(value)
        if value == 0 and self._coeffs and min(self._coeffs) < 0:
            raise ValueError("evaluation at 0 with negative exponents present")
        total = Fraction(0)
        for exp, c in self._coeffs.items():
            total += c * value ** exp
        return total

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.variable == other.variable
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variable, tuple(sorted(self._coeffs.items()))))
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero:
            return f"LaurentPoly({self.variable!r}, 0)"
        parts = []
        for exp, c in self.terms():
            if exp == 0:
                parts.append(f"{c}")
            elif exp == 1:
                parts.append(f"{c}*{self.variable}")
            else:
                parts.append(f"{c}*{self.variable}^{exp}")
        return f"LaurentPoly({self.variable!r}, {' + '.join(parts)})"


def format_span_coeffs(p: LaurentPoly) -> str:
    """Render as ``span=(m,M); coeffs=[c_m,...,c_M]`` with interior zeros."""
    lo, hi = p.degree_span()
    coeffs = [p.coefficient(e) for e in range(lo, hi + 1)]
    body = ",".join(str(c) for c in coeffs)
    return f"span=({lo},{hi}); coeffs=[{body}]"
