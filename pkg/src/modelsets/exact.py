"""Exact arithmetic over Q and real quadratic extensions Q(sqrt(m)).

Every scalar in this package is a :class:`QuadRational`, an exact value
``a + b*sqrt(m)`` with rational ``a``, ``b`` and a squarefree integer
``m > 1``.  Pure rationals carry ``m = None`` and combine freely with
values from any field; two scalars with distinct concrete ``m`` never mix.
Galois conjugation ``a + b*sqrt(m) -> a - b*sqrt(m)`` is exposed because it
realises the internal projection of quadratic-field cut-and-project
schemes.

All predicates (sign, comparison, floor) are decided with integer
arithmetic only.  ``float()`` gives a 53-bit view for plotting and phase
computations; no predicate branches on it.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_SQUAREFREE_CACHE: dict[int, bool] = {}


class FieldMismatchError(ValueError):
    """Raised when two scalars from distinct quadratic fields are combined."""


def is_squarefree(m: int) -> bool:
    if m in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[m]
    ok = m > 1
    if ok:
        d = 2
        n = m
        while d * d <= n:
            if n % (d * d) == 0:
                ok = False
                break
            if n % d == 0:
                n //= d
            d += 1
    _SQUAREFREE_CACHE[m] = ok
    return ok


def _merge_fields(ma: int | None, mb: int | None) -> int | None:
    if ma is None:
        return mb
    if mb is None:
        return ma
    if ma != mb:
        raise FieldMismatchError(f"cannot combine sqrt({ma}) with sqrt({mb})")
    return ma


class QuadRational:
    """An exact element ``a + b*sqrt(m)`` of Q or a real quadratic field.

    Instances are immutable and canonical: fractions are reduced, and a
    value with ``b == 0`` normalises to ``m = None`` so that equal numbers
    compare and hash equal regardless of which field produced them.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a=0, b=0, m: int | None = None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            m = None
        else:
            if m is None:
                raise ValueError("irrational part requires a field discriminant m")
            if not is_squarefree(m):
                raise ValueError(f"m must be a squarefree integer > 1, got {m}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRational is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "QuadRational":
        return cls(Fraction(value))

    @classmethod
    def sqrt_term(cls, m: int, coeff=1) -> "QuadRational":
        """The value ``coeff * sqrt(m)``."""
        return cls(0, Fraction(coeff), m)

    # -- field operations --------------------------------------------------

    def _coerce(self, other) -> "QuadRational | None":
        if isinstance(other, QuadRational):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = _merge_fields(self.m, o.m)
        return QuadRational(self.a + o.a, self.b + o.b, m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = _merge_fields(self.m, o.m)
        return QuadRational(self.a - o.a, self.b - o.b, m)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadRational(-self.a, -self.b, self.m)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = _merge_fields(self.m, o.m)
        if m is None:
            return QuadRational(self.a * o.a)
        return QuadRational(
            self.a * o.a + self.b * o.b * m,
            self.a * o.b + self.b * o.a,
            m,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = _merge_fields(self.m, o.m)
        norm = o.a * o.a - o.b * o.b * (m or 0)
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self * QuadRational(o.a / norm, -o.b / norm, m)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def conjugate(self) -> "QuadRational":
        """Galois conjugate ``a - b*sqrt(m)``; rationals are fixed."""
        return QuadRational(self.a, -self.b, self.m)

    # -- exact predicates ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, decided by integer comparisons."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return -1 if b < 0 else 1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # a and b oppose: compare a^2 with b^2 m using integers.
        lhs = a.numerator * a.numerator * b.denominator * b.denominator
        rhs = b.numerator * b.numerator * a.denominator * a.denominator * self.m
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not (self.a == 0 and self.b == 0)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.m == o.m

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def _cmp(self, other) -> int:
        diff = self - other
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- integer rounding ----------------------------------------------------

    def floor(self) -> int:
        """Exact floor, via integer square roots."""
        a, b = self.a, self.b
        if b == 0:
            return a.numerator // a.denominator
        # x = (N + B*sqrt(m)) / den with den > 0
        den = a.denominator * b.denominator
        n_part = a.numerator * b.denominator
        b_part = b.numerator * a.denominator
        k = b_part * b_part * self.m
        if b_part >= 0:
            t = math.isqrt(k)
        else:
            r = math.isqrt(k)
            # m squarefree > 1 and b != 0, so sqrt(k) is irrational
            t = -r - 1
        return (n_part + t) // den

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    # -- text form -----------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"QuadRational({self.a!r}, {self.b!r}, {self.m!r})"

    def sort_key(self):
        """Total-order key consistent with the numeric order (d=1 scalars)."""
        return _NumericKey(self)


class _NumericKey:
    __slots__ = ("value",)

    def __init__(self, value: QuadRational):
        self.value = value

    def __lt__(self, other):
        return self.value < other.value

    def __eq__(self, other):
        return self.value == other.value


ZERO = QuadRational(0)
ONE = QuadRational(1)


# -- spec-facing functional surface -------------------------------------------

def q_add(x: QuadRational, y: QuadRational) -> QuadRational:
    """Exact field sum; rejects mismatched fields."""
    return x + y


def q_mul(x: QuadRational, y: QuadRational) -> QuadRational:
    """Exact field product; rejects mismatched fields."""
    return x * y


def q_conj(x: QuadRational) -> QuadRational:
    """Galois conjugation, the internal-projection map on scalars."""
    return x.conjugate()


def q_sign(x: QuadRational) -> int:
    """Exact sign of the real number a + b*sqrt(m)."""
    return x.sign()


def canonicalize(x: QuadRational) -> QuadRational:
    """Re-normalise a scalar; idempotent because construction canonicalises."""
    return QuadRational(x.a, x.b, x.m)


def to_float(x: QuadRational) -> float:
    """53-bit floating view; for plotting and phases only, never predicates."""
    return float(x)


# -- parsing / serialisation ---------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*
    (?P<sign>[+-])?\s*
    (?:
        (?:(?P<coeff>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<m>\d+)\s*\)
        |
        (?P<rat>\d+(?:/\d+)?)
    )\s*
    """,
    re.VERBOSE,
)


def parse_scalar(text: str, field_m: int | None = None) -> QuadRational:
    """Parse ``"a/b + c/d*sqrt(m)"`` with omitted zero parts.

    Whitespace tolerant; a bare ``sqrt(m)`` means coefficient 1.  When
    ``field_m`` is given, any sqrt term must use that discriminant.
    """
    s = text
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    m: int | None = None
    seen = 0
    while pos < len(s):
        match = _TERM_RE.match(s, pos)
        if match is None or match.end() == pos:
            raise ValueError(f"malformed scalar {text!r}")
        sign = -1 if match.group("sign") == "-" else 1
        if seen > 0 and match.group("sign") is None:
            raise ValueError(f"missing sign between terms in {text!r}")
        if match.group("rat") is not None:
            a += sign * Fraction(match.group("rat"))
        else:
            coeff = Fraction(match.group("coeff") or 1)
            term_m = int(match.group("m"))
            if m is not None and term_m != m:
                raise FieldMismatchError(f"mixed fields in {text!r}")
            m = term_m
            b += sign * coeff
        pos = match.end()
        seen += 1
        if seen > 2:
            raise ValueError(f"too many terms in scalar {text!r}")
    if seen == 0:
        raise ValueError("empty scalar")
    if b != 0:
        if not is_squarefree(m):
            raise ValueError(f"m must be squarefree > 1 in {text!r}")
        if field_m is not None and m != field_m:
            raise FieldMismatchError(
                f"scalar {text!r} uses sqrt({m}) but the context requires sqrt({field_m})"
            )
    return QuadRational(a, b, m if b != 0 else None)


def format_scalar(x: QuadRational) -> str:
    """Canonical text form: reduced fractions, sign before the sqrt term."""
    if x.b == 0:
        return str(x.a)
    surd = f"{abs(x.b)}*sqrt({x.m})"
    if x.a == 0:
        return surd if x.b > 0 else f"-{surd}"
    op = "+" if x.b > 0 else "-"
    return f"{x.a} {op} {surd}"


# -- misc utilities -------------------------------------------------------------

def simplest_rational_between(lo: QuadRational, hi: QuadRational) -> Fraction:
    """Smallest-denominator rational strictly inside (lo, hi), lo < hi.

    Stern-Brocot walk with exact endpoint comparisons; used to pick
    deterministic interior representatives of feasible cells.
    """
    if not lo < hi:
        raise ValueError("empty interval")
    # Shift to a positive range to walk the (0, inf) Stern-Brocot tree.
    shift = lo.floor()
    lo_s = lo - shift
    hi_s = hi - shift
    if lo_s.sign() < 0 or (lo_s.sign() == 0):
        # lo is integral: 0 is excluded, but any value in (0, hi_s) works.
        if hi_s > 1:
            return Fraction(shift + 1)
    ln, ld = 0, 1
    rn, rd = 1, 0
    for _ in range(10_000):
        mn, md = ln + rn, ld + rd
        mid = QuadRational(Fraction(mn, md))
        if mid <= lo_s:
            ln, ld = mn, md
        elif mid >= hi_s:
            rn, rd = mn, md
        else:
            return Fraction(mn, md) + shift
    raise RuntimeError("Stern-Brocot walk did not terminate")
