"""Exact arithmetic in a real quadratic field Q(sqrt d) and its complexification.

A :class:`Scalar` is ``a + b*sqrt(d)`` with rational ``a`` and ``b``.  Purely
rational scalars (``b == 0``) carry ``d = 0`` and mix freely with any field;
two scalars with nonzero irrational parts must agree on ``d``.

Order is decided exactly: the sign of ``a + b*sqrt(d)`` follows from the signs
of ``a`` and ``b`` and, when they disagree, from comparing ``a*a`` with
``d*b*b``.

>>> r2 = Scalar.sqrt(2)
>>> (1 + r2) * (1 - r2)
Scalar('-1')
>>> 3 - 2 * r2 > 0
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational

from .errors import MixedFieldContext, ParseError

__all__ = ["FieldContext", "Scalar", "ComplexScalar", "as_scalar", "to_fraction"]


@lru_cache(maxsize=None)
def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldContext:
    """The field Q(sqrt d); ``d`` in {0, 1} means the rationals."""

    d: int = 0

    def __post_init__(self):
        if self.d not in (0, 1) and not _is_squarefree(self.d):
            raise ParseError(f"field parameter must be 0, 1 or a squarefree integer >= 2, got {self.d}")

    @property
    def is_rational(self) -> bool:
        return self.d in (0, 1)

    def sqrt(self) -> "Scalar":
        if self.is_rational:
            return Scalar(1) if self.d == 1 else Scalar(0)
        return Scalar(0, 1, self.d)

    def __call__(self, value) -> "Scalar":
        s = as_scalar(value)
        if s.d and s.d != self.d:
            raise MixedFieldContext(f"{s} does not lie in Q(sqrt {self.d})")
        return s


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {x!r}") from exc
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _join(d1: int, d2: int) -> int:
    if d1 == d2 or not d2:
        return d1
    if not d1:
        return d2
    raise MixedFieldContext(f"cannot combine elements of Q(sqrt {d1}) and Q(sqrt {d2})")


@total_ordering
class Scalar:
    """An element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = _frac(a)
        b = _frac(b)
        if b == 0:
            d = 0
        elif d == 1:
            a, b, d = a + b, Fraction(0), 0
        elif not _is_squarefree(d):
            raise ParseError(f"sqrt({d}) is not a valid field generator")
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def sqrt(cls, d: int) -> "Scalar":
        return cls(0, 1, d)

    # -- coercion -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Scalar(other)
        return None

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self) -> Fraction:
        return self.a

    def irrational_part(self) -> Fraction:
        return self.b

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, _join(self.d, o.d))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, _join(self.d, o.d))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        return Scalar(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(self.a / o.a, self.b / o.a, self.d)
        n = o.norm()
        return self * Scalar(o.a / n, -o.b / n, o.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Scalar(1) / (self ** (-n))
        out, base = Scalar(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- text ---------------------------------------------------------------
    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        irr = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        if self.a == 0:
            return irr if self.b > 0 else "-" + irr
        return f"{self.a}{'+' if self.b > 0 else '-'}{irr}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    _TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*?(sqrt\((\d+)\)))?|(sqrt\((\d+)\)))")

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "Scalar":
        """Parse ``p/q``, ``r/s*sqrt(d)`` or a signed sum of the two."""
        if isinstance(text, (int, Fraction)):
            return cls(text)
        s = str(text).replace(" ", "")
        if not s:
            raise ParseError("empty scalar")
        pos, total = 0, cls(0)
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ParseError(f"cannot parse scalar {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if m.group(5):
                term = cls(0, sign, int(m.group(6)))
            else:
                try:
                    coef = Fraction(m.group(2)) * sign
                except ZeroDivisionError as exc:
                    raise ParseError(f"zero denominator in {text!r}") from exc
                term = cls(0, coef, int(m.group(4))) if m.group(3) else cls(coef)
            try:
                total = total + term
            except MixedFieldContext as exc:
                raise ParseError(f"{text!r} mixes two square roots") from exc
            pos = m.end()
        if d is not None and total.d and total.d != d:
            raise MixedFieldContext(f"{text!r} does not lie in Q(sqrt {d})")
        return total


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(x)
    return Scalar(x)


def to_fraction(x) -> Fraction:
    """Return ``x`` as a Fraction, failing loudly if it is irrational."""
    if isinstance(x, Scalar):
        if x.b:
            raise ValueError(f"{x} is irrational")
        return x.a
    return Fraction(x)


class ComplexScalar:
    """``re + i*im`` with ``re`` and ``im`` in a common real quadratic field.

    The text form is ``re:im`` (or just ``re``), with each part in the
    :class:`Scalar` grammar; ``i`` alone is accepted as ``0:1``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_scalar(re)
        self.im = as_scalar(im)
        _join(self.re.d, self.im.d)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (Scalar, int, Fraction, Rational)):
            return ComplexScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero complex scalar")
        return self * ComplexScalar(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ComplexScalar(1) / (self ** (-n))
        out, base = ComplexScalar(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        return str(self.re) if not self.im else f"{self.re}:{self.im}"

    def __repr__(self):
        return f"ComplexScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ComplexScalar":
        s = str(text).replace(" ", "")
        if s in ("i", "+i"):
            return cls(0, 1)
        if s == "-i":
            return cls(0, -1)
        if ":" in s:
            re_part, _, im_part = s.partition(":")
            return cls(Scalar.parse(re_part), Scalar.parse(im_part))
        return cls(Scalar.parse(s))
