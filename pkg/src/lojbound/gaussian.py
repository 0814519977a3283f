"""Exact complex rationals (Gaussian rationals) a + b*i with a, b in Q."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class QQi:
    """Immutable complex number with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @classmethod
    def coerce(cls, x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x), 0)
        if isinstance(x, tuple) and len(x) == 2:
            return cls(x[0], x[1])
        raise TypeError(f"cannot convert {x!r} to QQi")

    def __add__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __mul__(self, other):
        o = QQi.coerce(other)
        if not o.im:
            return QQi(self.re * o.re, self.im * o.re)
        if not self.im:
            return QQi(self.re * o.re, self.re * o.im)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("QQi division by zero")
        num = self * o.conjugate()
        return QQi(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return QQi(1) / (self ** (-k))
        result = QQi(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{_imag_str(self.im)}"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}i"


ZERO = QQi(0)
ONE = QQi(1)
I_UNIT = QQi(0, 1)
