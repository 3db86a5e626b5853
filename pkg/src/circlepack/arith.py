"""Exact scalars over Q(sqrt d) for d in {1, 2, 3}, and the Kronecker symbol."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

FIELDS = (1, 2, 3)


class FieldMismatch(ValueError):
    pass


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


class QuadRat:
    """r + s*sqrt(d) with exact rational r, s.

    d = 1 means plain rationals and forces s = 0.
    """

    __slots__ = ("d", "r", "s")

    def __init__(self, r=0, s=0, d: int = 1):
        if d not in FIELDS:
            raise ValueError(f"unsupported field tag {d}")
        r, s = _frac(r), _frac(s)
        if d == 1:
            r, s = r + s, Fraction(0)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @classmethod
    def sqrt(cls, d: int, coeff=1) -> "QuadRat":
        """coeff * sqrt(d)."""
        return cls(0, coeff, d)

    def _pair(self, other):
        """Common field tag and the other operand as (r, s), or None."""
        if isinstance(other, QuadRat):
            if other.d == self.d or other.s == 0:
                return self.d, other.r, other.s
            if self.s == 0:
                return other.d, other.r, other.s
            raise FieldMismatch(f"field tags differ: {self.d} vs {other.d}")
        if isinstance(other, (int, Rational)):
            return self.d, Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        d, r, s = p
        return QuadRat(self.r + r, self.s + s, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.r, -self.s, self.d)

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        d, r, s = p
        return QuadRat(self.r - r, self.s - s, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        d, r, s = p
        return QuadRat(self.r * r + d * self.s * s, self.r * s + self.s * r, d)

    __rmul__ = __mul__

    def conj(self) -> "QuadRat":
        return QuadRat(self.r, -self.s, self.d)

    def norm(self) -> Fraction:
        return self.r * self.r - self.d * self.s * self.s

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        d, r, s = p
        o = QuadRat(r, s, d)
        if not o:
            raise ZeroDivisionError("division by zero in QuadRat")
        n = o.norm()
        num = QuadRat(self.r, self.s, d) * o.conj()
        return QuadRat(num.r / n, num.s / n, d)

    def __rtruediv__(self, other):
        return QuadRat(other, 0, self.d) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = QuadRat(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.r) or bool(self.s)

    def __eq__(self, other):
        if isinstance(other, QuadRat):
            if self.s == 0 and other.s == 0:
                return self.r == other.r
            return self.d == other.d and self.r == other.r and self.s == other.s
        if isinstance(other, (int, Rational)):
            return self.s == 0 and self.r == other
        return NotImplemented

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.d, self.r, self.s))

    def sign(self) -> int:
        """Exact sign of r + s*sqrt(d)."""
        r, s = self.r, self.s
        sr = (r > 0) - (r < 0)
        ss = (s > 0) - (s < 0)
        if ss == 0:
            return sr
        if sr == 0 or sr == ss:
            return ss
        # opposite signs: compare r^2 with d*s^2 (never equal, sqrt d irrational)
        return sr if r * r > self.d * s * s else ss

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.r) + float(self.s) * self.d ** 0.5

    def is_rational(self) -> bool:
        return self.s == 0

    def to_int(self) -> int:
        if self.s != 0 or self.r.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return self.r.numerator

    def __repr__(self):
        if self.d == 1:
            return f"QuadRat({self.r})"
        return f"QuadRat({self.r} + {self.s}*sqrt{self.d})"

    def __str__(self):
        if self.s == 0:
            return str(self.r)
        if self.r == 0:
            return f"{self.s}*sqrt{self.d}"
        return f"{self.r}{'+' if self.s > 0 else '-'}{abs(self.s)}*sqrt{self.d}"


def quadrat_arith(x: QuadRat, y: QuadRat, op: str) -> QuadRat:
    """Checked binary operation on two values tagged with the same field."""
    if x.d != y.d:
        raise FieldMismatch(f"field tags differ: {x.d} vs {y.d}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


# ---- integers ---------------------------------------------------------------

def v2(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0) is undefined")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    if n == 0:
        raise ValueError("odd_part(0) is undefined")
    return n >> v2(n)


def exact_sqrt(n: int) -> int | None:
    """The non-negative square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def int_utils(n: int) -> dict:
    out = {"exact_sqrt": exact_sqrt(n)}
    if n != 0:
        out["odd_part"] = odd_part(n)
        out["v2"] = v2(n)
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def half_if_2mod4(a: int) -> int:
    """a/2 when a = 2 mod 4, otherwise a."""
    return a // 2 if a % 4 == 2 else a


# ---- Kronecker symbol ---------------------------------------------------------

_TAB2 = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker(a: int, b: int) -> int:
    """Kronecker symbol (a/b), with (a/-1) = -1 for a < 0."""
    if b == 0:
        raise ValueError("kronecker symbol with bottom 0")
    if a % 2 == 0 and b % 2 == 0:
        return 0
    k = 1
    if b < 0:
        b = -b
        if a < 0:
            k = -1
    t = v2(b)
    b >>= t
    if t & 1:
        k *= _TAB2[a & 7]
    # b odd and positive now: Jacobi symbol
    a %= b
    while a:
        t = v2(a)
        a >>= t
        if t & 1:
            k *= _TAB2[b & 7]
        if a & b & 2:
            k = -k
        a, b = b % a, a
    return k if b == 1 else 0


def reciprocity_sign(a: int, b: int) -> int:
    """(-1)^((a0-1)/2 * (b0-1)/2) for the odd parts a0, b0 of a and b."""
    if a == 0 or b == 0:
        raise ValueError("reciprocity_sign needs nonzero arguments")
    if a < 0 and b < 0:
        raise ValueError("reciprocity law needs one positive argument")
    a0, b0 = odd_part(a), odd_part(b)
    return -1 if (a0 % 4 == 3 and b0 % 4 == 3) else 1


def coprime(*xs: int) -> bool:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g == 1
