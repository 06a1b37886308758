"""Exact coefficient fields: the rationals and prime fields F_p."""

from fractions import Fraction


class FieldMismatch(TypeError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class Field:
    """A coefficient field.  ``Field()`` is QQ, ``Field(p)`` is GF(p).

    Elements of GF(p) are plain ints in ``range(p)``; elements of QQ are
    ints or Fractions.  Arithmetic is done with the Python operators
    followed by :meth:`norm`.
    """

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def char(self):
        return self.p or 0

    def __call__(self, x):
        p = self.p
        if p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x if isinstance(x, (int, Fraction)) else Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def norm(self, c):
        if self.p is None:
            return c
        return c % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        if self.p is None:
            q = Fraction(a) / b
            return q.numerator if q.denominator == 1 else q
        return a * pow(b, -1, self.p) % self.p

    @property
    def half(self):
        return self.inv(2) if self.p is not None else Fraction(1, 2)

    def require_odd(self):
        if self.p == 2:
            raise ValueError("characteristic 2 is not allowed for symplectic/orthogonal data")

    def check(self, other):
        if other != self:
            raise FieldMismatch(f"{self} vs {other}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def to_text(self, c):
        c = self(c)
        return str(c)

    def spec(self):
        return "q" if self.p is None else f"fp:{self.p}"


QQ = Field()


def parse_field(text):
    """Parse ``q`` or ``fp:<prime>``."""
    text = text.strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        return Field(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<prime>'")
