"""Exact coefficient fields: the rationals and prime fields.

All arithmetic in this package is exact.  Scalars are either
`fractions.Fraction` (characteristic 0) or plain ints in [0, p)
(characteristic p).  A field object bundles the operations so that the
linear algebra routines can stay generic.
"""

from fractions import Fraction


class Rationals:
    """Arbitrary-precision rational arithmetic."""

    characteristic = 0

    def of(self, a):
        return Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(("field", 0))


class PrimeField:
    """Integers modulo a prime, elements stored as ints in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p

    @property
    def characteristic(self):
        return self.p

    def of(self, a):
        return a % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))


def field_of_characteristic(char):
    """Field selector used by the CLI: 0 gives the rationals, p a prime field."""
    if char == 0:
        return Rationals()
    return PrimeField(char)


def serialize_scalar(c):
    """Scalar -> JSON-stable value: int when integral, 'p/q' string otherwise."""
    if hasattr(c, "denominator") and c.denominator != 1:
        return str(c)
    return int(c)
