"""Exact scalar fields: the rationals and prime fields F_p (p odd).

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
F_p are :class:`Fp` instances, which interoperate with Python ints so that
sign factors such as ``-1`` or ``(-1) ** k`` can be mixed in freely.
"""

from __future__ import annotations

from fractions import Fraction


class Fp:
    """Residue class modulo an odd prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> Fp:
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) * self.inverse()

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """A scalar field.  Call it to coerce ints, fractions or strings."""

    characteristic: int = 0

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def require_invertible(self, *ns: int) -> None:
        """Raise ValueError unless every integer in ``ns`` is a unit."""
        for n in ns:
            if self.characteristic and n % self.characteristic == 0:
                raise ValueError(
                    f"{n} is not invertible in characteristic {self.characteristic}"
                )

    def format(self, value) -> str:
        return str(value)

    def elements(self):
        raise TypeError("infinite field cannot be enumerated")


class RationalField(Field):
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fp):
            raise TypeError("cannot coerce a residue class to a rational")
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.characteristic = p

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, Fp):
            if value.p != p:
                raise ValueError(f"element of F_{value.p} is not in F_{p}")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            return Fp(value.numerator, p) / Fp(value.denominator, p)
        if isinstance(value, int):
            return Fp(value, p)
        raise TypeError(f"cannot coerce {value!r} into F_{p}")

    def elements(self):
        return [Fp(v, self.characteristic) for v in range(self.characteristic)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
