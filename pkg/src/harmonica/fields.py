"""Exact coefficient arithmetic: the rationals, prime fields, and the
subring of rationals with denominator coprime to a fixed prime.

All values are exact (``fractions.Fraction`` for characteristic 0,
canonical residues in ``[0, p)`` for characteristic ``p``); no floating
point appears anywhere downstream of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DenominatorDivisibleByP, DivisionByZero, DomainMismatch

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all inputs below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """All primes p <= bound, ascending."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, b in enumerate(sieve) if b]


class FieldSpec:
    """The coefficient field: the rationals (characteristic 0) or the
    prime field of order p.

    A FieldSpec performs arithmetic on raw values: ``Fraction`` over the
    rationals, ints in ``[0, p)`` over a prime field.  The primality of p
    is verified at construction; a composite modulus would silently break
    every downstream rank computation.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int):
        if characteristic != 0:
            if not is_prime(characteristic):
                raise ValueError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        if p < 2:
            raise ValueError("prime field order must be a prime >= 2")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse 'q'/'Q' or 'f<p>'/'Fp:<p>' field descriptors."""
        t = text.strip()
        if t.lower() == "q":
            return cls.rationals()
        if t.lower().startswith("fp:"):
            return cls.prime_field(int(t[3:]))
        if t and t[0] in "fF":
            return cls.prime_field(int(t[1:]))
        raise ValueError(f"cannot parse field descriptor {text!r}")

    # -- identification -------------------------------------------------

    @property
    def is_rationals(self) -> bool:
        return self.characteristic == 0

    @property
    def p(self) -> int:
        if self.characteristic == 0:
            raise ValueError("the rationals have no prime order")
        return self.characteristic

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and self.characteristic == other.characteristic)

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        if self.is_rationals:
            return "FieldSpec(Q)"
        return f"FieldSpec(F{self.characteristic})"

    def name(self) -> str:
        """The descriptor used in matrix JSON: 'Q' or 'Fp:<p>'."""
        return "Q" if self.is_rationals else f"Fp:{self.characteristic}"

    # -- raw value arithmetic -------------------------------------------

    def of(self, x):
        """Coerce an int, Fraction, or decimal string into this field."""
        p = self.characteristic
        if p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return self.reduce_fraction(x)
        return int(x) % p

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def inv(self, a):
        p = self.characteristic
        if p == 0:
            if a == 0:
                raise DivisionByZero("0 has no inverse in Q")
            return 1 / Fraction(a)
        if a % p == 0:
            raise DivisionByZero(f"0 has no inverse in F{p}")
        return pow(a, p - 2, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def reduce_fraction(self, x: Fraction):
        """Image of a rational under the reduction onto this field."""
        if self.characteristic == 0:
            return x
        p = self.characteristic
        if x.denominator % p == 0:
            raise DenominatorDivisibleByP(
                f"denominator {x.denominator} is divisible by {p}")
        return x.numerator * pow(x.denominator, p - 2, p) % p

    # -- serialization ---------------------------------------------------

    def format_value(self, a) -> str:
        if self.characteristic == 0:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse_value(self, text: str):
        if self.characteristic == 0:
            return Fraction(text)
        return self.of(Fraction(text))


QQ = FieldSpec.rationals()


@dataclass(frozen=True)
class Scalar:
    """A single exact field element, tagged with its field.

    >>> x = Scalar(FieldSpec.prime_field(5), 3)
    >>> (x * x.invert()).value
    1
    """

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.of(self.value))

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise DomainMismatch(
                f"cannot combine {self.field!r} with {other.field!r}")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def invert(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == self.field.zero()

    def __str__(self):
        return self.field.format_value(self.value)


def invert(s: Scalar) -> Scalar:
    """Multiplicative inverse; raises DivisionByZero on s = 0."""
    return s.invert()


def reduce_mod_p(x, p: int) -> Scalar:
    """Reduction of a rational with denominator coprime to p onto F_p.

    For x = a/b in lowest terms with p not dividing b, returns the residue
    a * b^(-1) mod p.  This is a ring homomorphism on the rationals with
    denominator coprime to p.
    """
    F = FieldSpec.prime_field(p)
    x = x if isinstance(x, Fraction) else Fraction(x)
    return Scalar(F, F.reduce_fraction(x))


@dataclass(frozen=True)
class LocalizedRational:
    """A rational whose lowest-terms denominator is coprime to p."""

    value: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.value.denominator % self.p == 0:
            raise DenominatorDivisibleByP(
                f"denominator {self.value.denominator} divisible by {self.p}")

    def reduce(self) -> Scalar:
        return reduce_mod_p(self.value, self.p)


def denominator_divides_power(x: Fraction, n: int) -> bool:
    """True when every prime factor of x's denominator divides n,
    i.e. x lies in the localization Z[1/n]."""
    d = x.denominator
    if d == 1:
        return True
    if n == 0:
        return False
    g = gcd(d, n)
    while g > 1:
        while d % g == 0:
            d //= g
        g = gcd(d, n)
    return d == 1


def prime_factors(n: int) -> list[int]:
    """Sorted prime factors of |n| by trial division (desk-scale inputs)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out
