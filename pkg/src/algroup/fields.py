"""Exact coefficient arithmetic for the two supported fields.

Rational values are arbitrary-precision fractions (gmpy2.mpq when it is
installed, fractions.Fraction otherwise); prime-field values are plain
ints reduced to the canonical range [0, p).  The Field object carries the
field tag and performs all arithmetic on the raw values; mixing values
from different fields is prevented at the ring level, where every
polynomial records which field its coefficients live in.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as rational
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as rational

# Witnesses making Miller-Rabin deterministic for all p < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_PRIME = 2**63


def is_prime(p: int) -> bool:
    """Deterministic primality test, valid for p < 2**64."""
    if p < 2:
        return False
    for q in _MR_WITNESSES:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The rationals; values are exact fractions in lowest terms."""

    name = "Q"
    characteristic = 0

    def __repr__(self) -> str:
        return "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def from_int(self, k: int):
        return rational(k)

    def from_ratio(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        return rational(num, den)

    def coerce(self, v):
        if isinstance(v, int):
            return rational(v)
        return v

    def zero(self):
        return rational(0)

    def one(self):
        return rational(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, e: int):
        return a**e

    def to_str(self, a) -> str:
        return str(a)


class PrimeField:
    """The field F_p for a word-sized prime p; values are ints in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"field modulus must be an integer >= 2, got {p!r}")
        if p >= MAX_PRIME:
            raise ValueError(f"field modulus {p} does not fit in a machine word")
        if not is_prime(p):
            raise ValueError(f"field modulus {p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return f"F {self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"F_{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def from_int(self, k: int) -> int:
        return k % self.p

    def coerce(self, v) -> int:
        return v % self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def to_str(self, a) -> str:
        return str(a)


QQ = RationalField()

Field = RationalField | PrimeField
