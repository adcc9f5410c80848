"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Every scalar in the library is either a ``fractions.Fraction`` (rationals)
or a plain ``int`` reduced mod p (prime fields).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

RATIONALS = "rationals"
PRIME_FIELD = "prime-field"

_MAX_CHARACTERISTIC = 2**31


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin; the witness set {2, 7, 61} is exact below 3.2e9."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 7, 61):
        x = pow(a, d, p)
        if x == 1 or x == p - 1:
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """The exact base field all computations run over.

    Use ``Field.rationals()`` or ``Field.prime(p)``.  Scalars are Fractions
    over the rationals and canonical residues 0 <= a < p over GF(p).
    """

    __slots__ = ("kind", "characteristic")

    def __init__(self, kind, characteristic=None):
        if kind == RATIONALS:
            if characteristic is not None:
                raise ValueError("rationals take no characteristic")
        elif kind == PRIME_FIELD:
            if not isinstance(characteristic, int) or not 1 < characteristic < _MAX_CHARACTERISTIC:
                raise ValueError(f"characteristic must be an integer in (1, 2^31): {characteristic!r}")
            if not is_prime(characteristic):
                raise ValueError(f"characteristic must be prime: {characteristic}")
        else:
            raise ValueError(f"unknown field kind: {kind!r}")
        self.kind = kind
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "Field":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(PRIME_FIELD, p)

    # -- arithmetic -------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def of_int(self, n: int):
        if self.kind == RATIONALS:
            return Fraction(n)
        return n % self.characteristic

    def add(self, a, b):
        if self.kind == RATIONALS:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a, b):
        if self.kind == RATIONALS:
            return a - b
        return (a - b) % self.characteristic

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return a * b
        return a * b % self.characteristic

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        return -a % self.characteristic

    def inv(self, a):
        if self.kind == RATIONALS:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- text form --------------------------------------------------------

    def to_str(self, a) -> str:
        """Canonical decimal string: "3/4" or "-2" over Q, the residue over GF(p)."""
        if self.kind == RATIONALS:
            return str(a)
        return str(a % self.characteristic)

    def parse(self, s: str):
        s = s.strip()
        if self.kind == RATIONALS:
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed rational scalar {s!r}") from exc
        try:
            n = int(s)
        except ValueError as exc:
            raise ValueError(f"malformed GF({self.characteristic}) scalar {s!r}") from exc
        return n % self.characteristic

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def __repr__(self):
        if self.kind == RATIONALS:
            return "Field.rationals()"
        return f"Field.prime({self.characteristic})"

    def to_json(self) -> dict:
        if self.kind == RATIONALS:
            return {"kind": RATIONALS}
        return {"kind": PRIME_FIELD, "characteristic": self.characteristic}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        kind = data.get("kind")
        if kind == RATIONALS:
            return cls.rationals()
        if kind == PRIME_FIELD:
            return cls(PRIME_FIELD, data.get("characteristic"))
        raise ValueError(f"unknown field kind: {kind!r}")


QQ = Field.rationals()
GF2 = Field.prime(2)
GF5 = Field.prime(5)
