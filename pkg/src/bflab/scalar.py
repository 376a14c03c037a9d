"""Exact ground-field arithmetic: rationals and prime fields.

Scalars are kept in canonical form at all times: rationals as fully reduced
``fractions.Fraction`` values (positive denominator), prime-field elements as
plain integers in ``[0, p)``.  A ring object performs the arithmetic so that
tensor entries stay raw Python values.

Text forms: ``"3/4"`` for rationals, ``"3 mod 5"`` for prime-field elements
(bare residues are also accepted where the ring is known from context).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigError, DivisionByZero


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field of rational numbers with arbitrary-precision integers."""

    tag = "Q"
    zero = Fraction(0)
    one = Fraction(1)

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
            raise DivisionByZero("cannot invert 0 in Q")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def coerce(self, a):
        return Fraction(a)

    def format(self, a) -> str:
        return str(Fraction(a))

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad rational scalar {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The finite field F_p for a prime modulus p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ConfigError(f"prime field modulus must be prime, got {p}")
        self.p = p
        self.tag = f"F{p}"
        self.zero = 0
        self.one = 1 % p

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
            raise DivisionByZero(f"cannot invert 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def coerce(self, a):
        return int(a) % self.p

    def format(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def parse(self, text: str):
        text = text.strip()
        if "mod" in text:
            value, _, modulus = text.partition("mod")
            if int(modulus) != self.p:
                raise ConfigError(
                    f"scalar {text!r} has modulus {modulus.strip()}, ring is F_{self.p}"
                )
            text = value
        try:
            return int(text) % self.p
        except ValueError as exc:
            raise ConfigError(f"bad prime-field scalar {text!r}") from exc

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def ring_from_text(text: str):
    """Parse a ring spec: ``"Q"``, ``"Fp:5"`` or the tag form ``"F5"``."""
    text = text.strip()
    if text == "Q":
        return Rationals()
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    if text.startswith("F") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise ConfigError(f"unknown ring spec {text!r}")
