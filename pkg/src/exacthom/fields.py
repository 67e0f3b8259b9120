"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

All linear algebra in this package runs over one of these two fields.
Elements are plain Python objects (``mpq``/``Fraction`` for the rationals,
ints in ``0..p-1`` for a prime field); the field object supplies the
arithmetic so that generic code never rounds and never special-cases.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _rat = Fraction


class Rationals:
    """The field of rational numbers with exact arbitrary-precision arithmetic."""

    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = _rat(0)
        self.one = _rat(1)

    def of(self, num, den=1):
        return _rat(num, den)

    def parse(self, text):
        return _rat(str(text))

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
        return 1 / a

    def div(self, a, b):
        return a / b

    def of_rational(self, num, den=1):
        return _rat(num, den)

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("exacthom.QQ")


class PrimeField:
    """The field with p elements, p prime.  Elements are ints reduced mod p."""

    characteristic = None

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def of(self, num, den=1):
        a = num % self.p
        if den != 1:
            a = a * self.inv(den % self.p) % self.p
        return a

    def parse(self, text):
        text = str(text)
        if "/" in text:
            num, den = text.split("/")
            return self.of(int(num), int(den))
        return self.of(int(text))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def of_rational(self, num, den=1):
        # reduction of an exact rational; fails if p divides the denominator
        num, den = int(num), int(den)
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} not invertible mod {self.p}")
        return num * self.inv(den % self.p) % self.p

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("exacthom.GF", self.p))


QQ = Rationals()

_gf_cache = {}


def GF(p):
    """The prime field with p elements (instances cached per p)."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_name(name):
    """Parse a field designator: "Q" or "Fp:<p>"."""
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field {name!r} (expected 'Q' or 'Fp:<p>')")


def rational_parts(a):
    """Numerator and denominator of a rational field element."""
    if isinstance(a, Fraction):
        return a.numerator, a.denominator
    return int(a.numerator), int(a.denominator)
