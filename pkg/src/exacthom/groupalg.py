"""Symmetric groups, their group algebras, shuffles and Eulerian idempotents.

Conventions.  Permutations act on tensor slots on the left: sigma moves the
content of slot i to slot sigma(i), so (sigma tau) . t = sigma . (tau . t)
with (sigma tau)(x) = sigma(tau(x)).  Shuffle elements are signed sums over
the permutations that are increasing on the first i and last n-i positions.
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .fields import QQ


class Permutation:
    """A permutation of {1..n}, stored by its image tuple."""

    __slots__ = ("image", "_hash")

    def __init__(self, image):
        self.image = tuple(image)
        self._hash = hash(self.image)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n, i):
        """The adjacent transposition swapping i and i+1."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"transposition index {i} out of range for n={n}")
        image = list(range(1, n + 1))
        image[i - 1], image[i] = image[i], image[i - 1]
        return cls(image)

    @property
    def n(self):
        return len(self.image)

    def __call__(self, i):
        return self.image[i - 1]

    def __mul__(self, other):
        """Composition self o other: apply `other` first."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(self.image[j - 1] for j in other.image)

    def inverse(self):
        inv = [0] * self.n
        for i, j in enumerate(self.image, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def sign(self):
        image = self.image
        n = self.n
        inv = 0
        for a in range(n):
            for b in range(a + 1, n):
                if image[a] > image[b]:
                    inv += 1
        return -1 if inv % 2 else 1

    def is_identity(self):
        return all(v == i for i, v in enumerate(self.image, start=1))

    def permute_slots(self, slots):
        """Left action on a tuple: the result holds slots[i-1] at position
        self(i)."""
        out = [None] * self.n
        for i, v in enumerate(slots):
            out[self.image[i] - 1] = v
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.image < other.image

    def __repr__(self):
        return f"Permutation{self.image}"


def all_permutations(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


_composition_tables = {}


def _composition_table(n):
    """Indexed multiplication table of Sigma_n, built once per n: the
    permutation list in lexicographic order, the index lookup, and
    table[i][j] = index of perms[i] * perms[j]."""
    if n not in _composition_tables:
        perms = all_permutations(n)
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[a * b] for b in perms] for a in perms]
        _composition_tables[n] = (perms, index, table)
    return _composition_tables[n]


class GroupAlgebraElement:
    """A finitely supported scalar combination of permutations in Sigma_n."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field, n, coeffs=None):
        self.field = field
        self.n = n
        self.coeffs = {}
        if coeffs:
            for perm, c in coeffs.items():
                if c == field.zero:
                    continue
                if perm.n != n:
                    raise ValueError("mixed permutation sizes in group algebra element")
                self.coeffs[perm] = c

    @classmethod
    def unit(cls, field, n):
        return cls(field, n, {Permutation.identity(n): field.one})

    @classmethod
    def of(cls, field, perm, coeff=None):
        return cls(field, perm.n, {perm: field.one if coeff is None else coeff})

    def terms(self):
        """Support in a deterministic order."""
        return sorted(self.coeffs.items(), key=lambda t: t[0].image)

    def add(self, other):
        self._check(other)
        f = self.field
        out = dict(self.coeffs)
        for perm, c in other.coeffs.items():
            s = f.add(out.get(perm, f.zero), c)
            if s == f.zero:
                out.pop(perm, None)
            else:
                out[perm] = s
        return GroupAlgebraElement(f, self.n, out)

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def scale(self, c):
        f = self.field
        return GroupAlgebraElement(
            f, self.n, {p: f.mul(c, v) for p, v in self.coeffs.items()})

    def mul(self, other):
        """Convolution product.

        Large products in small symmetric groups go through the cached
        composition table, accumulating into an index-addressed vector;
        the generic dict path handles everything else.
        """
        self._check(other)
        f = self.field
        zero = f.zero
        if self.n <= 6 and len(self.coeffs) * len(other.coeffs) >= 20000:
            perms, index, table = _composition_table(self.n)
            acc = [zero] * len(perms)
            right = [(index[tau], b) for tau, b in other.coeffs.items()]
            for sigma, a in self.coeffs.items():
                row = table[index[sigma]]
                for j, b in right:
                    k = row[j]
                    acc[k] = f.add(acc[k], f.mul(a, b))
            return GroupAlgebraElement(
                f, self.n,
                {perms[k]: v for k, v in enumerate(acc) if v != zero})
        out = {}
        for sigma, a in self.coeffs.items():
            for tau, b in other.coeffs.items():
                prod = sigma * tau
                s = f.add(out.get(prod, zero), f.mul(a, b))
                if s == zero:
                    out.pop(prod, None)
                else:
                    out[prod] = s
        return GroupAlgebraElement(f, self.n, out)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraElement)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("group algebra elements live in different Sigma_n")

    def __repr__(self):
        parts = [f"{c}*{p.image}" for p, c in self.terms()]
        return " + ".join(parts) if parts else "0"


def shuffle_permutations(i, n):
    """All i-shuffles in Sigma_n: increasing on 1..i and on i+1..n."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"shuffle type ({i},{n - i}) out of range")
    out = []
    universe = range(1, n + 1)
    for first in combinations(universe, i):
        rest = [v for v in universe if v not in first]
        out.append(Permutation(list(first) + rest))
    return out


def shuffle_element(field, i, n):
    """Signed sum over the i-shuffles; support size is C(n, i)."""
    coeffs = {}
    for perm in shuffle_permutations(i, n):
        coeffs[perm] = field.of(perm.sign())
    elem = GroupAlgebraElement(field, n, coeffs)
    assert len(elem.coeffs) == comb(n, i)
    return elem


def total_shuffle(field, n):
    """Sum of the shuffle elements sh_{i,n-i} for 1 <= i <= n-1."""
    if n < 2:
        raise ValueError("total shuffle needs n >= 2")
    total = GroupAlgebraElement(field, n)
    for i in range(1, n):
        total = total.add(shuffle_element(field, i, n))
    return total


# Eigenvalues of the total shuffle operator on QQ[Sigma_n]: 2^i - 2 for
# i = 1..n.  The Eulerian idempotents are its spectral projectors.

def _shuffle_eigenvalue(i):
    return 2**i - 2


_rational_idempotents = {}


def _eulerian_over_q(n):
    if n not in _rational_idempotents:
        unit = GroupAlgebraElement.unit(QQ, n)
        if n == 1:
            _rational_idempotents[n] = [unit]
        else:
            sh = total_shuffle(QQ, n)
            idems = []
            for i in range(1, n + 1):
                li = _shuffle_eigenvalue(i)
                elem = unit
                for j in range(1, n + 1):
                    if j == i:
                        continue
                    lj = _shuffle_eigenvalue(j)
                    factor = sh.sub(unit.scale(QQ.of(lj)))
                    elem = elem.mul(factor).scale(QQ.of(1, li - lj))
                idems.append(elem)
            _rational_idempotents[n] = idems
    return _rational_idempotents[n]


def eulerian_idempotents(field, n):
    """The n Eulerian idempotents of k[Sigma_n].

    Over a prime field the exact rational coefficients are reduced mod p;
    their denominators divide n!, so p > n is enough for this to work
    (interpolating directly mod p can fail even then, since differences of
    shuffle eigenvalues may vanish).
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = field.characteristic
    if p and p <= n:
        raise ValueError(f"field characteristic {p} too small for Sigma_{n}")
    rational = _eulerian_over_q(n)
    if field == QQ:
        return rational
    out = []
    for elem in rational:
        coeffs = {}
        for perm, c in elem.coeffs.items():
            frac = Fraction(int(c.numerator), int(c.denominator))
            coeffs[perm] = field.of_rational(frac.numerator, frac.denominator)
        out.append(GroupAlgebraElement(field, n, coeffs))
    return out


def eulerian_idempotent(field, n, i):
    if not 1 <= i <= n:
        raise ValueError(f"idempotent index {i} out of range for n={n}")
    return eulerian_idempotents(field, n)[i - 1]


def shuffle_annihilating_product(field, n):
    """The product of (sh_n - (2^j - 2)) over j = 1..n; zero when the
    eigenvalue list is correct."""
    unit = GroupAlgebraElement.unit(field, n)
    sh = total_shuffle(field, n)
    acc = unit
    for j in range(1, n + 1):
        acc = acc.mul(sh.sub(unit.scale(field.of(_shuffle_eigenvalue(j)))))
    return acc


def certify_eulerian(field, n):
    """Check idempotency, pairwise orthogonality and summing to the unit.

    Returns a list of (check name, ok) pairs, all exact.
    """
    idems = eulerian_idempotents(field, n)
    unit = GroupAlgebraElement.unit(field, n)
    results = []
    total = GroupAlgebraElement(field, n)
    for i, ei in enumerate(idems, start=1):
        total = total.add(ei)
        for j, ej in enumerate(idems, start=1):
            prod = ei.mul(ej)
            expected = ei if i == j else GroupAlgebraElement(field, n)
            results.append((f"e{n}^({i}) * e{n}^({j})", prod == expected))
    results.append((f"sum of e{n}^(i) = unit", total == unit))
    return results
