"""Weight-graded augmented commutative algebras given by structure constants.

An algebra is the span of 1 and ideal generators b_1..b_d; the augmentation
kills the generators.  Products of generators are stored as elements, so an
invalid table (scalar parts, broken symmetry, broken grading) can be loaded
and then rejected by validate().

Basis slot encoding used throughout the chain modules: 0 stands for the
unit 1, a positive integer i stands for the generator b_i.
"""

import json
from dataclasses import dataclass
from itertools import product as iproduct

from .fields import QQ, field_from_name


@dataclass(frozen=True)
class AlgebraElement:
    """An element written in the canonical ideal-plus-scalar form."""

    algebra: "GradedAlgebra"
    scalar: object
    ideal: tuple  # coefficient of b_i at position i-1

    def __add__(self, other):
        f = self.algebra.field
        return AlgebraElement(
            self.algebra,
            f.add(self.scalar, other.scalar),
            tuple(f.add(a, b) for a, b in zip(self.ideal, other.ideal)),
        )

    def __mul__(self, other):
        return self.algebra.multiply(self, other)

    def scale(self, c):
        f = self.algebra.field
        return AlgebraElement(
            self.algebra, f.mul(c, self.scalar),
            tuple(f.mul(c, v) for v in self.ideal))

    def decompose(self):
        """The unique (ideal part, scalar) splitting."""
        zero = self.algebra.field.zero
        return (AlgebraElement(self.algebra, zero, self.ideal), self.scalar)

    def augmentation(self):
        return self.scalar

    def is_zero(self):
        zero = self.algebra.field.zero
        return self.scalar == zero and all(v == zero for v in self.ideal)

    def __repr__(self):
        names = self.algebra.generators
        parts = []
        if self.scalar != self.algebra.field.zero:
            parts.append(str(self.scalar))
        for name, c in zip(names, self.ideal):
            if c != self.algebra.field.zero:
                parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


class GradedAlgebra:
    """Finite-dimensional augmented commutative algebra with a positive
    weight grading on the augmentation ideal."""

    def __init__(self, name, field, generators, weights, products):
        """products maps (i, j) with 1 <= i, j <= d to an element given as
        (scalar, {l: coeff}); missing pairs default to zero."""
        self.name = name
        self.field = field
        self.generators = list(generators)
        self.weights = list(weights)
        if len(self.generators) != len(self.weights):
            raise ValueError("generator/weight count mismatch")
        if any(w < 1 for w in self.weights):
            raise ValueError("generator weights must be positive")
        d = len(self.generators)
        self._table = {}
        for (i, j), (scalar, ideal) in products.items():
            if not (1 <= i <= d and 1 <= j <= d):
                raise ValueError(f"product index ({i},{j}) out of range")
            vec = [field.zero] * d
            for l, c in ideal.items():
                vec[l - 1] = c
            self._table[(i, j)] = AlgebraElement(self, scalar, tuple(vec))

    # -- elements ----------------------------------------------------------

    @property
    def dim_ideal(self):
        return len(self.generators)

    def zero(self):
        z = self.field.zero
        return AlgebraElement(self, z, (z,) * self.dim_ideal)

    def unit(self, c=None):
        z = self.field.zero
        return AlgebraElement(
            self, self.field.one if c is None else c, (z,) * self.dim_ideal)

    def gen(self, i):
        """The i-th ideal generator, 1-based."""
        z = self.field.zero
        vec = [z] * self.dim_ideal
        vec[i - 1] = self.field.one
        return AlgebraElement(self, z, tuple(vec))

    def element(self, scalar, coeffs=None):
        vec = [self.field.zero] * self.dim_ideal
        for i, c in (coeffs or {}).items():
            vec[i - 1] = c
        return AlgebraElement(self, scalar, tuple(vec))

    def basis_product(self, i, j):
        """b_i * b_j from the structure table (zero if unspecified)."""
        elem = self._table.get((i, j))
        return elem if elem is not None else self.zero()

    def multiply(self, a, b):
        """(y + s)(y' + s') = yy' + s y' + s' y + s s'."""
        f = self.field
        zero = f.zero
        scalar = f.mul(a.scalar, b.scalar)
        vec = [zero] * self.dim_ideal
        for i, c in enumerate(a.ideal, start=1):
            if c != zero:
                vec[i - 1] = f.add(vec[i - 1], f.mul(b.scalar, c))
        for j, c in enumerate(b.ideal, start=1):
            if c != zero:
                vec[j - 1] = f.add(vec[j - 1], f.mul(a.scalar, c))
        for i, ca in enumerate(a.ideal, start=1):
            if ca == zero:
                continue
            for j, cb in enumerate(b.ideal, start=1):
                if cb == zero:
                    continue
                prod = self.basis_product(i, j)
                c = f.mul(ca, cb)
                scalar = f.add(scalar, f.mul(c, prod.scalar))
                for l, cl in enumerate(prod.ideal):
                    if cl != zero:
                        vec[l] = f.add(vec[l], f.mul(c, cl))
        return AlgebraElement(self, scalar, tuple(vec))

    def weight_of_gen(self, i):
        return self.weights[i - 1]

    # -- the slot calculus used by the chain modules ------------------------

    def slot_weight(self, v):
        return 0 if v == 0 else self.weights[v - 1]

    def slot_product(self, u, v):
        """Product of two basic slot values as [(slot, coeff)] terms.

        Valid tables keep products of generators inside the ideal; a
        nonzero scalar part here means the table is broken, so we refuse
        rather than mis-grade a chain group.
        """
        if u == 0:
            return [(v, self.field.one)]
        if v == 0:
            return [(u, self.field.one)]
        prod = self.basis_product(u, v)
        if prod.scalar != self.field.zero:
            raise ValueError(
                f"product b_{u} b_{v} has a scalar part; run validate()")
        return [(l, c) for l, c in enumerate(prod.ideal, start=1)
                if c != self.field.zero]

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Check every algebra axiom on the structure table.

        Returns a list of human-readable violation strings; empty means the
        table is a commutative, associative, augmented, weight-graded
        algebra.
        """
        f = self.field
        d = self.dim_ideal
        problems = []
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                pij = self.basis_product(i, j)
                pji = self.basis_product(j, i)
                if pij.scalar != pji.scalar or pij.ideal != pji.ideal:
                    problems.append(
                        f"commutativity: b{i}*b{j} != b{j}*b{i}")
                if pij.scalar != f.zero:
                    problems.append(
                        f"augmentation: b{i}*b{j} has scalar part "
                        f"{f.to_str(pij.scalar)}")
                wsum = self.weights[i - 1] + self.weights[j - 1]
                for l, c in enumerate(pij.ideal, start=1):
                    if c != f.zero and self.weights[l - 1] != wsum:
                        problems.append(
                            f"grading: b{i}*b{j} hits b{l} of weight "
                            f"{self.weights[l - 1]}, expected {wsum}")
        for i, j, l in iproduct(range(1, d + 1), repeat=3):
            left = self.multiply(self.multiply(self.gen(i), self.gen(j)),
                                 self.gen(l))
            right = self.multiply(self.gen(i),
                                  self.multiply(self.gen(j), self.gen(l)))
            if left.scalar != right.scalar or left.ideal != right.ideal:
                problems.append(f"associativity fails on (b{i}, b{j}, b{l})")
        return problems

    def dim_of_weight(self, w):
        """Dimension of the weight-w piece of the whole algebra."""
        if w == 0:
            return 1
        return sum(1 for wt in self.weights if wt == w)

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, {self.field}, dim I={self.dim_ideal})"


# -- coefficient bimodules ---------------------------------------------------

class Coefficients:
    """A symmetric bimodule over the algebra: either k via the augmentation
    or the algebra itself.  Module basis indices use the slot encoding."""

    def __init__(self, algebra, kind):
        if kind not in ("k", "A"):
            raise ValueError("coefficients must be 'k' or 'A'")
        self.algebra = algebra
        self.kind = kind

    def basis(self):
        if self.kind == "k":
            return [0]
        return list(range(self.algebra.dim_ideal + 1))

    def weight(self, idx):
        return 0 if idx == 0 else self.algebra.weights[idx - 1]

    def act(self, slot, idx):
        """Multiply the module basis element by a basic slot value; returns
        [(module index, coeff)] terms."""
        if self.kind == "k":
            # a . m = eps(a) m
            if slot == 0:
                return [(idx, self.algebra.field.one)]
            return []
        return self.algebra.slot_product(slot, idx)

    def __repr__(self):
        return f"Coefficients({self.kind})"


# -- the functor on finite based sets ----------------------------------------

@dataclass(frozen=True)
class BasedMap:
    """A based map [p] -> [q] of finite based sets {0, 1, .., n}."""

    p: int
    q: int
    images: tuple  # images of 1..p, values in 0..q

    def __post_init__(self):
        if len(self.images) != self.p:
            raise ValueError("image tuple length mismatch")
        if any(not 0 <= v <= self.q for v in self.images):
            raise ValueError("image out of range")

    def __call__(self, i):
        return 0 if i == 0 else self.images[i - 1]

    def compose(self, other):
        """self o other."""
        if other.q != self.p:
            raise ValueError("based maps not composable")
        return BasedMap(other.p, self.q, tuple(self(v) for v in other.images))

    @classmethod
    def identity(cls, p):
        return cls(p, p, tuple(range(1, p + 1)))


def loday_apply(alg, coeffs, f, slots, module_idx):
    """Image of a basic tensor under the functor of a based map.

    Output slot j collects the product over the preimage of j; the
    basepoint fiber multiplies into the module slot.  Empty products are
    the unit.  Returns [((out_slots, out_module), coeff)] terms.
    """
    if len(slots) != f.p:
        raise ValueError("tensor length does not match the based map")
    field = alg.field
    fibers = [[] for _ in range(f.q + 1)]
    for i, v in enumerate(slots, start=1):
        fibers[f(i)].append(v)
    # each output slot is a linear combination; expand the product of sums
    terms = [((), field.one, module_idx)]
    for j in range(1, f.q + 1):
        prod = [(0, field.one)]  # empty product = unit
        for v in fibers[j]:
            nxt = []
            for slot_val, c in prod:
                for l, cl in alg.slot_product(slot_val, v):
                    nxt.append((l, field.mul(c, cl)))
            prod = nxt
        terms = [
            (out + (l,), field.mul(c, cl), m)
            for out, c, m in terms
            for l, cl in prod
        ]
    # basepoint fiber acts on the module slot
    out = {}
    for out_slots, c, m in terms:
        mods = [(m, field.one)]
        for v in fibers[0]:
            mods = [
                (m2, field.mul(cm, c2))
                for m1, cm in mods
                for m2, c2 in coeffs.act(v, m1)
            ]
        for m2, cm in mods:
            key = (out_slots, m2)
            s = field.add(out.get(key, field.zero), field.mul(c, cm))
            if s == field.zero:
                out.pop(key, None)
            else:
                out[key] = s
    return sorted(out.items())


# -- presets and the description-file format ---------------------------------

def _dual_numbers(field):
    return GradedAlgebra("dual-numbers", field, ["x"], [1], {})


def _truncated(field, m):
    gens = [f"x{'' if e == 1 else e}" for e in range(1, m)]
    weights = list(range(1, m))
    products = {}
    for i in range(1, m):
        for j in range(1, m):
            if i + j < m:
                products[(i, j)] = (field.zero, {i + j: field.one})
    return GradedAlgebra(f"trunc{m}", field, gens, weights, products)


def _square_zero_xy(field):
    return GradedAlgebra("square-zero-xy", field, ["x", "y"], [1, 1], {})


PRESETS = {
    "dual-numbers": _dual_numbers,
    "trunc3": lambda field: _truncated(field, 3),
    "trunc4": lambda field: _truncated(field, 4),
    "square-zero-xy": _square_zero_xy,
}


def preset(name, field=QQ):
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choices: {sorted(PRESETS)}")
    alg = PRESETS[name](field)
    problems = alg.validate()
    if problems:
        raise AssertionError(f"preset {name} failed validation: {problems}")
    return alg


def algebra_from_dict(data, field_override=None):
    """Build an algebra from the description-file structure.

    Expected keys: name, field ("Q" or "Fp:<p>"), generators (list of
    {symbol, weight}), products (list of {left, right, result}) where
    result maps symbols (or "1") to coefficient strings.  Unspecified
    products are zero; a product given in one order is mirrored unless the
    other order is also given.
    """
    field = field_override or field_from_name(data.get("field", "Q"))
    gens = [g["symbol"] for g in data["generators"]]
    weights = [int(g["weight"]) for g in data["generators"]]
    index = {s: i for i, s in enumerate(gens, start=1)}
    given = {}
    for entry in data.get("products", []):
        i = index[entry["left"]]
        j = index[entry["right"]]
        scalar = field.zero
        ideal = {}
        for sym, coeff in entry["result"].items():
            c = field.parse(coeff)
            if sym == "1":
                scalar = c
            else:
                ideal[index[sym]] = c
        given[(i, j)] = (scalar, ideal)
    products = dict(given)
    for (i, j), val in given.items():
        products.setdefault((j, i), val)
    return GradedAlgebra(data.get("name", "unnamed"), field, gens, weights,
                         products)


def load_algebra(path, field_override=None):
    with open(path) as fh:
        data = json.load(fh)
    return algebra_from_dict(data, field_override)
