"""Finite sets with totally ordered fibers (the non-commutative-sets model
of Delta-S), the symmetric bar construction, the Gabriel-Zisman complex of
its epi subcategory, and the comparison map onto the surjection-string
complex.

A morphism is stored by its ordered fibers; the underlying set map is
implied.  The pair normal form (order-preserving map, permutation) and the
generator calculus are conversion and certification surfaces only.
"""

from functools import lru_cache
from itertools import permutations, product as iproduct

from .algebras import Coefficients
from .chains import ChainSlice
from .gamma import GammaComplex, Surjection
from .groupalg import Permutation
from .sparse import Echelon, SparseMatrix, kernel_basis, solve_batch


class FiberOrderedMap:
    """A map {1..x} -> {1..y} together with a total order on every fiber.

    Epimorphisms are the maps with no empty fiber.  The identity is the
    identity map with its singleton fibers.
    """

    __slots__ = ("cod", "fibers", "images", "_hash")

    def __init__(self, cod, fibers):
        self.cod = cod
        self.fibers = tuple(tuple(fb) for fb in fibers)
        if len(self.fibers) != cod:
            raise ValueError("fiber count must equal the codomain size")
        x = sum(len(fb) for fb in self.fibers)
        images = [0] * x
        for j, fb in enumerate(self.fibers, start=1):
            for i in fb:
                if not 1 <= i <= x or images[i - 1]:
                    raise ValueError("fibers do not partition the domain")
                images[i - 1] = j
        self.images = tuple(images)
        self._hash = hash((cod, self.fibers))

    @property
    def dom(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def is_epi(self):
        return all(self.fibers)

    def is_identity(self):
        return self.cod == self.dom and all(
            v == i for i, v in enumerate(self.images, start=1))

    def after(self, other):
        """Composite self o other: the fiber over k concatenates, along
        self's fiber order of k, the fibers of other in their own orders."""
        if other.cod != self.dom:
            raise ValueError("maps not composable")
        return _compose_fom(self, other)

    def underlying(self):
        """The underlying surjection (the morphism must be epi)."""
        if not self.is_epi():
            raise ValueError("underlying surjection needs an epimorphism")
        return Surjection(self.cod, self.images)

    def pair_form(self):
        """The (order-preserving map, permutation) normal form: the map
        equals collapse-of-intervals composed after the permutation."""
        seq = [i for fb in self.fibers for i in fb]
        g_image = [0] * len(seq)
        for t, i in enumerate(seq, start=1):
            g_image[i - 1] = t
        phi = []
        for j, fb in enumerate(self.fibers, start=1):
            phi.extend([j] * len(fb))
        return OrderMap(self.cod, phi), Permutation(g_image)

    @classmethod
    def from_pair(cls, phi, g):
        if phi.dom != g.n:
            raise ValueError("pair sizes do not match")
        ginv = g.inverse()
        fibers = [[] for _ in range(phi.cod)]
        for t in range(1, phi.dom + 1):
            fibers[phi(t) - 1].append(ginv(t))
        return cls(phi.cod, fibers)

    @classmethod
    def identity(cls, n):
        return cls(n, [(i,) for i in range(1, n + 1)])

    def __eq__(self, other):
        return (isinstance(other, FiberOrderedMap)
                and self.cod == other.cod and self.fibers == other.fibers)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.cod, self.fibers) < (other.cod, other.fibers)

    def __repr__(self):
        return f"FiberOrderedMap({self.dom}->{self.cod}, {self.fibers})"


@lru_cache(maxsize=None)
def _compose_fom(g, f):
    fibers = []
    for k in range(1, g.cod + 1):
        fiber = []
        for j in g.fibers[k - 1]:
            fiber.extend(f.fibers[j - 1])
        fibers.append(tuple(fiber))
    return FiberOrderedMap(g.cod, fibers)


class OrderMap:
    """A weakly order-preserving map {1..x} -> {1..y}."""

    __slots__ = ("cod", "images")

    def __init__(self, cod, images):
        self.cod = cod
        self.images = tuple(images)
        if any(not 1 <= v <= cod for v in self.images):
            raise ValueError("image out of range")
        if any(a > b for a, b in zip(self.images, self.images[1:])):
            raise ValueError("not order-preserving")

    @property
    def dom(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def is_epi(self):
        return set(self.images) == set(range(1, self.cod + 1))

    def __eq__(self, other):
        return (isinstance(other, OrderMap)
                and self.cod == other.cod and self.images == other.images)

    def __hash__(self):
        return hash(("order", self.cod, self.images))

    def __repr__(self):
        return f"OrderMap({self.dom}->{self.cod}, {self.images})"


# -- generators of the category ------------------------------------------------

def delta_face(n, i):
    """The order-preserving injection {1..n} -> {1..n+1} missing i."""
    if not 1 <= i <= n + 1:
        raise ValueError("face index out of range")
    fibers = []
    for j in range(1, n + 2):
        if j < i:
            fibers.append((j,))
        elif j == i:
            fibers.append(())
        else:
            fibers.append((j - 1,))
    return FiberOrderedMap(n + 1, fibers)


def delta_degeneracy(n, j):
    """The order-preserving surjection {1..n+1} -> {1..n} hitting j twice,
    with the ascending fiber order."""
    if not 1 <= j <= n:
        raise ValueError("degeneracy index out of range")
    fibers = []
    for k in range(1, n + 1):
        if k < j:
            fibers.append((k,))
        elif k == j:
            fibers.append((j, j + 1))
        else:
            fibers.append((k + 1,))
    return FiberOrderedMap(n, fibers)


def transposition_map(n, k):
    """The adjacent transposition as a morphism with singleton fibers."""
    theta = Permutation.transposition(n, k)
    return FiberOrderedMap(n, [(theta(j),) for j in range(1, n + 1)])


@lru_cache(maxsize=None)
def epi_maps(x, y):
    """All fiber-ordered epimorphisms {1..x} -> {1..y}, sorted; there are
    x! C(x-1, y-1) of them."""
    if x < y or y < 1:
        raise ValueError(f"no epimorphisms {x} -> {y}")
    out = []
    for cuts in _compositions(x, y):
        phi = OrderMap(y, [j for j, size in enumerate(cuts, start=1)
                           for _ in range(size)])
        for image in permutations(range(1, x + 1)):
            out.append(FiberOrderedMap.from_pair(phi, Permutation(image)))
    out.sort()
    return tuple(out)


def _compositions(x, y):
    """Compositions of x into y positive parts."""
    if y == 1:
        yield (x,)
        return
    for first in range(1, x - y + 2):
        for rest in _compositions(x - first, y - 1):
            yield (first,) + rest


# -- the symmetric bar construction ---------------------------------------------

def b_sym_words(f, words):
    """The bar construction on formal words: output slot j concatenates the
    input words along the fiber order of j (empty fiber = empty word)."""
    if len(words) != f.dom:
        raise ValueError("word count does not match the domain")
    return tuple(
        tuple(sym for i in fb for sym in words[i - 1])
        for fb in f.fibers)


def b_sym_apply(alg, f, slots, ideal_only=True):
    """The bar construction on basic tensors: output slot j is the ordered
    product along the fiber of j.  Returns [(out_slots, coeff)] terms.

    With ideal_only=True (the augmentation-ideal functor) an empty fiber is
    rejected: it would need the unit, which the ideal does not contain.
    """
    if len(slots) != f.dom:
        raise ValueError("tensor length does not match the morphism")
    if ideal_only and not f.is_epi():
        raise ValueError("the ideal bar construction needs an epimorphism")
    field = alg.field
    terms = [((), field.one)]
    for fb in f.fibers:
        prod = [(0, field.one)]
        for i in fb:
            prod = [
                (l, field.mul(c, cl))
                for slot_val, c in prod
                for l, cl in alg.slot_product(slot_val, slots[i - 1])
            ]
        terms = [(out + (l,), field.mul(c, cl))
                 for out, c in terms for l, cl in prod]
    return terms


# -- strings of epimorphisms -----------------------------------------------------

@lru_cache(maxsize=None)
def epi_strings(x, n, to_point=False):
    """Composable strings (f_1, .., f_n) of non-identity epimorphisms
    starting at {1..x}; with to_point=True the final codomain is the
    one-point set."""
    if n == 0:
        if to_point and x != 1:
            return ()
        return ((),)
    out = []
    for y in range(1, x + 1):
        for f in epi_maps(x, y):
            if f.is_identity():
                continue
            for rest in epi_strings(y, n - 1, to_point):
                out.append((f,) + rest)
    return tuple(out)


class SymmetricComplex:
    """The normalized Gabriel-Zisman complex of the epi subcategory with the
    ideal bar construction: full variant, or the quotient by strings whose
    final codomain is bigger than a point."""

    def __init__(self, alg, variant="full", normalized=True):
        if variant not in ("full", "quotient"):
            raise ValueError("variant must be 'full' or 'quotient'")
        self.alg = alg
        self.variant = variant
        self.normalized = normalized
        self.field = alg.field
        self._basis = {}
        self._boundary = {}
        self._tensor_cache = {}

    def _tensors(self, x, w):
        values = range(1, self.alg.dim_ideal + 1)
        return [slots for slots in iproduct(values, repeat=x)
                if sum(self.alg.slot_weight(v) for v in slots) == w]

    def iter_basis(self, n, w):
        to_point = self.variant == "quotient"
        for x in range(1, w + 1):
            if self.normalized:
                strings = epi_strings(x, n, to_point)
            else:
                strings = _all_epi_strings(x, n, to_point)
            for string in strings:
                for slots in self._tensors(x, w):
                    yield (string, slots)

    def basis(self, n, w):
        key = (n, w)
        if key not in self._basis:
            self._basis[key] = tuple(sorted(self.iter_basis(n, w),
                                            key=_sym_sort_key))
        return self._basis[key]

    def index(self, n, w):
        return {k: i for i, k in enumerate(self.basis(n, w))}

    def dim(self, n, w):
        return len(self.basis(n, w))

    def _keeps(self, string, obj):
        """obj is the final codomain: the codomain of the last morphism, or
        the object itself for an empty string."""
        if self.normalized and any(f.is_identity() for f in string):
            return False
        if self.variant == "quotient" and obj != 1:
            return False
        return True

    def _apply_bar(self, f, slots):
        key = (f, slots)
        if key not in self._tensor_cache:
            self._tensor_cache[key] = b_sym_apply(self.alg, f, slots)
        return self._tensor_cache[key]

    def face_terms(self, key, i):
        string, slots = key
        n = len(string)
        field = self.field
        out = []
        if i == 0:
            new_string = string[1:]
            obj = new_string[-1].cod if new_string else string[0].cod
            if self._keeps(new_string, obj):
                for new_slots, c in self._apply_bar(string[0], slots):
                    out.append(((new_string, new_slots), c))
        elif i < n:
            comp = string[i].after(string[i - 1])
            new_string = string[:i - 1] + (comp,) + string[i + 1:]
            if self._keeps(new_string, new_string[-1].cod):
                out.append(((new_string, slots), field.one))
        else:
            new_string = string[:-1]
            obj = new_string[-1].cod if new_string else len(slots)
            if self._keeps(new_string, obj):
                out.append(((new_string, slots), field.one))
        return out

    def boundary_terms(self, key):
        field = self.field
        out = {}
        sign = field.one
        for i in range(len(key[0]) + 1):
            for tkey, c in self.face_terms(key, i):
                s = field.add(out.get(tkey, field.zero), field.mul(sign, c))
                if s == field.zero:
                    out.pop(tkey, None)
                else:
                    out[tkey] = s
            sign = field.neg(sign)
        return out

    def boundary(self, n, w):
        key = (n, w)
        if key not in self._boundary:
            idx = self.index(n - 1, w)
            entries = {}
            for j, bkey in enumerate(self.basis(n, w)):
                for tkey, c in self.boundary_terms(bkey).items():
                    entries[(idx[tkey], j)] = c
            self._boundary[key] = SparseMatrix(
                self.field, len(idx), self.dim(n, w), entries)
        return self._boundary[key]

    def slice(self, w, top):
        dims = [self.dim(n, w) for n in range(top + 1)]
        bounds = {n: self.boundary(n, w) for n in range(1, top + 1)}
        return ChainSlice(self.field, dims, bounds)


def _sym_sort_key(key):
    string, slots = key
    return (len(slots), tuple((f.cod, f.fibers) for f in string), slots)


@lru_cache(maxsize=None)
def _all_epi_strings(x, n, to_point=False):
    """Strings allowing identity morphisms (the unnormalized complex)."""
    if n == 0:
        if to_point and x != 1:
            return ()
        return ((),)
    out = []
    for y in range(1, x + 1):
        for f in epi_maps(x, y):
            for rest in _all_epi_strings(y, n - 1, to_point):
                out.append((f,) + rest)
    return tuple(out)


# -- the quotient map and the comparison map -------------------------------------

def quotient_matrix(sym_full, sym_quot, n, w):
    """The quotient map killing classes whose final codomain is bigger than
    a point."""
    field = sym_full.field
    idx = sym_quot.index(n, w)
    entries = {}
    for j, (string, slots) in enumerate(sym_full.basis(n, w)):
        obj = string[-1].cod if string else len(slots)
        if obj == 1:
            entries[(idx[(string, slots)], j)] = field.one
    return SparseMatrix(field, sym_quot.dim(n, w), sym_full.dim(n, w),
                        entries)


def forget_string(string):
    return tuple(f.underlying() for f in string)


def phi_matrix(sym_quot, gamma_ideal, n, w):
    """The comparison map: forget the fiber orders, tensor untouched, unit
    module slot."""
    field = sym_quot.field
    idx = gamma_ideal.index(n, w)
    entries = {}
    for j, (string, slots) in enumerate(sym_quot.basis(n, w)):
        target = (forget_string(string), slots, 0)
        entries[(idx[target], j)] = field.one
    return SparseMatrix(field, gamma_ideal.dim(n, w), sym_quot.dim(n, w),
                        entries)


class ComparisonData:
    """The surjection NCS -> NC-Gamma(I, k) at one weight with its short
    exact sequence, certificates included."""

    def __init__(self, alg, w, top):
        self.alg = alg
        self.w = w
        self.top = top
        self.sym = SymmetricComplex(alg, "full")
        self.quot = SymmetricComplex(alg, "quotient")
        self.gamma = GammaComplex(alg, Coefficients(alg, "k"), "I")
        self.sym_chain = self.sym.slice(w, top)
        self.quot_chain = self.quot.slice(w, top)
        self.gamma_chain = self.gamma.slice(w, top)
        self.q = [quotient_matrix(self.sym, self.quot, n, w)
                  for n in range(top + 1)]
        self.phi = [phi_matrix(self.quot, self.gamma, n, w)
                    for n in range(top + 1)]
        self.proj = [self.phi[n].mul(self.q[n]) for n in range(top + 1)]
        self._kernel = None

    def q_is_chain_map(self):
        for n in range(1, self.top + 1):
            if (self.q[n - 1].mul(self.sym_chain.boundary(n))
                    != self.quot_chain.boundary(n).mul(self.q[n])):
                return False
        return True

    def phi_is_chain_map(self):
        for n in range(1, self.top + 1):
            if (self.phi[n - 1].mul(self.quot_chain.boundary(n))
                    != self.gamma_chain.boundary(n).mul(self.phi[n])):
                return False
        return True

    def surjective(self):
        for n in range(self.top + 1):
            if Echelon(self.proj[n]).rank != self.gamma_chain.dims[n]:
                return False
        return True

    def kernel(self):
        """(inclusion columns, ChainSlice) of ker(phi o q)."""
        if self._kernel is None:
            reps = [kernel_basis(p) for p in self.proj]
            bounds = {}
            for n in range(1, self.top + 1):
                image = self.sym_chain.boundary(n).mul(reps[n])
                bounds[n] = solve_batch(reps[n - 1], image)[0]
            chain = ChainSlice(self.alg.field, [r.ncols for r in reps],
                               bounds)
            self._kernel = (reps, chain)
        return self._kernel

    def ses(self):
        """(inc, proj, sub, total, quot) in the shape the chain machinery
        expects."""
        reps, kchain = self.kernel()
        return reps, self.proj, kchain, self.sym_chain, self.gamma_chain


def reduced_symmetric_homology(alg, max_n, max_w, normalized=True):
    """Reduced symmetric homology dimensions per (degree, weight)."""
    table = {}
    for w in range(max_w + 1):
        sym = SymmetricComplex(alg, "full", normalized)
        dims = sym.slice(w, max_n + 1).homology().dims()
        for n in range(max_n + 1):
            table[(n, w)] = dims[n]
    return table


def hs0_consistency(alg, max_w):
    """The degree-zero law: dim of reduced HS_0 in weight w, plus 1 at
    w = 0, equals the dimension of the weight-w piece of the algebra."""
    out = []
    for w in range(max_w + 1):
        sym = SymmetricComplex(alg, "full")
        h0 = sym.slice(w, 1).homology().dim(0)
        expected = alg.dim_of_weight(w)
        out.append((w, h0 + (1 if w == 0 else 0), expected))
    return out
