"""The category of finite sets and surjections, the Robinson-Whitehouse
complex per (degree, weight), the pruning map and gamma homology tables.

A degree-n basis element is (string, slots, module index) where string is a
tuple (f_1, .., f_n) of composable surjections whose final codomain is the
one-point set, and slots is a basic tensor on the initial domain.  Strings
of the normalized complex contain no identity.

Weight truncation: a slice (n, w) keeps only strings whose initial domain x
has x <= w.  For the ideal-tensor variant this loses nothing (every slot
has weight >= 1); for the full-algebra variant it is a genuine subcomplex
truncation (faces never enlarge the initial domain) and every report is to
be read as such.

The full-algebra slices grow quickly (strings times basic tensors), so the
pruning certificates can also be checked in a streaming fashion, one
generator at a time, without materializing any matrix.
"""

from functools import lru_cache
from itertools import product as iproduct

from .chains import ChainSlice
from .sparse import SparseMatrix, kernel_basis, solve_batch


class Surjection:
    """A surjection {1..x} -> {1..y} stored by its image tuple."""

    __slots__ = ("cod", "images", "_hash", "_is_id")

    def __init__(self, cod, images):
        self.cod = cod
        self.images = tuple(images)
        self._hash = hash((cod, self.images))
        self._is_id = cod == len(self.images) and all(
            v == i for i, v in enumerate(self.images, start=1))

    @property
    def dom(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def is_identity(self):
        return self._is_id

    def after(self, other):
        """Composite self o other."""
        if other.cod != self.dom:
            raise ValueError("surjections not composable")
        return _compose(self, other)

    def fiber(self, j):
        return tuple(i for i, v in enumerate(self.images, start=1) if v == j)

    def __eq__(self, other):
        return (isinstance(other, Surjection)
                and self.cod == other.cod and self.images == other.images)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.cod, self.images) < (other.cod, other.images)

    def __repr__(self):
        return f"Surjection({self.dom}->{self.cod}, {self.images})"


@lru_cache(maxsize=None)
def _compose(g, f):
    return Surjection(g.cod, tuple(g.images[v - 1] for v in f.images))


@lru_cache(maxsize=None)
def surjections(x, y):
    """All surjections {1..x} -> {1..y}, sorted; count is y! S(x, y)."""
    if x < y or y < 1:
        raise ValueError(f"no surjections {x} -> {y}")
    out = []
    for images in iproduct(range(1, y + 1), repeat=x):
        if len(set(images)) == y:
            out.append(Surjection(y, images))
    return tuple(out)


@lru_cache(maxsize=None)
def strings_to_point(x, n, normalized=True):
    """Composable strings (f_1, .., f_n) from {1..x} with final codomain the
    one-point set; identities excluded when normalized."""
    if n == 0:
        return ((),) if x == 1 else ()
    out = []
    for y in range(1, x + 1):
        for f in surjections(x, y):
            if normalized and f.is_identity():
                continue
            for rest in strings_to_point(y, n - 1, normalized):
                out.append((f,) + rest)
    return tuple(out)


def induced_tensor_map(alg, f, slots):
    """Image of a basic tensor under a surjection: output slot j is the
    product over the fiber of j.  Returns [(out_slots, coeff)] terms."""
    if len(slots) != f.dom:
        raise ValueError("tensor length does not match the surjection")
    field = alg.field
    terms = [((), field.one)]
    for j in range(1, f.cod + 1):
        prod = [(0, field.one)]
        for i in f.fiber(j):
            prod = [
                (l, field.mul(c, cl))
                for slot_val, c in prod
                for l, cl in alg.slot_product(slot_val, slots[i - 1])
            ]
        terms = [(out + (l,), field.mul(c, cl))
                 for out, c in terms for l, cl in prod]
    return terms


@lru_cache(maxsize=None)
def ith_component(string, i):
    """The part of (f_1, .., f_n) lying over element i of the domain of the
    last morphism: the restricted, order-preservingly re-indexed string of
    f_1 .. f_{n-1}, plus the ordered preimage of i in the initial domain.

    For a length-1 string the component is the empty string at the
    one-point set and the preimage is {i}.
    """
    n = len(string)
    if n == 0:
        raise ValueError("empty string has no components")
    last_dom = string[-1].dom
    if not 1 <= i <= last_dom:
        raise ValueError(f"component index {i} out of range")
    kept = {i}
    kept_chain = [kept]  # kept subsets, from the domain of f_n downwards
    for f in reversed(string[:-1]):
        kept = {p for p in range(1, f.dom + 1) if f(p) in kept}
        kept_chain.append(kept)
    kept_chain.reverse()  # kept_chain[j] is the kept subset of dom(f_{j+1})
    component = []
    for j, f in enumerate(string[:-1]):
        src = sorted(kept_chain[j])
        dst = sorted(kept_chain[j + 1])
        relabel = {v: t for t, v in enumerate(dst, start=1)}
        component.append(Surjection(len(dst), tuple(relabel[f(p)]
                                                    for p in src)))
    return tuple(component), tuple(sorted(kept_chain[0]))


class GammaComplex:
    """Slice-by-slice view of the surjection-string complex for one algebra,
    one coefficient module and one tensor variant ('I' or 'A')."""

    def __init__(self, alg, coeffs, variant="I", normalized=True):
        if variant not in ("I", "A"):
            raise ValueError("variant must be 'I' or 'A'")
        self.alg = alg
        self.coeffs = coeffs
        self.variant = variant
        self.normalized = normalized
        self.field = alg.field
        self._basis = {}
        self._boundary = {}
        self._tensor_cache = {}
        self._tensors_by_xw = {}

    def _tensors(self, x, w):
        """Basic tensors of length x and weight w in the chosen variant."""
        key = (x, w)
        if key not in self._tensors_by_xw:
            lo = 0 if self.variant == "A" else 1
            values = range(lo, self.alg.dim_ideal + 1)
            self._tensors_by_xw[key] = tuple(
                slots for slots in iproduct(values, repeat=x)
                if sum(self.alg.slot_weight(v) for v in slots) == w)
        return self._tensors_by_xw[key]

    def iter_basis(self, n, w):
        """Basis elements in canonical order, without storing them."""
        for x in range(1, w + 1):
            for string in strings_to_point(x, n, self.normalized):
                for m in self.coeffs.basis():
                    rest = w - self.coeffs.weight(m)
                    if rest < 0:
                        continue
                    for slots in self._tensors(x, rest):
                        yield (string, slots, m)

    def basis(self, n, w):
        key = (n, w)
        if key not in self._basis:
            self._basis[key] = tuple(sorted(self.iter_basis(n, w),
                                            key=_basis_sort_key))
        return self._basis[key]

    def index(self, n, w):
        return {k: i for i, k in enumerate(self.basis(n, w))}

    def dim(self, n, w):
        return len(self.basis(n, w))

    def _is_basis_string(self, string):
        return not self.normalized or all(not f._is_id for f in string)

    def _apply_tensor_map(self, f, slots):
        key = (f, slots)
        if key not in self._tensor_cache:
            self._tensor_cache[key] = induced_tensor_map(self.alg, f, slots)
        return self._tensor_cache[key]

    def face_terms(self, key, i):
        """The i-th face of a generator; in the normalized complex, strings
        containing an identity are dropped."""
        string, slots, m = key
        n = len(string)
        field = self.field
        out = []
        if i == 0:
            new_string = string[1:]
            if self._is_basis_string(new_string):
                for new_slots, c in self._apply_tensor_map(string[0], slots):
                    out.append(((new_string, new_slots, m), c))
        elif i < n:
            comp = _compose(string[i], string[i - 1])
            if not (self.normalized and comp._is_id):
                new_string = string[:i - 1] + (comp,) + string[i + 1:]
                out.append(((new_string, slots, m), field.one))
        else:
            last_dom = string[-1].dom
            for t in range(1, last_dom + 1):
                comp_string, preimage = ith_component(string, t)
                if not self._is_basis_string(comp_string):
                    continue
                kept = set(preimage)
                new_slots = tuple(slots[p - 1] for p in preimage)
                mods = [(m, field.one)]
                for p in range(1, len(slots) + 1):
                    if p in kept:
                        continue
                    mods = [
                        (m2, field.mul(c, c2))
                        for m1, c in mods
                        for m2, c2 in self.coeffs.act(slots[p - 1], m1)
                    ]
                    if not mods:
                        break
                for m2, c in mods:
                    out.append(((comp_string, new_slots, m2), c))
        return out

    def boundary_terms(self, key):
        """All terms of the alternating-sum boundary of one generator."""
        field = self.field
        out = {}
        sign = field.one
        n = len(key[0])
        for i in range(n + 1):
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
            f = self.field
            idx = self.index(n - 1, w)
            entries = {}
            for j, bkey in enumerate(self.basis(n, w)):
                for tkey, c in self.boundary_terms(bkey).items():
                    entries[(idx[tkey], j)] = c
            self._boundary[key] = SparseMatrix(
                f, len(idx), self.dim(n, w), entries)
        return self._boundary[key]

    def slice(self, w, top):
        dims = [self.dim(n, w) for n in range(top + 1)]
        bounds = {n: self.boundary(n, w) for n in range(1, top + 1)}
        return ChainSlice(self.field, dims, bounds)


def _basis_sort_key(key):
    string, slots, m = key
    return (len(slots),
            tuple((f.cod, f.images) for f in string),
            slots, m)


# -- pruning -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _prune_string(string, kept):
    """Restrict a string to the kept domain positions, re-indexing every
    domain and codomain order-preservingly."""
    new_string = []
    current = kept
    for f in string:
        image = sorted({f(p) for p in current})
        relabel = {v: t for t, v in enumerate(image, start=1)}
        new_string.append(Surjection(len(image), tuple(relabel[f(p)]
                                                       for p in current)))
        current = image
    return tuple(new_string)


def prune_generator(key):
    """Prune the trivial tensor slots out of a generator of the full-algebra
    complex: restrict every morphism to the positions carrying ideal slots,
    re-index order-preservingly, and keep the ideal slots.  Returns the
    pruned (string, slots, module) or None when every slot is trivial."""
    string, slots, m = key
    kept = tuple(p for p, v in enumerate(slots, start=1) if v != 0)
    if not kept:
        return None
    if len(kept) == len(slots):
        return key
    return (_prune_string(string, kept),
            tuple(slots[p - 1] for p in kept), m)


def prune_normalized(key):
    """Pruned class in the normalized ideal-variant complex: None when the
    tensor is all-trivial or the pruned string picks up an identity."""
    pruned = prune_generator(key)
    if pruned is None or any(f._is_id for f in pruned[0]):
        return None
    return pruned


def prune_matrix(full, ideal, n, w):
    """Matrix of the pruning map from the full-variant slice to the
    ideal-variant slice at (n, w)."""
    field = full.field
    idx = ideal.index(n, w)
    entries = {}
    pruner = prune_normalized if full.normalized else prune_generator
    for j, key in enumerate(full.basis(n, w)):
        pruned = pruner(key)
        if pruned is not None:
            entries[(idx[pruned], j)] = field.one
    return SparseMatrix(field, ideal.dim(n, w), full.dim(n, w), entries)


class PruningData:
    """The pruning chain map with its certificates, per weight, built as
    matrices; the kernel subcomplex is assembled on demand."""

    def __init__(self, alg, coeffs, w, top, normalized=True):
        self.full = GammaComplex(alg, coeffs, "A", normalized)
        self.ideal = GammaComplex(alg, coeffs, "I", normalized)
        self.w = w
        self.top = top
        self.full_chain = self.full.slice(w, top)
        self.ideal_chain = self.ideal.slice(w, top)
        self.prune = [prune_matrix(self.full, self.ideal, n, w)
                      for n in range(top + 1)]
        self.include = [self._inclusion(n) for n in range(top + 1)]
        self._kernel = None

    def _inclusion(self, n):
        field = self.full.field
        idx = self.full.index(n, self.w)
        entries = {}
        for j, key in enumerate(self.ideal.basis(n, self.w)):
            entries[(idx[key], j)] = field.one
        return SparseMatrix(field, self.full.dim(n, self.w),
                            self.ideal.dim(n, self.w), entries)

    def kernel(self):
        """(representative columns, ChainSlice) of ker(P) with the restricted
        boundary; solving certifies that the boundary preserves the kernel."""
        if self._kernel is None:
            reps = [kernel_basis(p) for p in self.prune]
            bounds = {}
            for n in range(1, self.top + 1):
                image = self.full_chain.boundary(n).mul(reps[n])
                bounds[n] = solve_batch(reps[n - 1], image)[0]
            chain = ChainSlice(self.full.field, [r.ncols for r in reps],
                               bounds)
            self._kernel = (reps, chain)
        return self._kernel

    def prune_is_chain_map(self):
        for n in range(1, self.top + 1):
            lhs = self.prune[n - 1].mul(self.full_chain.boundary(n))
            rhs = self.ideal_chain.boundary(n).mul(self.prune[n])
            if lhs != rhs:
                return False
        return True

    def retraction_is_identity(self):
        for n in range(self.top + 1):
            comp = self.prune[n].mul(self.include[n])
            if comp != SparseMatrix.identity(self.full.field, comp.ncols):
                return False
        return True

    def splitting_dims_hold(self):
        from .sparse import Echelon
        for n in range(self.top + 1):
            rank_p = Echelon(self.prune[n]).rank
            if rank_p != self.ideal_chain.dims[n]:
                return False
            kernel_dim = self.full_chain.dims[n] - rank_p
            if (self.full_chain.dims[n]
                    != self.ideal_chain.dims[n] + kernel_dim):
                return False
        return True


def prune_split_certificates(alg, coeffs, w, top, normalized=True):
    """Streamed check of the pruning-splitting certificates at one weight,
    one generator at a time (no matrices are materialized, so this scales
    to slices far beyond what PruningData can hold).

    Checks, exactly: the retraction law "prune o include = id", pruning
    commuting with the boundary on every generator, surjectivity of the
    pruning map, and the dimension identity of the splitting.  Returns a
    dict of booleans plus the per-degree (full, ideal) dimensions.
    """
    full = GammaComplex(alg, coeffs, "A", normalized)
    ideal = GammaComplex(alg, coeffs, "I", normalized)
    field = alg.field
    zero = field.zero
    pruner = prune_normalized if normalized else prune_generator
    out = {"retraction_identity": True, "chain_map": True,
           "surjective": True, "dims": []}
    for n in range(top + 1):
        ideal_keys = set()
        ideal_dim = 0
        for key in ideal.iter_basis(n, w):
            ideal_dim += 1
            ideal_keys.add(key)
            if pruner(key) != key:
                out["retraction_identity"] = False
        hit = set()
        full_dim = 0
        rhs_cache = {}
        for g in full.iter_basis(n, w):
            full_dim += 1
            slots = g[1]
            if 0 not in slots:
                # unit-free generators: pruning is the identity and the two
                # complexes share the face code, so the identity is immediate
                hit.add(g)
                continue
            pg = pruner(g)
            if pg is not None:
                hit.add(pg)
            if n >= 1:
                lhs = {}
                for tkey, c in full.boundary_terms(g).items():
                    pt = pruner(tkey)
                    if pt is None:
                        continue
                    s = field.add(lhs.get(pt, zero), c)
                    if s == zero:
                        lhs.pop(pt, None)
                    else:
                        lhs[pt] = s
                if pg is None:
                    rhs = {}
                elif pg in rhs_cache:
                    rhs = rhs_cache[pg]
                else:
                    rhs = rhs_cache[pg] = ideal.boundary_terms(pg)
                if lhs != rhs:
                    out["chain_map"] = False
        if hit != ideal_keys:
            out["surjective"] = False
        out["dims"].append((full_dim, ideal_dim))
    return out


def gamma_homology(alg, coeffs, variant, max_n, max_w, normalized=True):
    """Gamma homology dimensions per (degree, weight) computed from the
    surjection-string complex of the chosen variant."""
    gc = GammaComplex(alg, coeffs, variant, normalized)
    table = {}
    for w in range(max_w + 1):
        dims = gc.slice(w, max_n + 1).homology().dims()
        for n in range(max_n + 1):
            table[(n, w)] = dims[n]
    return table
