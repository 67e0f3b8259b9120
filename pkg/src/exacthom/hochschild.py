"""The Hochschild complex with coefficients and its subquotients: the
degenerate, normalized, ideal-only and shuffle pieces, the Eulerian
splitting, and the normalized Harrison complex with its comparison maps.

Basis elements of degree n in weight w are pairs (module index, slot tuple)
where slots take basic values (0 = unit, i = generator b_i) and the weights
add up to w.  Bases are ordered lexicographically so all matrices are
reproducible.
"""

from itertools import product as iproduct

from .chains import ChainSlice
from .groupalg import eulerian_idempotent, total_shuffle
from .sparse import Echelon, SparseMatrix, image_pivot_columns, solve_batch


class CertificationError(AssertionError):
    """An exact identity asserted by the theory failed on real data."""


class HochschildComplex:
    """Slice-by-slice view of C(A, M) for a weight-graded algebra.

    Bases, boundary matrices and operator actions are cached per (degree,
    weight); everything is exact and deterministic.
    """

    def __init__(self, alg, coeffs):
        self.alg = alg
        self.coeffs = coeffs
        self.field = alg.field
        self._basis = {}
        self._boundary = {}

    # -- bases ---------------------------------------------------------------

    def basis(self, n, w):
        key = (n, w)
        if key not in self._basis:
            alg = self.alg
            slot_values = range(alg.dim_ideal + 1)
            out = []
            for m in self.coeffs.basis():
                base_w = self.coeffs.weight(m)
                if base_w > w:
                    continue
                for slots in iproduct(slot_values, repeat=n):
                    total = base_w + sum(alg.slot_weight(v) for v in slots)
                    if total == w:
                        out.append((m, slots))
            out.sort()
            self._basis[key] = tuple(out)
        return self._basis[key]

    def index(self, n, w):
        return {k: i for i, k in enumerate(self.basis(n, w))}

    def dim(self, n, w):
        return len(self.basis(n, w))

    # -- boundary -------------------------------------------------------------

    def face_terms(self, key, i, n):
        """The i-th face of a basis element, as [(key, coeff)] terms."""
        m, slots = key
        alg = self.alg
        one = self.field.one
        if i == 0:
            return [((m2, slots[1:]), c)
                    for m2, c in self.coeffs.act(slots[0], m)]
        if i < n:
            return [((m, slots[:i - 1] + (l,) + slots[i + 1:]), c)
                    for l, c in alg.slot_product(slots[i - 1], slots[i])]
        return [((m2, slots[:-1]), c)
                for m2, c in self.coeffs.act(slots[-1], m)]

    def boundary(self, n, w):
        key = (n, w)
        if key not in self._boundary:
            f = self.field
            idx = self.index(n - 1, w)
            entries = {}
            for j, bkey in enumerate(self.basis(n, w)):
                sign = f.one
                for i in range(n + 1):
                    for tkey, c in self.face_terms(bkey, i, n):
                        r = idx[tkey]
                        s = f.add(entries.get((r, j), f.zero), f.mul(sign, c))
                        if s == f.zero:
                            entries.pop((r, j), None)
                        else:
                            entries[(r, j)] = s
                    sign = f.neg(sign)
            self._boundary[key] = SparseMatrix(
                f, len(idx), self.dim(n, w), entries)
        return self._boundary[key]

    def full_slice(self, w, top):
        dims = [self.dim(n, w) for n in range(top + 1)]
        bounds = {n: self.boundary(n, w) for n in range(1, top + 1)}
        return ChainSlice(self.field, dims, bounds)

    # -- operator actions -------------------------------------------------------

    def action_matrix(self, elem, n, w):
        """The action of a group algebra element on the n slot positions."""
        if elem.n != n:
            raise ValueError("group algebra element size does not match degree")
        f = self.field
        idx = self.index(n, w)
        entries = {}
        for j, (m, slots) in enumerate(self.basis(n, w)):
            for perm, c in elem.coeffs.items():
                r = idx[(m, perm.permute_slots(slots))]
                s = f.add(entries.get((r, j), f.zero), c)
                if s == f.zero:
                    entries.pop((r, j), None)
                else:
                    entries[(r, j)] = s
        return SparseMatrix(f, len(idx), len(idx), entries)

    def idempotent_matrix(self, n, w, i):
        """Matrix of e_n^(i); degree 0 carries the whole module in the i=1
        piece, and e_n^(i) = 0 for i > n."""
        d = self.dim(n, w)
        if n == 0:
            if i == 1:
                return SparseMatrix.identity(self.field, d)
            return SparseMatrix.zeros(self.field, d, d)
        if i > n:
            return SparseMatrix.zeros(self.field, d, d)
        return self.action_matrix(eulerian_idempotent(self.field, n, i), n, w)

    def shuffle_matrix(self, n, w):
        """Matrix of the total shuffle operator (zero for n < 2)."""
        d = self.dim(n, w)
        if n < 2:
            return SparseMatrix.zeros(self.field, d, d)
        return self.action_matrix(total_shuffle(self.field, n), n, w)


# -- structural subcomplexes ---------------------------------------------------

def is_degenerate(key):
    return any(v == 0 for v in key[1])


def is_ideal_only(key):
    return all(v != 0 for v in key[1])


def _structural_indices(hc, w, top, keep):
    return [[j for j, k in enumerate(hc.basis(n, w)) if keep(k)]
            for n in range(top + 1)]


def _restrict_boundary(hc, n, w, rows, cols, require_closed=True):
    """Submatrix of the full boundary on selected coordinates; complains if
    a column leaks outside the selected rows."""
    full = hc.boundary(n, w)
    rowpos = {r: t for t, r in enumerate(rows)}
    colset = {c: t for t, c in enumerate(cols)}
    entries = {}
    for (r, c), v in full.entries.items():
        j = colset.get(c)
        if j is None:
            continue
        i = rowpos.get(r)
        if i is None:
            if require_closed:
                raise CertificationError(
                    f"boundary leaves the subcomplex at degree {n}, weight {w}")
            continue
        entries[(i, j)] = v
    return SparseMatrix(hc.field, len(rows), len(cols), entries)


def structural_slice(hc, w, top, keep, require_closed=True):
    """ChainSlice spanned by the basis elements selected by `keep`,
    together with their positions in the full basis."""
    indices = _structural_indices(hc, w, top, keep)
    dims = [len(ix) for ix in indices]
    bounds = {
        n: _restrict_boundary(hc, n, w, indices[n - 1], indices[n],
                              require_closed)
        for n in range(1, top + 1)
    }
    return ChainSlice(hc.field, dims, bounds), indices


def degenerate_slice(hc, w, top):
    return structural_slice(hc, w, top, is_degenerate)


def ideal_slice(hc, w, top):
    """The complex C(I, M) sitting inside C(A, M) on unit-free tensors."""
    return structural_slice(hc, w, top, is_ideal_only)


def normalized_slice(hc, w, top):
    """The normalized complex: quotient of the full complex by the
    degenerate part, in coordinates of the unit-free basis elements."""
    indices = _structural_indices(hc, w, top, is_ideal_only)
    dims = [len(ix) for ix in indices]
    bounds = {
        n: _restrict_boundary(hc, n, w, indices[n - 1], indices[n],
                              require_closed=False)
        for n in range(1, top + 1)
    }
    return ChainSlice(hc.field, dims, bounds), indices


def aug_split_iso(hc, w, top):
    """Mutually inverse identity matrices between the normalized slice and
    the ideal-only slice, certified to intertwine the two boundaries."""
    norm, _ = normalized_slice(hc, w, top)
    ideal, _ = ideal_slice(hc, w, top)
    for n in range(1, top + 1):
        if norm.boundary(n) != ideal.boundary(n):
            raise CertificationError(
                f"normalized and ideal-only boundaries differ at degree {n}")
    fwd = [SparseMatrix.identity(hc.field, d) for d in norm.dims]
    return fwd, fwd, norm, ideal


# -- image subcomplexes (shuffle, Eulerian) -------------------------------------

def _image_slice(hc, w, top, matrix_of):
    """ChainSlice of the image of a per-degree projector/operator family,
    with representative columns in full coordinates.

    The boundary is expressed in the chosen image bases; solving fails
    loudly if the image is not closed under the boundary.
    """
    reps = []
    for n in range(top + 1):
        mat = matrix_of(n)
        piv = image_pivot_columns(mat)
        reps.append(mat.select_columns(piv))
    dims = [r.ncols for r in reps]
    bounds = {}
    for n in range(1, top + 1):
        image = hc.boundary(n, w).mul(reps[n])
        try:
            bounds[n], _ = solve_batch(reps[n - 1], image)
        except ValueError as exc:
            raise CertificationError(
                f"boundary does not preserve the subcomplex at degree {n}, "
                f"weight {w}: {exc}") from None
    return ChainSlice(hc.field, dims, bounds), reps


def shuffle_slice(hc, w, top):
    """The shuffle subcomplex: image of the total shuffle operators."""
    return _image_slice(hc, w, top, lambda n: hc.shuffle_matrix(n, w))


def idempotent_slice(hc, w, top, i):
    """The i-th Eulerian summand e^(i) C(A, M)."""
    return _image_slice(hc, w, top, lambda n: hc.idempotent_matrix(n, w, i))


def hodge_commutes(hc, w, top, i):
    """Exact check that the boundary commutes with the e^(i) action."""
    for n in range(1, top + 1):
        b = hc.boundary(n, w)
        lhs = b.mul(hc.idempotent_matrix(n, w, i))
        rhs = hc.idempotent_matrix(n - 1, w, i).mul(b)
        if lhs != rhs:
            return False
    return True


def idempotent_dims_complete(hc, w, top):
    """Exact check that the Eulerian slice dimensions add up to the full
    slice dimension in every degree."""
    for n in range(top + 1):
        total = 0
        for i in range(1, max(n, 1) + 1):
            piv = image_pivot_columns(hc.idempotent_matrix(n, w, i))
            total += len(piv)
        if total != hc.dim(n, w):
            return False
    return True


# -- the Harrison quotient -------------------------------------------------------

class HarrisonQuotient:
    """C(A, M) / im(sh), in coordinates given by a complement of the shuffle
    image inside the standard basis."""

    def __init__(self, hc, w, top):
        self.hc = hc
        self.w = w
        self.top = top
        field = hc.field
        self.shuffle_reps = []
        self.class_indices = []   # positions of the chosen complement keys
        self._solvers = []
        for n in range(top + 1):
            smat = hc.shuffle_matrix(n, w)
            piv = image_pivot_columns(smat)
            sreps = smat.select_columns(piv)
            full_id = SparseMatrix.identity(field, hc.dim(n, w))
            ech = Echelon(sreps.hstack(full_id))
            classes = [c - sreps.ncols for c in ech.pivot_cols
                       if c >= sreps.ncols]
            self.shuffle_reps.append(sreps)
            self.class_indices.append(classes)
        dims = [len(c) for c in self.class_indices]
        bounds = {}
        for n in range(1, top + 1):
            cols = hc.boundary(n, w).select_columns(
                [c for c in self.class_indices[n]])
            bounds[n] = self.project(n - 1, cols)
        self.chain = ChainSlice(field, dims, bounds)

    def project(self, n, vectors):
        """Quotient coordinates of full-coordinate columns at degree n."""
        sreps = self.shuffle_reps[n]
        classes = self.class_indices[n]
        field = self.hc.field
        basis = sreps.hstack(SparseMatrix(
            field, self.hc.dim(n, self.w), len(classes),
            {(r, t): field.one for t, r in enumerate(classes)}))
        sol, _ = solve_batch(basis, vectors)
        return SparseMatrix(
            field, len(classes), vectors.ncols,
            {(i - sreps.ncols, j): v
             for (i, j), v in sol.entries.items() if i >= sreps.ncols})


def harrison_quotient_slice(hc, w, top):
    return HarrisonQuotient(hc, w, top)


def barr_map(hc, w, top):
    """The composite e^(1) C(A,M) -> C(A,M) -> C(A,M)/Sh as per-degree
    matrices, with the slices on both sides.

    Over a field of characteristic 0 (or large enough p) this is an
    isomorphism in every degree; the caller checks the rank identity.
    """
    e1_chain, e1_reps = idempotent_slice(hc, w, top, 1)
    quot = harrison_quotient_slice(hc, w, top)
    mats = [quot.project(n, e1_reps[n]) for n in range(top + 1)]
    return mats, e1_chain, quot


# -- normalized Harrison complex ---------------------------------------------------

class NormalizedHarrison:
    """The splitting e^(i) C(A,M) = e^(i) C(I,M) + e^(i) D(A,M) with the
    comparison maps materialized as matrices.

    Per degree: columns of `c_reps`, `i_reps`, `d_reps` are bases (in full
    slice coordinates) of e^(i)C(A,M), e^(i)C(I,M) and e^(i)D(A,M); the
    maps inclusion/quotient/collapse are computed by solving against these
    bases, and the composite collapse o quotient o inclusion is certified
    to be the identity.
    """

    def __init__(self, hc, w, top, i=1):
        self.hc = hc
        self.w = w
        self.top = top
        self.i = i
        field = hc.field
        self.c_reps, self.i_reps, self.d_reps = [], [], []
        self.inclusion, self.quotient, self.collapse = [], [], []
        self.quot_sections = []
        for n in range(top + 1):
            pmat = hc.idempotent_matrix(n, w, i)
            keys = hc.basis(n, w)
            ideal_cols = [j for j, k in enumerate(keys) if is_ideal_only(k)]
            degen_cols = [j for j, k in enumerate(keys) if is_degenerate(k)]
            c_reps = pmat.select_columns(image_pivot_columns(pmat))
            p_ideal = pmat.select_columns(ideal_cols)
            i_reps = p_ideal.select_columns(image_pivot_columns(p_ideal))
            p_degen = pmat.select_columns(degen_cols)
            d_reps = p_degen.select_columns(image_pivot_columns(p_degen))
            if i_reps.ncols + d_reps.ncols != c_reps.ncols:
                raise CertificationError(
                    f"e^({i}) splitting dimension mismatch at degree {n}: "
                    f"{i_reps.ncols} + {d_reps.ncols} != {c_reps.ncols}")
            id_pair = i_reps.hstack(d_reps)
            if Echelon(id_pair).rank != c_reps.ncols:
                raise CertificationError(
                    f"e^({i}) ideal and degenerate parts are not independent "
                    f"at degree {n}")
            # inclusion of the ideal part, in e^(i)C coordinates
            inc, _ = solve_batch(c_reps, i_reps)
            # quotient by the degenerate part: classes of the columns of
            # c_reps extending d_reps
            ech = Echelon(d_reps.hstack(c_reps))
            ext = [c - d_reps.ncols for c in ech.pivot_cols
                   if c >= d_reps.ncols]
            section = SparseMatrix(
                field, c_reps.ncols, len(ext),
                {(r, t): field.one for t, r in enumerate(ext)})
            dc = d_reps.hstack(c_reps.select_columns(ext))
            sol, _ = solve_batch(dc, c_reps)
            quo = SparseMatrix(
                field, len(ext), c_reps.ncols,
                {(r - d_reps.ncols, j): v
                 for (r, j), v in sol.entries.items() if r >= d_reps.ncols})
            # collapse of the quotient onto the ideal part
            idp = i_reps.hstack(d_reps)
            sol, _ = solve_batch(idp, c_reps.select_columns(ext))
            col = SparseMatrix(
                field, i_reps.ncols, len(ext),
                {(r, j): v for (r, j), v in sol.entries.items()
                 if r < i_reps.ncols})
            self.c_reps.append(c_reps)
            self.i_reps.append(i_reps)
            self.d_reps.append(d_reps)
            self.inclusion.append(inc)
            self.quotient.append(quo)
            self.collapse.append(col)
            self.quot_sections.append(section)
        self.c_chain = self._chain(self.c_reps)
        self.i_chain = self._chain(self.i_reps)
        self.d_chain = self._chain(self.d_reps)
        self.quot_chain = self._quotient_chain()

    def _chain(self, reps):
        hc, w = self.hc, self.w
        dims = [r.ncols for r in reps]
        bounds = {}
        for n in range(1, self.top + 1):
            image = hc.boundary(n, w).mul(reps[n])
            try:
                bounds[n], _ = solve_batch(reps[n - 1], image)
            except ValueError as exc:
                raise CertificationError(
                    f"boundary leaves the e^({self.i}) subcomplex at degree "
                    f"{n}: {exc}") from None
        return ChainSlice(hc.field, dims, bounds)

    def _quotient_chain(self):
        dims = [q.nrows for q in self.quotient]
        bounds = {}
        for n in range(1, self.top + 1):
            bounds[n] = self.quotient[n - 1].mul(
                self.c_chain.boundary(n).mul(self.quot_sections[n]))
        return ChainSlice(self.hc.field, dims, bounds)

    def composite_is_identity(self):
        """The collapse-quotient-inclusion composite on e^(i)C(I,M)."""
        for n in range(self.top + 1):
            comp = self.collapse[n].mul(self.quotient[n]).mul(self.inclusion[n])
            if comp != SparseMatrix.identity(self.hc.field, comp.nrows):
                return False
        return True

    def kernel_dims_match_degenerate(self):
        """dim ker(collapse o quotient) equals the degenerate dimension."""
        for n in range(self.top + 1):
            fq = self.collapse[n].mul(self.quotient[n])
            ker = fq.ncols - Echelon(fq).rank
            if ker != self.d_reps[n].ncols:
                return False
        return True

    def maps_are_chain_maps(self):
        """All three comparison maps intertwine the boundaries."""
        for n in range(1, self.top + 1):
            bc, bi = self.c_chain.boundary(n), self.i_chain.boundary(n)
            bq = self.quot_chain.boundary(n)
            if self.inclusion[n - 1].mul(bi) != bc.mul(self.inclusion[n]):
                return False
            if self.quotient[n - 1].mul(bc) != bq.mul(self.quotient[n]):
                return False
            if self.collapse[n - 1].mul(bq) != bi.mul(self.collapse[n]):
                return False
        return True


def normalized_harrison(hc, w, top, i=1):
    return NormalizedHarrison(hc, w, top, i)


def harrison_homology(alg, coeffs, max_n, max_w):
    """Harrison homology dimensions per (degree, weight), computed through
    both pipelines (Hochschild-mod-shuffles and the e^(1) ideal complex)
    and certified to agree."""
    hc = HochschildComplex(alg, coeffs)
    table = {}
    for w in range(max_w + 1):
        top = max_n + 1
        quot = harrison_quotient_slice(hc, w, top)
        nh = normalized_harrison(hc, w, top, i=1)
        dims_quot = quot.chain.homology().dims()
        dims_ideal = nh.i_chain.homology().dims()
        for n in range(max_n + 1):
            if dims_quot[n] != dims_ideal[n]:
                raise CertificationError(
                    f"Harrison pipelines disagree at degree {n}, weight {w}: "
                    f"quotient {dims_quot[n]} vs e^(1) ideal {dims_ideal[n]}")
            table[(n, w)] = dims_quot[n]
    return table


def hochschild_homology(alg, coeffs, max_n, max_w):
    """Hochschild homology dimensions per (degree, weight)."""
    hc = HochschildComplex(alg, coeffs)
    table = {}
    for w in range(max_w + 1):
        dims = hc.full_slice(w, max_n + 1).homology().dims()
        for n in range(max_n + 1):
            table[(n, w)] = dims[n]
    return table
