"""Bounded chain-complex slices and their exact homology.

A ChainSlice holds the degrees 0..N of a complex in one internal weight.
Degrees above N are treated as zero, so the homology in degree N is only
meaningful when the caller built one degree more than it reports (the
theory-level drivers do exactly that).
"""

from dataclasses import dataclass, field as dc_field

from .sparse import Echelon, SparseMatrix, kernel_basis, solve_batch


class ChainSlice:
    """Degrees 0..N of a chain complex: basis sizes plus boundary matrices.

    boundaries[n] is the map from degree n to degree n-1, of shape
    dims[n-1] x dims[n].  The composite of consecutive boundaries is
    checked to vanish at construction.
    """

    def __init__(self, field, dims, boundaries, labels=None, check=True):
        self.field = field
        self.dims = list(dims)
        self.boundaries = dict(boundaries)
        self.labels = labels
        self.top = len(self.dims) - 1
        for n, mat in self.boundaries.items():
            if not 1 <= n <= self.top:
                raise ValueError(f"boundary degree {n} out of range")
            if mat.shape != (self.dims[n - 1], self.dims[n]):
                raise ValueError(
                    f"boundary {n} has shape {mat.shape}, "
                    f"expected {(self.dims[n - 1], self.dims[n])}"
                )
        if check:
            for n in range(2, self.top + 1):
                prod = self.boundary(n - 1).mul(self.boundary(n))
                if not prod.is_zero():
                    raise ValueError(f"d_{n-1} o d_{n} != 0: not a chain complex")

    def boundary(self, n):
        mat = self.boundaries.get(n)
        if mat is None:
            lo = self.dims[n - 1] if 1 <= n <= self.top + 1 else 0
            hi = self.dims[n] if 0 <= n <= self.top else 0
            mat = SparseMatrix.zeros(self.field, lo, hi)
        return mat

    def homology(self, with_reps=False):
        return HomologyReport.of(self, with_reps=with_reps)


@dataclass
class DegreeHomology:
    degree: int
    cycle_dim: int
    boundary_rank: int
    representatives: SparseMatrix | None = None

    @property
    def dim(self):
        return self.cycle_dim - self.boundary_rank


@dataclass
class HomologyReport:
    slice: ChainSlice
    degrees: dict = dc_field(default_factory=dict)

    @classmethod
    def of(cls, sl, with_reps=False):
        report = cls(sl)
        for n in range(sl.top + 1):
            report.degrees[n] = _degree_homology(sl, n, with_reps)
        return report

    def dim(self, n):
        return self.degrees[n].dim

    def dims(self):
        return [self.degrees[n].dim for n in range(self.slice.top + 1)]


def _cycles(sl, n):
    if n == 0:
        return SparseMatrix.identity(sl.field, sl.dims[0])
    return kernel_basis(sl.boundary(n))


def _degree_homology(sl, n, with_reps):
    cyc = _cycles(sl, n)
    bnd = sl.boundary(n + 1)
    brank = Echelon(bnd).rank
    reps = None
    if with_reps:
        # kernel columns extending a spanning set of the boundary space
        ech = Echelon(bnd.hstack(cyc))
        take = [c - bnd.ncols for c in ech.pivot_cols if c >= bnd.ncols]
        reps = cyc.select_columns(take)
    hom = DegreeHomology(n, cyc.ncols, brank, reps)
    if hom.dim < 0:
        raise AssertionError("negative homology dimension: broken complex")
    return hom


class HomologyBases:
    """Cached homology representatives of one slice, with coordinate solving."""

    def __init__(self, sl):
        self.slice = sl
        self._deg = {}

    def _data(self, n):
        if n not in self._deg:
            self._deg[n] = _degree_homology(self.slice, n, with_reps=True)
        return self._deg[n]

    def dim(self, n):
        return self._data(n).dim

    def reps(self, n):
        return self._data(n).representatives

    def coords(self, n, vectors):
        """Homology coordinates of cycle columns: express each column as a
        combination of the chosen representatives plus a boundary, and
        return the representative coefficients (dim H_n x ncols)."""
        reps = self.reps(n)
        bnd = self.slice.boundary(n + 1)
        sol, _ = solve_batch(reps.hstack(bnd), vectors)
        return SparseMatrix(
            self.slice.field, reps.ncols, vectors.ncols,
            {(i, j): v for (i, j), v in sol.entries.items() if i < reps.ncols},
        )


def check_chain_map(f, src, dst):
    """Verify f commutes with the boundaries: f_{n-1} d_n = d_n f_n."""
    for n in range(1, min(src.top, dst.top) + 1):
        lhs = f[n - 1].mul(src.boundary(n))
        rhs = dst.boundary(n).mul(f[n])
        if not lhs.sub(rhs).is_zero():
            return False
    return True


def induced_map_on_homology(f, src, dst, n, src_bases=None, dst_bases=None,
                            checked=False):
    """Matrix of H_n(f) with respect to the canonical homology bases."""
    if not checked and not check_chain_map(f, src, dst):
        raise ValueError("not a chain map")
    src_bases = src_bases or HomologyBases(src)
    dst_bases = dst_bases or HomologyBases(dst)
    images = f[n].mul(src_bases.reps(n))
    return dst_bases.coords(n, images)


def check_ses(inc, proj, sub, total, quot):
    """Verify 0 -> sub -> total -> quot -> 0 is a degreewise-exact sequence
    of chain maps."""
    if not check_chain_map(inc, sub, total):
        raise ValueError("inclusion is not a chain map")
    if not check_chain_map(proj, total, quot):
        raise ValueError("projection is not a chain map")
    for n in range(min(sub.top, total.top, quot.top) + 1):
        if not proj[n].mul(inc[n]).is_zero():
            raise ValueError(f"p o i != 0 in degree {n}")
        rk_i = Echelon(inc[n]).rank
        rk_p = Echelon(proj[n]).rank
        if rk_i != sub.dims[n]:
            raise ValueError(f"inclusion not injective in degree {n}")
        if rk_p != quot.dims[n]:
            raise ValueError(f"projection not surjective in degree {n}")
        if rk_i != total.dims[n] - rk_p:
            raise ValueError(f"im(i) != ker(p) in degree {n}")


def connecting_homomorphism(inc, proj, sub, total, quot, n,
                            sub_bases=None, quot_bases=None, checked=False):
    """Zig-zag connecting map H_n(quot) -> H_{n-1}(sub) of a short exact
    sequence: lift through proj, apply the boundary, pull back through inc."""
    if not checked:
        check_ses(inc, proj, sub, total, quot)
    sub_bases = sub_bases or HomologyBases(sub)
    quot_bases = quot_bases or HomologyBases(quot)
    reps = quot_bases.reps(n)
    lifts, _ = solve_batch(proj[n], reps)
    dlifts = total.boundary(n).mul(lifts)
    pulls, _ = solve_batch(inc[n - 1], dlifts)
    if not sub.boundary(n - 1).mul(pulls).is_zero():
        raise AssertionError("pulled-back chains are not cycles")
    return sub_bases.coords(n - 1, pulls)


def long_exact_sequence_nodes(inc, proj, sub, total, quot, max_n):
    """Exactness bookkeeping for the long exact sequence of a short exact
    sequence of complexes, through homological degree max_n.

    Returns a list of (description, incoming_rank, outgoing_kernel_dim)
    for every node whose incoming and outgoing maps are both determined
    by the slices (all complexes must extend to degree max_n + 1 for the
    top-degree homology to be meaningful).
    """
    check_ses(inc, proj, sub, total, quot)
    hs = HomologyBases(sub)
    ht = HomologyBases(total)
    hq = HomologyBases(quot)

    alpha = {}  # H_n(sub) -> H_n(total)
    beta = {}   # H_n(total) -> H_n(quot)
    delta = {}  # H_n(quot) -> H_{n-1}(sub)
    for n in range(max_n + 1):
        alpha[n] = induced_map_on_homology(inc, sub, total, n, hs, ht, checked=True)
        beta[n] = induced_map_on_homology(proj, total, quot, n, ht, hq, checked=True)
        if n >= 1:
            delta[n] = connecting_homomorphism(
                inc, proj, sub, total, quot, n, hs, hq, checked=True)

    def rk(m):
        return Echelon(m).rank

    nodes = []
    for n in range(max_n + 1):
        nodes.append((
            f"H_{n}(total)", rk(alpha[n]), ht.dim(n) - rk(beta[n])))
        out_rank = rk(delta[n]) if n >= 1 else 0  # H_0(quot) -> 0
        nodes.append((
            f"H_{n}(quot)", rk(beta[n]), hq.dim(n) - out_rank))
        if n + 1 <= max_n:
            nodes.append((
                f"H_{n}(sub)", rk(delta[n + 1]), hs.dim(n) - rk(alpha[n])))
    return nodes
