"""Sparse matrices over an exact field, with rank, kernel and batched solving.

The elimination engine builds the (unique) reduced row echelon form by
inserting rows one at a time, sparsest first, back-eliminating each new
pivot column from all earlier rows.  Pivot columns are therefore the
lex-first independent column set, which callers rely on when they extend
one basis by another (put the preferred columns first).
"""


class SparseMatrix:
    """Immutable sparse matrix: a dict from (row, col) to nonzero field elements."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field, nrows, ncols, entries=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        ents = {}
        if entries:
            zero = field.zero
            for (i, j), v in entries.items():
                if v == zero:
                    continue
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                ents[(i, j)] = v
        self.entries = ents

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        """Build from a dense list of row lists (entries coerced via field.of)."""
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ents = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                ents[(i, j)] = field.of(v)
        return cls(field, nrows, ncols, ents)

    @classmethod
    def from_columns(cls, field, nrows, cols):
        """Build from a list of column dicts {row: value}."""
        ents = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                ents[(i, j)] = v
        return cls(field, nrows, len(cols), ents)

    def get(self, i, j):
        return self.entries.get((i, j), self.field.zero)

    @property
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def rows_as_dicts(self):
        rows = [{} for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def cols_as_dicts(self):
        cols = [{} for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def transpose(self):
        return SparseMatrix(
            self.field, self.ncols, self.nrows,
            {(j, i): v for (i, j), v in self.entries.items()},
        )

    def add(self, other):
        self._check_shape(other)
        f = self.field
        ents = dict(self.entries)
        for k, v in other.entries.items():
            s = f.add(ents.get(k, f.zero), v)
            if s == f.zero:
                ents.pop(k, None)
            else:
                ents[k] = s
        return SparseMatrix(f, self.nrows, self.ncols, ents)

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def scale(self, c):
        f = self.field
        if c == f.zero:
            return SparseMatrix(f, self.nrows, self.ncols)
        return SparseMatrix(
            f, self.nrows, self.ncols,
            {k: f.mul(c, v) for k, v in self.entries.items()},
        )

    def mul(self, other):
        """Matrix product self @ other."""
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        zero = f.zero
        other_rows = other.rows_as_dicts()
        acc = {}
        for (i, k), a in self.entries.items():
            for j, b in other_rows[k].items():
                key = (i, j)
                s = f.add(acc.get(key, zero), f.mul(a, b))
                if s == zero:
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return SparseMatrix(f, self.nrows, other.ncols, acc)

    def apply(self, col):
        """Matrix-vector product on a column dict {row: value}."""
        f = self.field
        zero = f.zero
        cols = self.cols_as_dicts()
        acc = {}
        for k, a in col.items():
            for i, b in cols[k].items():
                s = f.add(acc.get(i, zero), f.mul(a, b))
                if s == zero:
                    acc.pop(i, None)
                else:
                    acc[i] = s
        return acc

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        ents = dict(self.entries)
        off = self.ncols
        for (i, j), v in other.entries.items():
            ents[(i, j + off)] = v
        return SparseMatrix(self.field, self.nrows, self.ncols + other.ncols, ents)

    def select_columns(self, cols):
        """Submatrix of the given columns, in the given order."""
        colset = {c: t for t, c in enumerate(cols)}
        ents = {}
        for (i, j), v in self.entries.items():
            t = colset.get(j)
            if t is not None:
                ents[(i, t)] = v
        return SparseMatrix(self.field, self.nrows, len(cols), ents)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_lists(self):
        zero = self.field.zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    __hash__ = None  # mutable-by-construction dict inside; keep unhashable

    def __repr__(self):
        return f"SparseMatrix({self.field}, {self.nrows}x{self.ncols}, nnz={self.nnz})"


class Echelon:
    """Reduced row echelon form of a matrix, optionally carrying extra
    (augmented) columns that record the same row operations.

    Pivots are only chosen among the first ``pivot_limit`` columns;
    rows whose leading part vanishes are kept as residual rows, so
    membership of an augmented column in the column span of the leading
    block can be read off afterwards.
    """

    def __init__(self, matrix, pivot_limit=None):
        field = matrix.field
        self.field = field
        self.ncols = matrix.ncols
        self.pivot_limit = matrix.ncols if pivot_limit is None else pivot_limit
        self.rows = {}       # pivot col -> row dict (lead coefficient 1)
        self.residuals = []  # row dicts with no entry below pivot_limit
        raw = matrix.rows_as_dicts()
        order = sorted(range(len(raw)), key=lambda i: (len(raw[i]), i))
        for i in order:
            if raw[i]:
                self._insert(dict(raw[i]))

    def _reduce(self, row):
        f = self.field
        zero = f.zero
        rows = self.rows
        # eliminate known pivot columns from the incoming row
        for c in sorted(k for k in row if k < self.pivot_limit and k in rows):
            coef = row.get(c)
            if coef is None or coef == zero:
                continue
            piv = rows[c]
            for j, v in piv.items():
                s = f.sub(row.get(j, zero), f.mul(coef, v))
                if s == zero:
                    row.pop(j, None)
                else:
                    row[j] = s
        return row

    def _insert(self, row):
        f = self.field
        zero = f.zero
        row = self._reduce(row)
        lead = min((c for c in row if c < self.pivot_limit), default=None)
        if lead is None:
            if row:
                self.residuals.append(row)
            return
        # normalize and back-eliminate the new pivot column
        inv = f.inv(row[lead])
        if inv != f.one:
            row = {j: f.mul(inv, v) for j, v in row.items()}
        for pcol, other in self.rows.items():
            coef = other.get(lead)
            if coef is None:
                continue
            for j, v in row.items():
                s = f.sub(other.get(j, zero), f.mul(coef, v))
                if s == zero:
                    other.pop(j, None)
                else:
                    other[j] = s
        # residual rows have no leading-block entries, so the new pivot
        # column cannot appear in them; nothing to update there
        self.rows[lead] = row

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivot_cols(self):
        return sorted(self.rows)

    def free_cols(self):
        return [c for c in range(self.pivot_limit) if c not in self.rows]

    def solve_augmented(self, j):
        """Particular solution x of A x = v_j for augmented column j
        (columns >= pivot_limit), or None if v_j is not in the span."""
        for res in self.residuals:
            if j in res:
                return None
        x = {}
        for pcol, row in self.rows.items():
            v = row.get(j)
            if v is not None:
                x[pcol] = v
        return x

    def kernel_vectors(self):
        """Kernel basis of the leading block, one vector per free column."""
        f = self.field
        vecs = []
        for c in self.free_cols():
            vec = {c: f.one}
            for pcol, row in self.rows.items():
                v = row.get(c)
                if v is not None:
                    vec[pcol] = f.neg(v)
            vecs.append(vec)
        return vecs


def rank(matrix):
    """Exact rank over the matrix's field."""
    return Echelon(matrix).rank


def kernel_basis(matrix):
    """Matrix whose columns are a basis of the kernel (ncols x nullity)."""
    ech = Echelon(matrix)
    return SparseMatrix.from_columns(matrix.field, matrix.ncols, ech.kernel_vectors())


def image_pivot_columns(matrix):
    """Indices of the lex-first independent column subset spanning the image."""
    return Echelon(matrix).pivot_cols


def solve_batch(a, v, strict=True):
    """Solve a @ x = v column by column.

    Returns (x, ok) where x is ncols(a) x ncols(v) and ok[j] says whether
    column j was solvable (unsolvable columns are zero in x).  With
    strict=True an unsolvable column raises ValueError.
    """
    if a.nrows != v.nrows:
        raise ValueError("row count mismatch in solve_batch")
    ech = Echelon(a.hstack(v), pivot_limit=a.ncols)
    cols = []
    ok = []
    for j in range(v.ncols):
        x = ech.solve_augmented(a.ncols + j)
        if x is None:
            if strict:
                raise ValueError(f"column {j} is not in the span")
            ok.append(False)
            cols.append({})
        else:
            ok.append(True)
            cols.append(x)
    return SparseMatrix.from_columns(a.field, a.ncols, cols), ok


def extend_basis_columns(first, second):
    """Columns of `second` that extend the column span of `first`.

    Returns the indices j such that column j of `second` is independent
    from `first` plus the previously selected columns.
    """
    ech = Echelon(first.hstack(second))
    return [c - first.ncols for c in ech.pivot_cols if c >= first.ncols]
