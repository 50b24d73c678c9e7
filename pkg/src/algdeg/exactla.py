"""Dense exact linear algebra over a FieldCtx.

Matrices are row-major lists of raw scalars.  Subspace keeps the canonical
reduced row-echelon basis, so equal subspaces compare equal as data.  Pivoting
is deterministic first-nonzero: exact arithmetic makes stability a non-issue
and determinism makes outputs diffable.
"""

from .gfield import FieldCtx


def rref_rows(rows, ctx):
    """Reduced row echelon form of a list of raw rows.

    Returns (rows, pivots) with zero rows dropped; the input is not modified.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    zero = ctx.zero()
    pivots = []
    r = 0
    for col in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][col] != zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lead = rows[r][col]
        if lead != ctx.one():
            rows[r] = ctx.row_scale(rows[r], ctx.inv(lead))
        for i in range(len(rows)):
            if i != r:
                c = rows[i][col]
                if c != zero:
                    rows[i] = ctx.row_submul(rows[i], rows[r], c)
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def reduce_against(vec, rows, pivots, ctx):
    """Residual of vec after elimination against rref rows."""
    v = list(vec)
    zero = ctx.zero()
    for row, p in zip(rows, pivots):
        c = v[p]
        if c != zero:
            v = ctx.row_submul(v, row, c)
    return v


def reduce_with_coeffs(vec, rows, pivots, ctx):
    """Residual plus the elimination coefficients (vec = sum c_i rows_i + residual)."""
    v = list(vec)
    zero = ctx.zero()
    coeffs = []
    for row, p in zip(rows, pivots):
        c = v[p]
        coeffs.append(c)
        if c != zero:
            v = ctx.row_submul(v, row, c)
    return v, coeffs


class Matrix:
    """Immutable dense matrix with raw entries over one FieldCtx."""

    __slots__ = ("ctx", "nrows", "ncols", "entries")

    def __init__(self, ctx, nrows, ncols, entries):
        if len(entries) != nrows * ncols:
            raise ValueError("entry count does not match the shape")
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.entries = list(entries)

    @classmethod
    def from_rows(cls, ctx, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(ctx._coerce(x) for x in r)
        return cls(ctx, nrows, ncols, flat)

    @classmethod
    def identity(cls, ctx, n):
        zero, one = ctx.zero(), ctx.one()
        flat = [one if i == j else zero for i in range(n) for j in range(n)]
        return cls(ctx, n, n, flat)

    @classmethod
    def zeros(cls, ctx, nrows, ncols):
        return cls(ctx, nrows, ncols, [ctx.zero()] * (nrows * ncols))

    def row(self, i):
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self):
        return [self.row(i) for i in range(self.nrows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def transpose(self):
        e = self.entries
        nc = self.ncols
        flat = [e[i * nc + j] for j in range(nc) for i in range(self.nrows)]
        return Matrix(self.ctx, nc, self.nrows, flat)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        ctx = self.ctx
        orows = other.rows()
        out = []
        zero = ctx.zero()
        for i in range(self.nrows):
            acc = [zero] * other.ncols
            row = self.row(i)
            for k, c in enumerate(row):
                if c != zero:
                    acc = ctx.row_addmul(acc, orows[k], c)
            out.append(acc)
        return Matrix.from_rows(ctx, out)

    def __mul__(self, other):
        return self.mul(other)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ctx == other.ctx
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.entries == other.entries)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.ctx!r})"

    def rank(self):
        _, pivots = rref_rows(self.rows(), self.ctx)
        return len(pivots)

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("only square matrices invert")
        n = self.nrows
        ctx = self.ctx
        ident = Matrix.identity(ctx, n)
        aug = [self.row(i) + ident.row(i) for i in range(n)]
        red, pivots = rref_rows(aug, ctx)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix.from_rows(ctx, [r[n:] for r in red])


def rref(m):
    """RREF of a Matrix: (reduced Matrix, rank, pivot columns)."""
    rows, pivots = rref_rows(m.rows(), m.ctx)
    reduced = Matrix.from_rows(m.ctx, rows) if rows else Matrix.zeros(m.ctx, 0, m.ncols)
    return reduced, len(pivots), tuple(pivots)


def kernel_rows(rows, ncols, ctx):
    """Right kernel {v : M v^T = 0} of the matrix with the given rows, as raw rows."""
    red, pivots = rref_rows(rows, ctx)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    zero, one = ctx.zero(), ctx.one()
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            v[p] = ctx.neg(r[f])
        out.append(v)
    return out


class Subspace:
    """A subspace of F^d held as its canonical rref basis (no zero rows)."""

    __slots__ = ("ctx", "ambient", "rows", "pivots")

    def __init__(self, ctx, ambient, rows, pivots=None, _canonical=False):
        self.ctx = ctx
        self.ambient = ambient
        if _canonical and pivots is not None:
            self.rows = tuple(tuple(r) for r in rows)
            self.pivots = tuple(pivots)
            return
        red, piv = rref_rows(rows, ctx)
        for r in red:
            if len(r) != ambient:
                raise ValueError("row length does not match the ambient dimension")
        self.rows = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, ctx, ambient):
        return cls(ctx, ambient, [], pivots=[], _canonical=True)

    @classmethod
    def full(cls, ctx, ambient):
        ident = Matrix.identity(ctx, ambient)
        return cls(ctx, ambient, ident.rows(), pivots=range(ambient), _canonical=True)

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec):
        vec = getattr(vec, "coords", vec)
        if len(vec) != self.ambient:
            raise ValueError("vector length does not match the ambient dimension")
        zero = self.ctx.zero()
        res = reduce_against(vec, self.rows, self.pivots, self.ctx)
        return all(x == zero for x in res)

    def __contains__(self, vec):
        return self.contains(vec)

    def __le__(self, other):
        self._check_compatible(other)
        return all(other.contains(r) for r in self.rows)

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ctx == other.ctx
                and self.ambient == other.ambient and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ctx, self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient} over {self.ctx!r})"

    def _check_compatible(self, other):
        if self.ctx != other.ctx or self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def sum(self, other):
        self._check_compatible(other)
        return Subspace(self.ctx, self.ambient, list(self.rows) + list(other.rows))

    def __or__(self, other):
        return self.sum(other)

    def intersect(self, other):
        """Zassenhaus: rref of [[A|A],[B|0]]; zero-left rows carry the intersection."""
        self._check_compatible(other)
        ctx, d = self.ctx, self.ambient
        zero = ctx.zero()
        stacked = [list(r) + list(r) for r in self.rows]
        stacked += [list(r) + [zero] * d for r in other.rows]
        red, _ = rref_rows(stacked, ctx)
        out = [r[d:] for r in red if all(x == zero for x in r[:d])]
        return Subspace(ctx, d, out)

    def __and__(self, other):
        return self.intersect(other)

    def quotient_dim(self, sub):
        if not sub <= self:
            raise ValueError("not a subspace of this space")
        return self.dim - sub.dim

    def coset_representatives(self, sub):
        """Echelon basis of a complement of sub in self; cosets form a quotient basis."""
        if not sub <= self:
            raise ValueError("not a subspace of this space")
        ctx = self.ctx
        zero = ctx.zero()
        reps, rep_pivots = [], []
        for r in self.rows:
            t = reduce_against(r, sub.rows, sub.pivots, ctx)
            t = reduce_against(t, reps, rep_pivots, ctx)
            lead = next((j for j, x in enumerate(t) if x != zero), None)
            if lead is None:
                continue
            if t[lead] != ctx.one():
                t = ctx.row_scale(t, ctx.inv(t[lead]))
            reps.append(t)
            rep_pivots.append(lead)
        reps, _ = rref_rows(reps, ctx)
        return reps

    def to_json(self):
        ctx = self.ctx
        return {
            "field": ctx.to_json(),
            "ambient": self.ambient,
            "basis": [[ctx.raw_to_json(x) for x in r] for r in self.rows],
        }

    @staticmethod
    def from_json(d):
        ctx = FieldCtx.from_json(d["field"])
        rows = [[ctx.raw_from_json(x) for x in r] for r in d["basis"]]
        return Subspace(ctx, d["ambient"], rows)


def null_space(m):
    """Right kernel of a Matrix as a Subspace of row vectors."""
    return Subspace(m.ctx, m.ncols, kernel_rows(m.rows(), m.ncols, m.ctx))


def solve_right(rows, rhs, ctx):
    """One solution x of A x = rhs (free variables zero), or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref_rows(aug, ctx)
    zero = ctx.zero()
    x = [zero] * ncols
    for r, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = r[ncols]
    return x


def quotient_coords(vec, sub_rows, sub_pivots, reps, rep_pivots, ctx):
    """Coordinates of vec + sub over the complement basis reps; residual must vanish."""
    t = reduce_against(vec, sub_rows, sub_pivots, ctx)
    res, coeffs = reduce_with_coeffs(t, reps, rep_pivots, ctx)
    zero = ctx.zero()
    if any(x != zero for x in res):
        raise ValueError("vector does not lie in the given span")
    return coeffs


class GroupElement:
    """Invertible n x n matrix with its inverse cached at construction.

    `tag` marks the structured generators (transvections, diagonals) so the
    structure-vector action can use the sparse fast path.
    """

    __slots__ = ("ctx", "n", "mat", "inv", "tag")

    def __init__(self, mat, inv=None, tag=None):
        if mat.nrows != mat.ncols:
            raise ValueError("group elements are square")
        self.ctx = mat.ctx
        self.n = mat.nrows
        self.mat = mat
        self.inv = inv if inv is not None else mat.inverse()
        if self.mat.mul(self.inv) != Matrix.identity(self.ctx, self.n):
            raise ValueError("cached inverse is wrong")
        self.tag = tag

    @classmethod
    def from_rows(cls, ctx, rows):
        return cls(Matrix.from_rows(ctx, rows))

    @classmethod
    def identity(cls, ctx, n):
        ident = Matrix.identity(ctx, n)
        return cls(ident, ident, tag=("diagonal", (ctx.one(),) * n))

    @classmethod
    def transvection(cls, ctx, n, i, j, t=1):
        """I + t*e_ij for 1-based i != j."""
        if i == j:
            raise ValueError("transvections need i != j")
        t = ctx._coerce(t)
        mat = Matrix.identity(ctx, n)
        inv = Matrix.identity(ctx, n)
        mat.entries[(i - 1) * n + (j - 1)] = t
        inv.entries[(i - 1) * n + (j - 1)] = ctx.neg(t)
        return cls(mat, inv, tag=("transvection", i - 1, j - 1, t))

    @classmethod
    def diagonal(cls, ctx, diag):
        diag = [ctx._coerce(d) for d in diag]
        n = len(diag)
        mat = Matrix.identity(ctx, n)
        inv = Matrix.identity(ctx, n)
        for i, d in enumerate(diag):
            mat.entries[i * n + i] = d
            inv.entries[i * n + i] = ctx.inv(d)
        return cls(mat, inv, tag=("diagonal", tuple(diag)))

    @classmethod
    def permutation(cls, ctx, images):
        """g v_j = v_sigma(j) for the 1-based image list sigma."""
        n = len(images)
        zero, one = ctx.zero(), ctx.one()
        rows = [[zero] * n for _ in range(n)]
        for j, im in enumerate(images):
            rows[im - 1][j] = one
        return cls(Matrix.from_rows(ctx, rows))

    def compose(self, other):
        """Product g*h as transformations (apply h's matrix on the right of [g])."""
        return GroupElement(self.mat.mul(other.mat), other.inv.mul(self.inv))

    def __mul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.mat == other.mat

    def __repr__(self):
        return f"GroupElement({self.n}x{self.n} over {self.ctx!r})"


def random_invertible(ctx, n, rng):
    """Uniform-ish random GroupElement: resample raw matrices until invertible."""
    q = ctx.order
    while True:
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_rows(ctx, rows)
        try:
            inv = m.inverse()
        except ValueError:
            continue
        return GroupElement(m, inv)
