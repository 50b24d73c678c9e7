"""The space of structure vectors F^(n^3), its right group action, and traces.

A structure vector lam encodes an algebra product on F^n through the basis
products [v_i, v_j] = sum_k lam_ijk v_k.  Coordinates are stored flat,
row-major in (i, j, k); the API is 1-based like the classical index notation,
storage is 0-based.  The right action of g rewrites the products in the basis
g v_1, ..., g v_n:

    (lam g)_ijk = sum_{a,b,c} g_ai g_bj (g^-1)_kc lam_abc

computed as three mode contractions (O(n^4) each), with sparse fast paths for
tagged transvection and diagonal group elements.
"""

from .exactla import Matrix
from .gfield import FieldCtx, FieldElement


def flat(n, i, j, k):
    """Flat storage index of the 1-based coordinate triple (i, j, k)."""
    return (i - 1) * n * n + (j - 1) * n + (k - 1)


def unflat(n, f):
    k = f % n
    j = (f // n) % n
    i = f // (n * n)
    return (i + 1, j + 1, k + 1)


class _Coords:
    """Shared plumbing for coordinate-tuple wrappers."""

    __slots__ = ("ctx", "n", "coords")

    def __init__(self, ctx, n, coords):
        self.ctx = ctx
        self.n = n
        self.coords = [ctx._coerce(x) for x in coords]
        if len(self.coords) != self._expected_len():
            raise ValueError("coordinate list has the wrong length")

    def _like(self, coords):
        out = object.__new__(type(self))
        out.ctx = self.ctx
        out.n = self.n
        out.coords = coords
        return out

    def _check(self, other):
        if type(other) is not type(self) or other.ctx != self.ctx or other.n != self.n:
            raise ValueError("operands live in different spaces")

    def __add__(self, other):
        self._check(other)
        add = self.ctx.add
        return self._like([add(x, y) for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        sub = self.ctx.sub
        return self._like([sub(x, y) for x, y in zip(self.coords, other.coords)])

    def __neg__(self):
        neg = self.ctx.neg
        return self._like([neg(x) for x in self.coords])

    def scale(self, c):
        c = self.ctx._coerce(c)
        return self._like(self.ctx.row_scale(self.coords, c))

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self):
        zero = self.ctx.zero()
        return all(x == zero for x in self.coords)

    def __eq__(self, other):
        return (type(other) is type(self) and self.ctx == other.ctx
                and self.n == other.n and self.coords == other.coords)

    def __hash__(self):
        return hash((type(self).__name__, self.ctx, self.n, tuple(self.coords)))


class StructureVector(_Coords):
    """Element of F^(n^3); requires n >= 3."""

    def __init__(self, ctx, n, coords):
        if n < 3:
            raise ValueError("structure vectors need n >= 3")
        super().__init__(ctx, n, coords)

    def _expected_len(self):
        return self.n ** 3

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.coords[flat(self.n, i, j, k)]

    def __repr__(self):
        terms = []
        for f, c in enumerate(self.coords):
            if c != self.ctx.zero():
                i, j, k = unflat(self.n, f)
                terms.append(f"{c}*{i}{j}{k}")
        return "SV(" + (" + ".join(terms) if terms else "0") + ")"

    def to_json(self):
        ctx = self.ctx
        return {"n": self.n, "field": ctx.to_json(),
                "coords": [ctx.raw_to_json(x) for x in self.coords]}

    @staticmethod
    def from_json(d):
        ctx = FieldCtx.from_json(d["field"])
        return StructureVector(ctx, d["n"], [ctx.raw_from_json(x) for x in d["coords"]])


class Vector(_Coords):
    """Coordinate vector of an element of V over the standard basis."""

    def _expected_len(self):
        return self.n

    def __repr__(self):
        return f"Vector({self.coords})"


class DualVector(_Coords):
    """Coefficients of a linear functional over the dual basis."""

    def _expected_len(self):
        return self.n

    def __call__(self, v):
        ctx = self.ctx
        acc = ctx.zero()
        for c, x in zip(self.coords, v.coords):
            acc = ctx.add(acc, ctx.mul(c, x))
        return FieldElement(ctx, acc)

    def __repr__(self):
        return f"DualVector({self.coords})"


def zero_structure_vector(ctx, n):
    return StructureVector(ctx, n, [ctx.zero()] * n ** 3)


def unit(ctx, n, a, b, c):
    """The standard basis vector 'abc': coordinate 1 at (a, b, c)."""
    coords = [ctx.zero()] * n ** 3
    coords[flat(n, a, b, c)] = ctx.one()
    return StructureVector(ctx, n, coords)


def basis_vector(ctx, n, i):
    coords = [ctx.zero()] * n
    coords[i - 1] = ctx.one()
    return Vector(ctx, n, coords)


def dual_basis_vector(ctx, n, i):
    coords = [ctx.zero()] * n
    coords[i - 1] = ctx.one()
    return DualVector(ctx, n, coords)


# -- the right action -----------------------------------------------------

def act_coords(coords, g, n, ctx):
    """Raw-coordinate action; dispatches on the generator tag when present."""
    tag = g.tag
    if tag is not None:
        if tag[0] == "transvection":
            return _act_transvection(coords, n, ctx, tag[1], tag[2], tag[3])
        if tag[0] == "diagonal":
            return _act_diagonal(coords, n, ctx, tag[1])
    return _act_general(coords, g.mat, g.inv, n, ctx)


def _act_general(coords, gmat, ginv, n, ctx):
    zero = ctx.zero()
    mul, add = ctx.mul, ctx.add
    gm, gi = gmat.entries, ginv.entries
    nn = n * n
    # mode 1: contract the first index with g
    t1 = [zero] * (n * nn)
    for i in range(n):
        for a in range(n):
            c = gm[a * n + i]
            if c != zero:
                base_out, base_in = i * nn, a * nn
                for bc in range(nn):
                    t1[base_out + bc] = add(t1[base_out + bc], mul(c, coords[base_in + bc]))
    # mode 2: contract the middle index with g
    t2 = [zero] * (n * nn)
    for j in range(n):
        for b in range(n):
            c = gm[b * n + j]
            if c != zero:
                for i in range(n):
                    base_out, base_in = i * nn + j * n, i * nn + b * n
                    for k in range(n):
                        t2[base_out + k] = add(t2[base_out + k], mul(c, t1[base_in + k]))
    # mode 3: contract the last index with g^-1
    out = [zero] * (n * nn)
    for k in range(n):
        for c0 in range(n):
            c = gi[k * n + c0]
            if c != zero:
                for ij in range(nn):
                    out[ij * n + k] = add(out[ij * n + k], mul(c, t2[ij * n + c0]))
    return out


def _act_transvection(coords, n, ctx, r, s, t):
    # g = I + t*e_rs (0-based r != s): three sparse slice updates.
    add, mul, sub = ctx.add, ctx.mul, ctx.sub
    nn = n * n
    out = list(coords)
    base_s, base_r = s * nn, r * nn
    for bc in range(nn):
        x = out[base_r + bc]
        if x != ctx.zero():
            out[base_s + bc] = add(out[base_s + bc], mul(t, x))
    for i in range(n):
        off_s, off_r = i * nn + s * n, i * nn + r * n
        for k in range(n):
            x = out[off_r + k]
            if x != ctx.zero():
                out[off_s + k] = add(out[off_s + k], mul(t, x))
    for ij in range(nn):
        x = out[ij * n + s]
        if x != ctx.zero():
            out[ij * n + r] = sub(out[ij * n + r], mul(t, x))
    return out


def _act_diagonal(coords, n, ctx, diag):
    mul, inv = ctx.mul, ctx.inv
    one = ctx.one()
    out = list(coords)
    inv_diag = [inv(d) for d in diag]
    f = 0
    for i in range(n):
        for j in range(n):
            dij = mul(diag[i], diag[j])
            for k in range(n):
                c = mul(dij, inv_diag[k])
                if c != one:
                    out[f] = mul(out[f], c)
                f += 1
    return out


def act(lam, g):
    """Right action lam |-> lam*g; act(act(lam,g),h) == act(lam, g*h)."""
    if g.n != lam.n or g.ctx != lam.ctx:
        raise ValueError("group element does not match the structure space")
    return lam._like(act_coords(lam.coords, g, lam.n, lam.ctx))


def act_on_basis(ctx, n, a, b, c, g):
    """Direct expansion of the basis action: abc*g = sum g_ai g_bj (g^-1)_kc ijk."""
    if not (1 <= a <= n and 1 <= b <= n and 1 <= c <= n):
        raise ValueError("basis indices out of range")
    if g.n != n or g.ctx != ctx:
        raise ValueError("group element does not match the structure space")
    zero = ctx.zero()
    mul, add = ctx.mul, ctx.add
    gm, gi = g.mat.entries, g.inv.entries
    coords = [zero] * n ** 3
    f = 0
    for i in range(n):
        ga = gm[(a - 1) * n + i]
        for j in range(n):
            gab = mul(ga, gm[(b - 1) * n + j])
            for k in range(n):
                coords[f] = add(coords[f], mul(gab, gi[k * n + (c - 1)]))
                f += 1
    return StructureVector(ctx, n, coords)


def action_matrix(g, n):
    """The n^3 x n^3 matrix of the action, rows indexed by source basis triples."""
    ctx = g.ctx
    rows = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for c in range(1, n + 1):
                rows.append(act_on_basis(ctx, n, a, b, c, g).coords)
    return Matrix.from_rows(ctx, rows)


def vector_act(g, v):
    """Left action on V: coordinates [g][v]."""
    ctx, n = v.ctx, v.n
    zero = ctx.zero()
    out = [zero] * n
    gm = g.mat.entries
    for i in range(n):
        acc = zero
        for j in range(n):
            acc = ctx.add(acc, ctx.mul(gm[i * n + j], v.coords[j]))
        out[i] = acc
    return Vector(ctx, n, out)


def dual_act(phi, g):
    """Right action on the dual: row vector times [g]."""
    ctx, n = phi.ctx, phi.n
    zero = ctx.zero()
    out = [zero] * n
    gm = g.mat.entries
    for j in range(n):
        acc = zero
        for i in range(n):
            acc = ctx.add(acc, ctx.mul(phi.coords[i], gm[i * n + j]))
        out[j] = acc
    return DualVector(ctx, n, out)


# -- algebra structure ------------------------------------------------------

def opposite(lam):
    """Structure vector of the opposite algebra: indices (i,j,k) -> (j,i,k)."""
    n = lam.n
    out = [None] * n ** 3
    src = lam.coords
    nn = n * n
    for i in range(n):
        for j in range(n):
            a, b = i * nn + j * n, j * nn + i * n
            out[a:a + n] = src[b:b + n]
    return lam._like(out)


def plus_tilde(lam):
    """lam + opposite(lam); lands in the commutative submodule."""
    return lam + opposite(lam)


def product(lam, u, v):
    """The algebra product [u, v] determined by lam, as a Vector."""
    ctx, n = lam.ctx, lam.n
    if u.n != n or v.n != n:
        raise ValueError("vector size mismatch")
    zero = ctx.zero()
    mul, add = ctx.mul, ctx.add
    out = [zero] * n
    src = lam.coords
    nn = n * n
    for i, ui in enumerate(u.coords):
        if ui == zero:
            continue
        for j, vj in enumerate(v.coords):
            if vj == zero:
                continue
            c = mul(ui, vj)
            base = i * nn + j * n
            for k in range(n):
                x = src[base + k]
                if x != zero:
                    out[k] = add(out[k], mul(c, x))
    return Vector(ctx, n, out)


def tr(lam):
    """Adjoint trace functional: i-th coordinate sum_j lam_ijj."""
    ctx, n = lam.ctx, lam.n
    src = lam.coords
    nn = n * n
    out = []
    for i in range(n):
        acc = ctx.zero()
        for j in range(n):
            acc = ctx.add(acc, src[i * nn + j * n + j])
        out.append(acc)
    return DualVector(ctx, n, out)


def tr_op(lam):
    """Opposite trace functional: i-th coordinate sum_j lam_jij."""
    ctx, n = lam.ctx, lam.n
    src = lam.coords
    nn = n * n
    out = []
    for i in range(n):
        acc = ctx.zero()
        for j in range(n):
            acc = ctx.add(acc, src[j * nn + i * n + j])
        out.append(acc)
    return DualVector(ctx, n, out)


def trace_form(lam, u):
    """The pairing tr(lam, u) = trace of w -> [u, w]."""
    return tr(lam)(u)


def psi(lam):
    """tr + tr~ (vanishes on the commutative part in characteristic 2)."""
    return tr(lam) + tr_op(lam)


def tr_matrix_rows(ctx, n):
    """Rows of the n x n^3 matrix of tr over the standard bases."""
    zero, one = ctx.zero(), ctx.one()
    rows = []
    for i in range(1, n + 1):
        row = [zero] * n ** 3
        for j in range(1, n + 1):
            row[flat(n, i, j, j)] = one
        rows.append(row)
    return rows


def tr_op_matrix_rows(ctx, n):
    zero, one = ctx.zero(), ctx.one()
    rows = []
    for i in range(1, n + 1):
        row = [zero] * n ** 3
        for j in range(1, n + 1):
            row[flat(n, j, i, j)] = one
        rows.append(row)
    return rows
