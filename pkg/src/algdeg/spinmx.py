"""FG-module machinery over the structure-vector space.

Spinning realizes the cyclic module lam(FG) as a worklist closure under a
finite generator set; over a finite field the generators have finite order, so
closure under each g is closure under g^-1 and the generator closure equals
the full group closure.  The irreducibility test is the classical kernel-
vector criterion: draw theta in the enveloping algebra with ker(theta) != 0;
if some kernel-line spin (or transposed-side spin) is proper the module is
reducible with an exhibited witness, and if every kernel line on both sides
spins to the whole module it is irreducible, because a proper submodule S
forces either S ^ ker(theta) != 0 (theta singular on S) or, when theta is
invertible on S, a nonzero annihilator vector of im(theta) + S inside
ker(theta^T).
"""

import hashlib
import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Optional

from .exactla import GroupElement, Matrix, Subspace, kernel_rows, quotient_coords
from .gfield import FieldCtx, primitive_element
from .structvec import act_coords

LINE_CAP = 4096          # max kernel lines examined per theta draw
NORTON_ATTEMPTS = 64
SURVEY_BUDGET = 2 ** 22  # max |F|^dim for exhaustive vector surveys


def derive_seed(base, *tags):
    """Stable per-operation seed split (independent of PYTHONHASHSEED)."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(base).encode())
    for t in tags:
        h.update(b"/")
        h.update(str(t).encode())
    return int.from_bytes(h.digest(), "big")


@dataclass
class GeneratorSet:
    """Group generators with provenance.

    standard-finite: all unit transvections plus one primitive diagonal;
    generates the full matrix group over a finite field.  rational-subgroup:
    integer transvections and a 2-power diagonal; generates a subgroup only,
    so results spun with it carry a caveat.
    """
    elements: list
    provenance: str
    ctx: FieldCtx
    n: int

    @property
    def subgroup_caveat(self):
        return self.provenance == "rational-subgroup"


def standard_generators(ctx, n):
    """Unit transvections x_ij(1) plus diag(zeta,1,...,1), zeta primitive."""
    if ctx.kind != "finite":
        raise ValueError("standard generators need a finite field")
    gens = [GroupElement.transvection(ctx, n, i, j)
            for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    if ctx.order > 2:
        zeta = primitive_element(ctx).raw
        gens.append(GroupElement.diagonal(ctx, [zeta] + [ctx.one()] * (n - 1)))
    return GeneratorSet(gens, "standard-finite", ctx, n)


def rational_generators(ctx, n):
    """x_ij(1), x_ij(-1), diag(2,...), diag(1/2,...): closed under inverses."""
    if ctx.kind != "rational":
        raise ValueError("rational generators need the rational field")
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                gens.append(GroupElement.transvection(ctx, n, i, j, 1))
                gens.append(GroupElement.transvection(ctx, n, i, j, -1))
    two = ctx.from_int(2)
    gens.append(GroupElement.diagonal(ctx, [two] + [ctx.one()] * (n - 1)))
    gens.append(GroupElement.diagonal(ctx, [ctx.inv(two)] + [ctx.one()] * (n - 1)))
    return GeneratorSet(gens, "rational-subgroup", ctx, n)


class _Echelon:
    """Triangular pivot-sorted row store with incremental insertion."""

    __slots__ = ("ctx", "ambient", "rows", "pivots")

    def __init__(self, ctx, ambient):
        self.ctx = ctx
        self.ambient = ambient
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def add(self, vec):
        """Insert if independent; returns the reduced row or None."""
        ctx = self.ctx
        zero = ctx.zero()
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != zero:
                v = ctx.row_submul(v, row, c)
        lead = next((j for j, x in enumerate(v) if x != zero), None)
        if lead is None:
            return None
        if v[lead] != ctx.one():
            v = ctx.row_scale(v, ctx.inv(v[lead]))
        at = 0
        while at < len(self.pivots) and self.pivots[at] < lead:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, lead)
        return v

    def contains(self, vec):
        zero = self.ctx.zero()
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != zero:
                v = self.ctx.row_submul(v, row, c)
        return all(x == zero for x in v)

    def subspace(self):
        return Subspace(self.ctx, self.ambient, self.rows)


def _span_closure(seed_rows, appliers, ambient, ctx, stop_dim=None, probe=None):
    """Smallest subspace containing the seeds and closed under every applier.

    With `probe` set, stops early as soon as probe lies in the span and
    returns (echelon, True); otherwise runs to closure.
    """
    ech = _Echelon(ctx, ambient)
    queue = []
    for r in seed_rows:
        added = ech.add(r)
        if added is not None:
            queue.append(added)
    if probe is not None and ech.contains(probe):
        return ech, True
    while queue:
        if stop_dim is not None and ech.dim >= stop_dim:
            break
        r = queue.pop()
        for f in appliers:
            w = f(r)
            added = ech.add(w)
            if added is not None:
                queue.append(added)
                if probe is not None and ech.contains(probe):
                    return ech, True
    return ech, (probe is not None and ech.contains(probe))


def _structvec_appliers(gens):
    ctx, n = gens.ctx, gens.n
    return [lambda r, g=g: act_coords(r, g, n, ctx) for g in gens.elements]


def spin(lam, gens, probe=None):
    """The cyclic module lam(FG): smallest generator-stable subspace around lam."""
    ctx, n = gens.ctx, gens.n
    if gens.provenance == "standard-finite" and ctx.kind != "finite":
        raise ValueError("standard-finite spinning needs a finite field")
    coords = getattr(lam, "coords", lam)
    ech, _ = _span_closure([coords], _structvec_appliers(gens), n ** 3, ctx)
    return ech.subspace()


def spin_contains(lam, gens, probe):
    """Membership probe ran inside the closure loop (early exit on success)."""
    ctx, n = gens.ctx, gens.n
    coords = getattr(lam, "coords", lam)
    probe_coords = getattr(probe, "coords", probe)
    ech, hit = _span_closure([coords], _structvec_appliers(gens), n ** 3, ctx,
                             probe=probe_coords)
    return hit or ech.contains(probe_coords)


def close_subspace(sub, gens):
    """Smallest generator-stable subspace containing the given subspace."""
    ctx, n = gens.ctx, gens.n
    if gens.provenance == "standard-finite" and ctx.kind != "finite":
        raise ValueError("standard-finite spinning needs a finite field")
    ech, _ = _span_closure([list(r) for r in sub.rows], _structvec_appliers(gens),
                           n ** 3, ctx)
    return ech.subspace()


def is_generator_stable(sub, gens):
    ctx, n = gens.ctx, gens.n
    for g in gens.elements:
        for row in sub.rows:
            if not sub.contains(act_coords(list(row), g, n, ctx)):
                return False
    return True


# -- module handles ----------------------------------------------------------

def _mat_apply(row, mat_rows, ctx):
    zero = ctx.zero()
    out = [zero] * len(mat_rows[0])
    for i, c in enumerate(row):
        if c != zero:
            out = ctx.row_addmul(out, mat_rows[i], c)
    return out


@dataclass
class ModuleHandle:
    """A module carrier with the generator action restricted to its basis.

    Coordinates are over the complement basis `reps` of `sub` inside
    `carrier` (sub=None means the plain submodule).  Right action:
    coords' = coords * action[i].
    """
    ctx: FieldCtx
    label: str
    carrier: Subspace
    sub: Optional[Subspace]
    reps: list
    action: list            # one row-list matrix per generator
    gens: GeneratorSet

    @property
    def dim(self):
        return len(self.reps)

    def lift(self, coeff_rows, include_sub=False):
        """Handle-coordinate rows back to the carrier's ambient space."""
        ctx = self.ctx
        amb = self.carrier.ambient
        rows = []
        for cr in coeff_rows:
            v = [ctx.zero()] * amb
            for c, rep in zip(cr, self.reps):
                if c != ctx.zero():
                    v = ctx.row_addmul(v, rep, c)
            rows.append(v)
        if include_sub and self.sub is not None:
            rows.extend(list(r) for r in self.sub.rows)
        return Subspace(ctx, amb, rows)

    def preimage(self, coeff_rows):
        return self.lift(coeff_rows, include_sub=True)


def _ambient_appliers(gens, ambient):
    ctx, n = gens.ctx, gens.n
    if ambient == n ** 3:
        return [lambda r, g=g: act_coords(r, g, n, ctx) for g in gens.elements]
    if ambient == n:
        # the dual space: row vectors acted on by right multiplication with [g]
        return [lambda r, g=g: _mat_apply(r, g.mat.rows(), ctx) for g in gens.elements]
    raise ValueError(f"no generator action on ambient dimension {ambient}")


def module_handle(gens, carrier, sub=None, label="module", check_stable=True):
    """Restrict (and quotient) the generator action to an invariant carrier."""
    ctx, n = gens.ctx, gens.n
    appliers = _ambient_appliers(gens, carrier.ambient)
    full = carrier.dim == carrier.ambient
    if check_stable and not full:
        for f in appliers:
            for row in carrier.rows:
                if not carrier.contains(f(list(row))):
                    raise ValueError(f"carrier of {label!r} is not generator-stable")
    if sub is None or sub.dim == 0:
        sub = None
        sub_rows, sub_pivots = (), ()
        reps = [list(r) for r in carrier.rows]
    else:
        if not sub <= carrier:
            raise ValueError("sub is not contained in the carrier")
        if check_stable:
            for f in appliers:
                for row in sub.rows:
                    if not sub.contains(f(list(row))):
                        raise ValueError(f"sub of {label!r} is not generator-stable")
        sub_rows, sub_pivots = sub.rows, sub.pivots
        reps = carrier.coset_representatives(sub)
    rep_pivots = [next(j for j, x in enumerate(r) if x != ctx.zero()) for r in reps]
    action = []
    for f in appliers:
        rows = [quotient_coords(f(list(rep)), sub_rows, sub_pivots, reps, rep_pivots, ctx)
                for rep in reps]
        action.append(rows)
    return ModuleHandle(ctx, label, carrier, sub, reps, action, gens)


def dual_space_handle(gens, label="dual"):
    """The n-dimensional dual space as a right module."""
    ctx, n = gens.ctx, gens.n
    return module_handle(gens, Subspace.full(ctx, n), label=label, check_stable=False)


def handle_spin(handle, coeff_row, probe=None, stop_dim=None):
    ctx = handle.ctx
    appliers = [lambda r, m=m: _mat_apply(r, m, ctx) for m in handle.action]
    ech, hit = _span_closure([coeff_row], appliers, handle.dim, ctx,
                             stop_dim=stop_dim, probe=probe)
    return ech, hit


# -- the irreducibility test ---------------------------------------------------

@dataclass
class NortonResult:
    verdict: str                      # irreducible | reducible | inconclusive
    witness: Optional[Subspace]       # preimage in the carrier ambient
    witness_coords: Optional[list]
    detail: dict = field(default_factory=dict)


def _matmul_rows(a, b, ctx):
    return [_mat_apply(row, b, ctx) for row in a]


def _transpose_rows(rows):
    return [list(col) for col in zip(*rows)]


def _row_kernel(mat_rows, ctx):
    """{v : v * M = 0} as raw rows."""
    t = _transpose_rows(mat_rows)
    return kernel_rows(t, len(mat_rows), ctx)


def _lines_of(rows, ctx, cap):
    """All scalar-line representatives inside the span of independent rows."""
    k = len(rows)
    q = ctx.order
    count = (q ** k - 1) // (q - 1)
    if count > cap:
        return None
    els = ctx.raw_elements()
    out = []
    zero = ctx.zero()
    for lead in range(k):
        for tail in iproduct(els, repeat=k - lead - 1):
            coeffs = [zero] * lead + [ctx.one()] + list(tail)
            v = [zero] * len(rows[0])
            for c, r in zip(coeffs, rows):
                if c != zero:
                    v = ctx.row_addmul(v, r, c)
            out.append(v)
    return out


def _random_envelope(handle, rng):
    """Identity + random words in the generator action, randomly weighted."""
    ctx, d = handle.ctx, handle.dim
    q = ctx.order
    ident = Matrix.identity(ctx, d).rows()
    c0 = ctx.from_int(rng.randrange(q))
    theta = [ctx.row_scale(r, c0) for r in ident]
    terms = [ident] + list(handle.action)
    for _ in range(rng.randrange(2, 5)):
        word = handle.action[rng.randrange(len(handle.action))]
        for _ in range(rng.randrange(0, 3)):
            word = _matmul_rows(word, handle.action[rng.randrange(len(handle.action))], ctx)
        terms.append(word)
    for t in terms[1:]:
        c = ctx.from_int(rng.randrange(q))
        if c != ctx.zero():
            theta = [ctx.row_addmul(tr_, wr, c) for tr_, wr in zip(theta, t)]
    return theta


def norton_irreducible(handle, seed):
    """Kernel-vector irreducibility test with exhaustive fallback.

    Reducible verdicts always carry an explicit invariant witness subspace.
    Irreducible verdicts require every kernel line of some singular theta to
    spin full on both the module and its transpose.
    """
    ctx, d = handle.ctx, handle.dim
    if d == 0:
        raise ValueError("empty module")
    if d == 1:
        return NortonResult("irreducible", None, None, {"reason": "dimension 1"})
    rng = random.Random(derive_seed(seed, "norton", handle.label, d))
    action_t = [_transpose_rows(m) for m in handle.action]
    for attempt in range(NORTON_ATTEMPTS):
        theta = _random_envelope(handle, rng)
        ker = _row_kernel(theta, ctx)
        if not ker or len(ker) == d:
            continue
        lines = _lines_of(ker, ctx, LINE_CAP)
        if lines is None:
            continue
        proper = _first_proper_spin(handle.action, lines, d, ctx)
        if proper is not None:
            wit_rows = [list(r) for r in proper.rows]
            return NortonResult("reducible", handle.preimage(wit_rows), wit_rows,
                                {"attempt": attempt, "nullity": len(ker), "side": "module"})
        ker_t = _row_kernel(_transpose_rows(theta), ctx)
        lines_t = _lines_of(ker_t, ctx, LINE_CAP)
        if lines_t is None:
            continue
        proper_t = _first_proper_spin(action_t, lines_t, d, ctx)
        if proper_t is not None:
            ann = kernel_rows([list(r) for r in proper_t.rows], d, ctx)
            return NortonResult("reducible", handle.preimage(ann), ann,
                                {"attempt": attempt, "nullity": len(ker_t), "side": "dual"})
        return NortonResult("irreducible", None, None,
                            {"attempt": attempt, "nullity": len(ker)})
    if ctx.order ** d <= SURVEY_BUDGET:
        lines = _all_lines(ctx, d)
        proper = _first_proper_spin(handle.action, lines, d, ctx)
        if proper is not None:
            wit_rows = [list(r) for r in proper.rows]
            return NortonResult("reducible", handle.preimage(wit_rows), wit_rows,
                                {"mode": "exhaustive"})
        return NortonResult("irreducible", None, None, {"mode": "exhaustive"})
    return NortonResult("inconclusive", None, None, {"attempts": NORTON_ATTEMPTS})


def _first_proper_spin(action, lines, d, ctx):
    appliers = [lambda r, m=m: _mat_apply(r, m, ctx) for m in action]
    for v in lines:
        ech, _ = _span_closure([v], appliers, d, ctx, stop_dim=d)
        if ech.dim < d:
            return ech.subspace()
    return None


def _all_lines(ctx, d):
    """One representative per scalar line of F^d: first nonzero entry 1."""
    els = ctx.raw_elements()
    zero, one = ctx.zero(), ctx.one()
    for lead in range(d):
        head = [zero] * lead + [one]
        for tail in iproduct(els, repeat=d - lead - 1):
            yield head + list(tail)


# -- composition series --------------------------------------------------------

def composition_series(chain, gens, seed):
    """Certify a chain of subspaces as a composition series via factor tests."""
    if len(chain) < 2:
        raise ValueError("a chain needs at least two terms")
    for a, b in zip(chain, chain[1:]):
        if not a < b:
            raise ValueError("chain must be strictly increasing")
    factors = []
    certified = True
    conclusive = True
    for i, (a, b) in enumerate(zip(chain, chain[1:])):
        handle = module_handle(gens, b, sub=a if a.dim else None,
                               label=f"factor{i}")
        res = norton_irreducible(handle, derive_seed(seed, "series", i))
        facts = {
            "index": i,
            "dim": handle.dim,
            "verdict": res.verdict,
        }
        if res.verdict == "reducible":
            certified = False
            facts["witness_dim"] = len(res.witness_coords)
            facts["witness"] = res.witness.to_json()
        elif res.verdict == "inconclusive":
            certified = False
            conclusive = False
        factors.append(facts)
    return {
        "factors": factors,
        "certified": certified,
        "conclusive": conclusive,
        "dims": [s.dim for s in chain],
    }


# -- exhaustive submodule survey ------------------------------------------------

def survey_submodules(handle, budget=SURVEY_BUDGET, workers=1):
    """Spin every scalar line of the carrier; close under sums and intersections.

    Returns the full submodule lattice (0 and the carrier included) lifted to
    the carrier's ambient space, sorted by (dim, basis).  Worker counts only
    change the partitioning; the merged lattice is identical.
    """
    ctx, d = handle.ctx, handle.dim
    if ctx.order ** d > budget:
        raise ValueError(f"survey budget exceeded: {ctx.order}^{d} > {budget}")
    found = set()
    if workers > 1:
        chunks = _survey_chunks(ctx, d, workers)
        payload = (ctx.to_json(), d, handle.action)
        import multiprocessing
        with multiprocessing.Pool(workers) as pool:
            for part in pool.map(_survey_worker, [(payload, ch) for ch in chunks]):
                found.update(part)
    else:
        appliers = _handle_appliers(handle.action, ctx)
        for v in _all_lines(ctx, d):
            ech, _ = _span_closure([v], appliers, d, ctx, stop_dim=d)
            found.add(tuple(tuple(r) for r in ech.subspace().rows))
    subs = {Subspace(ctx, d, [list(r) for r in rows]) for rows in found}
    subs.add(Subspace.zero(ctx, d))
    subs.add(Subspace.full(ctx, d))
    # lattice closure under pairwise sum and intersection
    changed = True
    while changed:
        changed = False
        items = sorted(subs, key=lambda s: (s.dim, s.rows))
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                for c in (a.sum(b), a.intersect(b)):
                    if c not in subs:
                        subs.add(c)
                        changed = True
    ordered = sorted(subs, key=lambda s: (s.dim, s.rows))
    lifted = [handle.lift([list(r) for r in s.rows]) for s in ordered]
    lifted.sort(key=lambda s: (s.dim, s.rows))
    return lifted


def _handle_appliers(action, ctx):
    return [lambda r, m=m: _mat_apply(r, m, ctx) for m in action]


def _survey_chunks(ctx, d, workers):
    lines = list(_all_lines(ctx, d))
    size = max(1, (len(lines) + workers - 1) // workers)
    return [lines[i:i + size] for i in range(0, len(lines), size)]


def _survey_worker(args):
    (ctx_json, d, action), lines = args
    ctx = FieldCtx.from_json(ctx_json)
    out = set()
    for v in lines:
        ech, _ = _span_closure([v], _handle_appliers(action, ctx), d, ctx, stop_dim=d)
        out.add(tuple(tuple(r) for r in ech.subspace().rows))
    return out


# -- homomorphism spaces ---------------------------------------------------------

def hom_space(ha, hb):
    """Dimension and basis of the space of module maps between two handles."""
    ctx = ha.ctx
    da, db = ha.dim, hb.dim
    zero = ctx.zero()
    rows = []
    for ga, gb in zip(ha.action, hb.action):
        # constraint (A X - X B)_{ij} = 0 over vec(X), X of shape da x db
        for i in range(da):
            for j in range(db):
                row = [zero] * (da * db)
                for k in range(da):
                    c = ga[i][k]
                    if c != zero:
                        row[k * db + j] = ctx.add(row[k * db + j], c)
                for l in range(db):
                    c = gb[l][j]
                    if c != zero:
                        row[i * db + l] = ctx.sub(row[i * db + l], c)
                rows.append(row)
    basis = kernel_rows(rows, da * db, ctx)
    return len(basis), basis


# -- diagram verification ----------------------------------------------------------

def _claim(claims, cid, anchor, ok, data=None):
    claims.append({"id": cid, "anchor": anchor,
                   "status": "verified" if ok else "falsified",
                   "data": data if data is not None else {}})


def verify_lattice_diagrams(ctx, n, seed=0, gens=None):
    """Check the submodule diagrams branch by branch for one (n, field).

    Covers the two diagrams over M** (split by char | n-1), the three over
    the full space (split by char | n+1 and char 2), and the three dual-space
    filtration factors, each by explicit subspace computation plus kernel-
    vector irreducibility verdicts.
    """
    from . import canon
    from .structvec import tr_matrix_rows, tr_op_matrix_rows

    if ctx.kind != "finite" or ctx.order <= 2:
        raise ValueError("diagram verification assumes a finite field, |F| > 2")
    if gens is None:
        gens = standard_generators(ctx, n)
    claims = []
    dims = canon.expected_dims(n)

    C = canon.basis_C(ctx, n)
    K = canon.basis_K(ctx, n)
    Ms = canon.basis_Mstar(ctx, n)
    Mss = canon.basis_Mstarstar(ctx, n)
    T = canon.basis_T(ctx, n)
    TcT = canon.basis_TcapTtilde(ctx, n)
    N = canon.basis_N(ctx, n)
    U = canon.basis_U(ctx, n)
    Lam = Subspace.full(ctx, n ** 3)
    one = ctx.one()
    char2 = ctx.char == 2

    # dual-space filtration factors via the explicit trace surjections
    tr_rows = tr_matrix_rows(ctx, n)
    _claim(claims, "LambdaOverT", "tr maps the full space onto the dual with kernel T",
           Matrix.from_rows(ctx, tr_rows).rank() == n
           and Subspace(ctx, n ** 3, kernel_rows(tr_rows, n ** 3, ctx)) == T)
    for name, anchor, carrier, ker in (
            ("KOverU", "tr restricted to K is onto the dual with kernel U", K, U),
            ("COverN", "tr restricted to C is onto the dual with kernel N", C, N)):
        values = [[_dotrow(ctx, r, b) for r in tr_rows] for b in carrier.rows]
        rank = Matrix.from_rows(ctx, values).rank() if values else 0
        restr_ker = canon._restricted_kernel(carrier, tr_rows, ctx)
        _claim(claims, name, anchor, rank == n and restr_ker == ker)

    v_handle = dual_space_handle(gens)

    # diagram over M**
    if (n - 1) % ctx.char == 0:
        UM = U | Ms
        _claim(claims, "UmeetMstar.branch", "U ^ M* = M*_(1,-1) when char | n-1",
               (U & Ms) == canon.basis_MstarP(ctx, n, canon.ProjectivePoint(ctx, one, ctx.neg(one))))
        _claim(claims, "UplusMstar.dim", "dim(U + M*) = n^3/2 - n^2/2 when char | n-1",
               UM.dim == (n ** 3 - n ** 2) // 2, {"dim": UM.dim})
        _claim(claims, "MssOverU.split", "K and U+M* are distinct complements over U inside M**",
               (K & UM) == U and (K | UM) == Mss)
        h = module_handle(gens, UM, sub=Ms, label="(U+M*)/M*")
        res = norton_irreducible(h, derive_seed(seed, "UM/M*"))
        _claim(claims, "UplusMstarOverMstar.irr", "(U + M*)/M* is irreducible",
               res.verdict == "irreducible", {"verdict": res.verdict})
        hU = module_handle(gens, U, label="U")
        dU, _ = hom_space(hU, v_handle)
        hQ = module_handle(gens, Mss, sub=Ms, label="M**/M*")
        dQ, _ = hom_space(hQ, v_handle)
        _claim(claims, "MssOverMstar.notU",
               "the dual is a top factor of M**/M* but not of U (hom-space dims)",
               dU == 0 and dQ >= 1, {"hom(U,dual)": dU, "hom(M**/M*,dual)": dQ})
    else:
        _claim(claims, "MssSplit", "M** = U (+) M* when char does not divide n-1",
               (U & Ms).dim == 0 and (U | Ms) == Mss)
        res = norton_irreducible(module_handle(gens, U, label="U"),
                                 derive_seed(seed, "U"))
        _claim(claims, "U.irr", "U is irreducible when char does not divide n-1",
               res.verdict == "irreducible", {"verdict": res.verdict})
        res = norton_irreducible(module_handle(gens, Ms, label="M*"),
                                 derive_seed(seed, "M*"))
        _claim(claims, "Mstar.red", "M* is reducible (a sum of two dual copies)",
               res.verdict == "reducible",
               {"verdict": res.verdict,
                "witness_dim": len(res.witness_coords or [])})

    # diagram over the full space
    if char2:
        NM = N | Mss
        _claim(claims, "NmeetMss.char2", "N ^ M** = U in characteristic 2",
               (N & Mss) == U)
        _claim(claims, "NplusMss.dim.char2", "dim(N + M**) = n^3/2 + n^2/2 + n",
               NM.dim == (n ** 3 + n ** 2) // 2 + n, {"dim": NM.dim})
        TM = TcT | Mss
        _claim(claims, "TTplusMss.proper", "(T ^ T~) + M** properly contains N + M**",
               NM < TM, {"lower": NM.dim, "upper": TM.dim})
        if n % 2 == 1:
            # char 2 and n odd is a char | n+1 case, so the triple intersection
            # is T ^ M** and the sum has codimension n
            _claim(claims, "TTplusMss.dim", "dim((T ^ T~) + M**) = n^3 - n (odd n)",
                   TM.dim == n ** 3 - n, {"dim": TM.dim})
            res = norton_irreducible(module_handle(gens, Lam, sub=TM,
                                                   label="Lambda/(TT+M**)",
                                                   check_stable=False),
                                     derive_seed(seed, "L/TTM"))
            _claim(claims, "LambdaOverTTplusMss.irr",
                   "the top factor over (T ^ T~) + M** is irreducible",
                   res.verdict == "irreducible", {"verdict": res.verdict, "dim": n})
            res = norton_irreducible(module_handle(gens, TM, sub=NM,
                                                   label="(TT+M**)/(N+M**)"),
                                     derive_seed(seed, "TTM/NM"))
            _claim(claims, "TTplusMssOverNplusMss.irr",
                   "((T ^ T~) + M**)/(N + M**) is irreducible",
                   res.verdict == "irreducible", {"verdict": res.verdict})
        else:
            # for even n the traces satisfy tr + tr~ = omega on M**, so the
            # triple intersection collapses to U and the sum is everything;
            # the n^3 - n value would need char | n+1
            _claim(claims, "TTmeetMss.even", "(T ^ T~) ^ M** = U (char 2, even n)",
                   (TcT & Mss) == U)
            _claim(claims, "TTplusMss.even",
                   "(T ^ T~) + M** is the whole space (char 2, even n)",
                   TM.dim == n ** 3, {"dim": TM.dim})
        hQ = module_handle(gens, Lam, sub=NM, label="Lambda/(N+M**)", check_stable=False)
        res = norton_irreducible(hQ, derive_seed(seed, "L/NM"))
        du = dims["U"]
        if n % 2 == 0:
            _claim(claims, "LambdaOverNplusMss.even",
                   "the factor over N + M** is irreducible of dim U for even n",
                   res.verdict == "irreducible" and hQ.dim == du,
                   {"verdict": res.verdict, "dim": hQ.dim})
        else:
            ok = res.verdict == "reducible"
            data = {"verdict": res.verdict, "dim": hQ.dim}
            if ok:
                m = len(res.witness_coords)
                data["factor_dims"] = sorted((m, hQ.dim - m))
                ok = sorted((m, hQ.dim - m)) == sorted((n, du - n))
            _claim(claims, "LambdaOverNplusMss.odd",
                   "the factor over N + M** has length two with the factor dims of U (odd n)",
                   ok, data)
    elif (n + 1) % ctx.char == 0:
        NM = N | Mss
        M11 = canon.basis_MstarP(ctx, n, canon.ProjectivePoint(ctx, one, one))
        _claim(claims, "NmeetMss.divides", "N ^ M** = M*_(1,1) when char | n+1",
               (N & Mss) == M11)
        _claim(claims, "NplusMss.dim", "dim(N + M**) = n^3 - n",
               NM.dim == n ** 3 - n, {"dim": NM.dim})
        psi_rows = [ctx.row_addmul(a, b, one) for a, b in
                    zip(tr_rows, tr_op_matrix_rows(ctx, n))]
        ker_psi = Subspace(ctx, n ** 3, kernel_rows(psi_rows, n ** 3, ctx))
        _claim(claims, "kerPsi", "ker(tr + tr~) = N + M**, so the top factor is the dual",
               Matrix.from_rows(ctx, psi_rows).rank() == n and ker_psi == NM)
        res = norton_irreducible(module_handle(gens, NM, sub=Mss, label="(N+M**)/M**"),
                                 derive_seed(seed, "NM/Mss"))
        _claim(claims, "NplusMssOverMss.irr", "(N + M**)/M** is irreducible",
               res.verdict == "irreducible", {"verdict": res.verdict})
        hN = module_handle(gens, N, label="N")
        dN, _ = hom_space(hN, v_handle)
        hQ = module_handle(gens, Lam, sub=Mss, label="Lambda/M**", check_stable=False)
        dQ, _ = hom_space(hQ, v_handle)
        _claim(claims, "LambdaOverMss.notN",
               "the dual is a top factor of the quotient by M** but not of N",
               dN == 0 and dQ >= 1, {"hom(N,dual)": dN, "hom(L/M**,dual)": dQ})
    else:
        _claim(claims, "LambdaSplit", "the full space is N (+) M** away from char | n+1",
               (N & Mss).dim == 0 and (N | Mss) == Lam)
        res = norton_irreducible(module_handle(gens, N, label="N"),
                                 derive_seed(seed, "N"))
        _claim(claims, "N.irr", "N is irreducible when char does not divide n+1",
               res.verdict == "irreducible", {"verdict": res.verdict})
        hQ = module_handle(gens, Lam, sub=Mss, label="Lambda/M**", check_stable=False)
        res = norton_irreducible(hQ, derive_seed(seed, "L/Mss"))
        _claim(claims, "LambdaOverMss.irr",
               "the quotient by M** is irreducible of the dimension of N",
               res.verdict == "irreducible" and hQ.dim == dims["N"],
               {"verdict": res.verdict, "dim": hQ.dim})
    return claims


def _dotrow(ctx, u, v):
    acc = ctx.zero()
    zero = ctx.zero()
    for x, y in zip(u, v):
        if x != zero and y != zero:
            acc = ctx.add(acc, ctx.mul(x, y))
    return acc
