"""Exact scalar arithmetic: prime fields GF(p), small extensions GF(p^k), rationals.

A FieldCtx owns the arithmetic; raw scalars are plain ints (finite fields,
encoding polynomial-basis coefficients base p) or Fractions (rationals).
FieldElement is a thin operator-overloading wrapper around (ctx, raw).
Hot loops in the linear algebra work on raw scalars through the ctx kernels
(`row_submul`, `row_scale`, ...) so list comprehensions stay tight.
"""

from fractions import Fraction

# Fixed irreducible moduli, ascending coefficients c0..ck with ck = 1.
# Frozen so serialized data is reproducible across runs and machines.
_MODULI = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
    (5, 2): (1, 1, 1),      # x^2 + x + 1
}


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(a, b, modulus, p):
    """Product of coefficient lists a, b reduced mod (modulus, p)."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: subtract x^(deg) * modulus while degree >= k
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return [c % p for c in prod[:k]] + [0] * max(0, k - len(prod))


def _check_irreducible(modulus, p):
    """Trial-divide by every monic polynomial of degree <= deg/2 over GF(p)."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for code in range(p ** deg):
            div = []
            c = code
            for _ in range(deg):
                div.append(c % p)
                c //= p
            div.append(1)
            if _poly_remainder_is_zero(modulus, div, p):
                return False
    return True


def _poly_remainder_is_zero(num, div, p):
    rem = list(num)
    dd = len(div) - 1
    inv_lead = pow(div[dd], p - 2, p)
    while len(rem) - 1 >= dd:
        lead = rem[-1] % p
        if lead:
            f = lead * inv_lead % p
            off = len(rem) - 1 - dd
            for t in range(dd + 1):
                rem[off + t] = (rem[off + t] - f * div[t]) % p
        rem.pop()
    return all(c % p == 0 for c in rem)


class FieldCtx:
    """Immutable arithmetic context: GF(p^k) for the frozen modulus table, or Q.

    Two contexts are interchangeable iff (char, degree, modulus) agree.
    All operations are pure; instances are safe to share across workers.
    """

    def __init__(self, char, degree=1):
        if char == 0:
            if degree != 1:
                raise ValueError("rational field has degree 1")
            self.kind = "rational"
            self.char = 0
            self.degree = 1
            self.order = None
            self.modulus = None
            return
        if not _is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        self.kind = "finite"
        self.char = char
        self.degree = degree
        self.order = char ** degree
        if degree == 1:
            self.modulus = None
            self._mul_table = None
            self._inv_table = None
        else:
            try:
                self.modulus = _MODULI[(char, degree)]
            except KeyError:
                raise ValueError(f"no modulus on file for GF({char}^{degree})")
            if not _check_irreducible(list(self.modulus), char):
                raise ValueError(f"modulus for GF({char}^{degree}) is reducible")
            self._build_tables()

    def _decode(self, r):
        """Integer repr -> coefficient list, least-significant (constant) first."""
        p = self.char
        return [(r // p ** t) % p for t in range(self.degree)]

    def _encode(self, coeffs):
        p = self.char
        return sum(c % p * p ** t for t, c in enumerate(coeffs))

    def _build_tables(self):
        q, p = self.order, self.char
        mod = list(self.modulus)
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self._decode(a)
            for b in range(a, q):
                v = self._encode(_poly_mul_mod(ca, self._decode(b), mod, p))
                mul[a][b] = v
                mul[b][a] = v
        inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._mul_table = mul
        self._inv_table = inv

    # -- raw scalar operations ------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def from_int(self, m):
        if self.kind == "rational":
            return Fraction(m)
        if self.degree == 1:
            return m % self.char
        return self._encode([m % self.char] + [0] * (self.degree - 1))

    def add(self, a, b):
        if self.kind == "rational":
            return a + b
        if self.degree == 1:
            return (a + b) % self.char
        p = self.char
        r, pw = 0, 1
        for _ in range(self.degree):
            r += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.kind == "rational":
            return -a
        if self.degree == 1:
            return (-a) % self.char
        p = self.char
        r, pw = 0, 1
        for _ in range(self.degree):
            r += ((-a) % p) * pw
            a //= p
            pw *= p
        return r

    def mul(self, a, b):
        if self.kind == "rational":
            return a * b
        if self.degree == 1:
            return (a * b) % self.char
        return self._mul_table[a][b]

    def inv(self, a):
        if self.kind == "rational":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return pow(a, self.char - 2, self.char)
        return self._inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        r = self.one()
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def raw_elements(self):
        if self.kind != "finite":
            raise ValueError("enumeration needs a finite field")
        return list(range(self.order))

    # -- row kernels (hot paths of the exact linear algebra) ------------

    def row_submul(self, u, v, c):
        """u - c*v, elementwise on raw rows."""
        if self.kind == "finite":
            if self.degree == 1:
                p = self.char
                return [(x - c * y) % p for x, y in zip(u, v)]
            mc = self._mul_table[c]
            sub = self.sub
            return [sub(x, mc[y]) for x, y in zip(u, v)]
        return [x - c * y for x, y in zip(u, v)]

    def row_addmul(self, u, v, c):
        """u + c*v, elementwise on raw rows."""
        return self.row_submul(u, v, self.neg(c))

    def row_scale(self, v, c):
        if self.kind == "finite":
            if self.degree == 1:
                p = self.char
                return [(c * y) % p for y in v]
            mc = self._mul_table[c]
            return [mc[y] for y in v]
        return [c * y for y in v]

    # -- identity / serialization ----------------------------------------

    def _key(self):
        return (self.char, self.degree, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == "rational":
            return "Q"
        if self.degree == 1:
            return f"GF({self.char})"
        return f"GF({self.char}^{self.degree})"

    def __iter__(self):
        for r in self.raw_elements():
            yield FieldElement(self, r)

    def element(self, raw):
        return FieldElement(self, self._coerce(raw))

    def _coerce(self, raw):
        if isinstance(raw, FieldElement):
            if raw.ctx != self:
                raise ValueError("element from a different field")
            return raw.raw
        if self.kind == "rational":
            return Fraction(raw)
        if isinstance(raw, int):
            if 0 <= raw < self.order:
                return raw
            return self.from_int(raw)
        raise TypeError(f"cannot coerce {raw!r} into {self!r}")

    def to_json(self):
        d = {"char": self.char, "degree": self.degree}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d

    @staticmethod
    def from_json(d):
        ctx = FieldCtx(d["char"], d.get("degree", 1))
        if "modulus" in d and ctx.modulus is not None and tuple(d["modulus"]) != ctx.modulus:
            raise ValueError("modulus in descriptor disagrees with the frozen table")
        return ctx

    def raw_to_json(self, raw):
        if self.kind == "rational":
            return f"{raw.numerator}/{raw.denominator}"
        return raw

    def raw_from_json(self, v):
        if self.kind == "rational":
            if isinstance(v, str):
                num, den = v.split("/")
                return Fraction(int(num), int(den))
            return Fraction(v)
        return int(v) % self.order


class FieldElement:
    """A scalar tied to its FieldCtx, with the usual operator sugar."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx, raw):
        self.ctx = ctx
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other.raw
        return self.ctx._coerce(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.raw, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.raw))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.raw == other.raw
        try:
            return self.raw == self._other(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.raw))

    def __bool__(self):
        return self.raw != self.ctx.zero()

    def __repr__(self):
        return f"{self.raw}:{self.ctx!r}"


def make_field(char, degree=1):
    """Field constructor: (p, k) for GF(p^k), (0, 1) for the rationals."""
    return FieldCtx(char, degree)


def enumerate_elements(ctx):
    """All elements of a finite field in ascending repr order, starting at 0."""
    return list(ctx)


def multiplicative_order(ctx, raw):
    if raw == 0:
        raise ValueError("0 has no multiplicative order")
    r, e = raw, 1
    while r != 1:
        r = ctx.mul(r, raw)
        e += 1
    return e


def primitive_element(ctx):
    """Least element (repr order) generating the multiplicative group."""
    if ctx.kind != "finite":
        raise ValueError("primitive element needs a finite field")
    if ctx.order < 3:
        raise ValueError("GF(2) has no generator other than 1")
    target = ctx.order - 1
    for r in range(1, ctx.order):
        if multiplicative_order(ctx, r) == target:
            return FieldElement(ctx, r)
    raise AssertionError("no generator found in a finite field")


def frobenius(a):
    """a -> a^p for the field characteristic p; an automorphism."""
    ctx = a.ctx
    if ctx.kind != "finite":
        raise ValueError("Frobenius needs a finite field")
    return FieldElement(ctx, ctx.pow(a.raw, ctx.char))
