import pytest
from fractions import Fraction
from itertools import product

from algdeg.gfield import (
    FieldCtx, make_field, enumerate_elements, primitive_element, frobenius,
    multiplicative_order,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)]


def test_make_field_prime():
    ctx = make_field(3, 1)
    assert ctx.kind == "finite"
    assert ctx.order == 3
    assert ctx.modulus is None


def test_make_field_gf4_modulus():
    ctx = make_field(2, 2)
    assert ctx.order == 4
    # x^2 + x + 1 has no root in GF(2), hence is irreducible
    for r in (0, 1):
        assert (r * r + r + 1) % 2 != 0
    assert ctx.modulus == (1, 1, 1)


def test_make_field_rejects_nonprime():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(1, 1)


def test_make_field_rejects_unknown_extension():
    with pytest.raises(ValueError):
        make_field(7, 2)


def test_rationals():
    ctx = make_field(0, 1)
    assert ctx.kind == "rational"
    a = ctx.element(Fraction(2, 4))
    assert a.raw == Fraction(1, 2)
    assert (a + a).raw == 1
    with pytest.raises(ValueError):
        enumerate_elements(ctx)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k):
    # associativity, commutativity, distributivity, inverses for order <= 9
    ctx = make_field(p, k)
    els = ctx.raw_elements()
    assert len(els) == p ** k
    for a, b in product(els, repeat=2):
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.add(a, ctx.neg(a)) == 0
        if a != 0:
            assert ctx.mul(a, ctx.inv(a)) == 1
    for a, b, c in product(els, repeat=3):
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


def test_enumerate_order():
    assert [e.raw for e in enumerate_elements(make_field(3))] == [0, 1, 2]
    assert [e.raw for e in enumerate_elements(make_field(2, 2))] == [0, 1, 2, 3]
    assert len(enumerate_elements(make_field(3, 2))) == 9


def test_primitive_element_gf3():
    assert primitive_element(make_field(3)).raw == 2


def test_primitive_element_gf4():
    # x has order 3 under x^2 + x + 1
    ctx = make_field(2, 2)
    g = primitive_element(ctx)
    assert g.raw == 2
    assert multiplicative_order(ctx, g.raw) == 3


def test_primitive_element_gf9():
    # under x^2 + 1: x has order 4, so the least generator is x + 1 (repr 4)
    ctx = make_field(3, 2)
    assert multiplicative_order(ctx, 3) == 4
    g = primitive_element(ctx)
    assert g.raw == 4
    assert multiplicative_order(ctx, 4) == 8


def test_primitive_element_rejects():
    with pytest.raises(ValueError):
        primitive_element(make_field(2))
    with pytest.raises(ValueError):
        primitive_element(make_field(0, 1))


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_primitive_element_order(p, k):
    if p ** k == 2:
        return
    ctx = make_field(p, k)
    g = primitive_element(ctx).raw
    target = ctx.order - 1
    assert ctx.pow(g, target) == 1
    for d in range(1, target):
        if target % d == 0 and d < target:
            assert ctx.pow(g, d) != 1 or d == target


def test_frobenius_gf4():
    ctx = make_field(2, 2)
    x = ctx.element(2)
    assert frobenius(x).raw == 3  # x^2 = x + 1


def test_frobenius_fixes_prime_field():
    ctx = make_field(5)
    for e in ctx:
        assert frobenius(e) == e


def test_frobenius_gf9():
    # x^3 = -x under x^2 + 1
    ctx = make_field(3, 2)
    x = ctx.element(3)
    assert frobenius(x) == -x


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_frobenius_is_automorphism(p, k):
    ctx = make_field(p, k)
    els = list(ctx)
    for a, b in product(els, repeat=2):
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
    for a in els:
        r = a
        for _ in range(k):
            r = frobenius(r)
        assert r == a


def test_element_operators():
    ctx = make_field(7)
    a, b = ctx.element(3), ctx.element(5)
    assert (a + b).raw == 1
    assert (a - b).raw == 5
    assert (a * b).raw == 1
    assert (a / b).raw == (3 * pow(5, 5, 7)) % 7
    assert (-a).raw == 4
    assert (a ** 3).raw == 27 % 7
    with pytest.raises(ValueError):
        a + make_field(5).element(1)


def test_ctx_identity():
    assert make_field(3, 2) == make_field(3, 2)
    assert make_field(3) != make_field(5)
    assert make_field(0, 1) == make_field(0, 1)


def test_json_round_trip():
    for p, k in [(3, 1), (2, 3), (5, 2)]:
        ctx = make_field(p, k)
        assert FieldCtx.from_json(ctx.to_json()) == ctx
    q = make_field(0, 1)
    raw = q.raw_from_json("3/4")
    assert raw == Fraction(3, 4)
    assert q.raw_to_json(raw) == "3/4"


def test_row_kernels_match_scalar_ops():
    for p, k in [(5, 1), (2, 2), (3, 2)]:
        ctx = make_field(p, k)
        els = ctx.raw_elements()
        u = els[: min(6, len(els))]
        v = list(reversed(u))
        for c in els:
            expect = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(u, v)]
            assert ctx.row_submul(u, v, c) == expect
            assert ctx.row_scale(u, c) == [ctx.mul(c, x) for x in u]


def test_gf25_constructible():
    ctx = make_field(5, 2)
    assert ctx.order == 25
    assert ctx.modulus == (1, 1, 1)
    g = primitive_element(ctx)
    assert multiplicative_order(ctx, g.raw) == 24
