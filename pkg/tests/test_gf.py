import pytest

from stratakit.gf import ENUMERATION_BOUND, FieldCtx, FieldError, auto_modulus


def test_prime_field_context():
    ctx = FieldCtx(5, 1, 1)
    assert ctx.size == 5
    assert ctx.modulus == (0, 1)  # the x - 0 convention for prime fields


def test_gf9_auto_modulus_is_x2_plus_1():
    assert auto_modulus(3, 2) == (1, 0, 1)
    ctx = FieldCtx(3, 1, 2)
    assert ctx.modulus == (1, 0, 1)
    assert ctx.size == 9


def test_explicit_modulus_and_reducible_rejection():
    ctx = FieldCtx(3, 1, 2, modulus=(1, 0, 1))
    assert ctx.size == 9
    with pytest.raises(FieldError):
        FieldCtx(3, 1, 2, modulus=(-1, 0, 1))  # x^2 - 1 = (x-1)(x+1)


def test_bad_parameters():
    with pytest.raises(FieldError):
        FieldCtx(4, 1, 1)
    with pytest.raises(FieldError):
        FieldCtx(2, 1, 3)
    with pytest.raises(FieldError):
        FieldCtx(3, 0, 1)
    with pytest.raises(FieldError):
        FieldCtx(3, 1, 9)  # 3^9 over the enumeration bound
    assert 3**9 > ENUMERATION_BOUND


def test_inverse_examples():
    f5 = FieldCtx(5, 1, 1)
    assert f5.element(2).inverse().code == 3
    assert f5.element(1).inverse().code == 1
    with pytest.raises(ZeroDivisionError):
        f5.element(0).inverse()


def test_generator_inverse_by_exhaustive_table():
    ctx = FieldCtx(3, 1, 2)
    g = ctx.gen_code
    # brute-force multiplication table lookup of the inverse
    inv = next(b for b in range(ctx.size) if ctx.mul(g, b) == 1)
    assert ctx.inv(g) == inv
    assert inv == ctx.pow(g, 7)  # g^8 = 1 in GF(9)^x


@pytest.mark.parametrize("p,e,k", [(3, 1, 2), (5, 1, 2), (3, 1, 3), (3, 2, 1)])
def test_field_axioms_by_table_identities(p, e, k):
    ctx = FieldCtx(p, e, k)
    n = ctx.size
    ADD, MUL = ctx.ADD, ctx.MUL
    # commutativity
    assert (ADD == ADD.T).all() and (MUL == MUL.T).all()
    # associativity via exhaustive triple tables (vectorized):
    # T[T[a,b],c] against T[a,T[b,c]]
    assert (ADD[ADD] == ADD[:, ADD]).all()
    assert (MUL[MUL] == MUL[:, MUL]).all()
    # distributivity: a*(b+c) == a*b + a*c
    assert (MUL[:, ADD] == ADD[MUL[:, :, None], MUL[:, None, :]]).all()
    # inverses
    for a in range(1, n):
        assert MUL[a, ctx.INV[a]] == 1


@pytest.mark.parametrize("p,e,k", [(3, 1, 2), (3, 1, 4), (3, 2, 1)])
def test_frobenius_is_field_automorphism(p, e, k):
    ctx = FieldCtx(p, e, k)
    n = ctx.size
    F = ctx.FROB
    assert (F[ctx.ADD] == ctx.ADD[F][:, F]).all()
    assert (F[ctx.MUL] == ctx.MUL[F][:, F]).all()


def test_frobenius_fixed_field_is_base():
    ctx = FieldCtx(3, 1, 2)
    assert set(ctx.base_codes) == {a for a in range(9) if ctx.frobenius(a) == a}
    assert len(ctx.base_codes) == 3
    # base elements are exactly the prime-field constants here (e = 1)
    assert set(ctx.base_codes) == {0, 1, 2}


def test_frobenius_order_and_cube_example():
    ctx = FieldCtx(3, 1, 2)
    # a root of x^2 + 1 is the element with coefficient vector (0, 1)
    i = ctx.element(3)
    assert (i * i).code == ctx.neg(1)
    assert i.frobenius() == -i  # i^3 = -i
    for a in range(ctx.size):
        x = a
        for _ in range(ctx.k):
            x = ctx.frobenius(x)
        assert x == a


def test_enumerate_deterministic():
    ctx = FieldCtx(5, 1, 1)
    first = [x.code for x in ctx.enumerate()]
    second = [x.code for x in ctx.enumerate()]
    assert first == second == [0, 1, 2, 3, 4]
    assert len(FieldCtx(3, 1, 2).enumerate()) == 9


def test_subfield_codes():
    ctx = FieldCtx(3, 1, 2)
    assert ctx.subfield_codes(1) == (0, 1, 2)
    assert len(ctx.subfield_codes(2)) == 9
    with pytest.raises(FieldError):
        FieldCtx(3, 1, 3).subfield_codes(2)


def test_cross_context_arithmetic_is_rejected():
    a = FieldCtx(3, 1, 1).element(1)
    b = FieldCtx(5, 1, 1).element(1)
    with pytest.raises(FieldError):
        a + b


def test_equal_parameter_contexts_interoperate():
    a = FieldCtx(3, 1, 2).element(4)
    b = FieldCtx(3, 1, 2).element(5)
    assert (a * b).ctx == a.ctx
