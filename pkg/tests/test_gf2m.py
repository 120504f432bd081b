import numpy as np
import pytest

from nottaut.gf2m import GF2, GF4, FieldCtx


def naive_mul(a, b, modulus, m):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= modulus
    return r


@pytest.mark.parametrize("m", [1, 2, 3, 4, 8])
def test_tables_match_polynomial_arithmetic(m):
    ctx = FieldCtx(m)
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert ctx.mul(a, b) == naive_mul(a, b, ctx.modulus, m)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_field_axioms_exhaustive(m):
    ctx = FieldCtx(m)
    for a in range(ctx.q):
        assert ctx.add(a, a) == 0
        assert ctx.pow(a, ctx.q) == a
        x = a
        for _ in range(m):
            x = ctx.frobenius(x)
        assert x == a
        assert ctx.pow(ctx.qth_root(a), ctx.q) == a
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1


def test_gf4_specifics():
    s = GF4.elem("s")
    s2 = GF4.elem("s2")
    one = GF4.elem(1)
    zero = GF4.elem(0)
    assert s + s2 == one  # forced by s^2+s+1=0
    assert s + s == zero
    assert zero + s == s
    assert s * s == s2
    assert s * s2 == one
    assert s2 * s2 == s
    assert one.inv() == one and s.inv() == s2 and s2.inv() == s
    assert s.frobenius() == s2 and one.frobenius() == one and s2.frobenius() == s
    assert s.qth_root() == s and zero.qth_root() == zero and s2.qth_root() == s2
    # multiplicative group cyclic of order 3 generated by s
    assert {(s**k).bits for k in range(3)} == {1, 2, 3}


def test_tokens():
    for tok in ("0", "1", "s", "s2"):
        assert GF4.to_token(GF4.from_token(tok)) == tok
    with pytest.raises(ValueError):
        GF4.from_token("q")


def test_context_mismatch_and_zero_division():
    with pytest.raises(ValueError, match="context mismatch"):
        GF4.elem(1) + GF2.elem(1)
    with pytest.raises(ZeroDivisionError):
        GF4.elem(0).inv()


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError, match="reducible"):
        FieldCtx(2, modulus=0b101)  # x^2+1 = (x+1)^2
    with pytest.raises(ValueError):
        FieldCtx(9)


def test_vector_tables():
    arr = np.array([0, 1, 2, 3], dtype=np.uint8)
    assert list(GF4.FROB[arr]) == [0, 1, 3, 2]
    assert list(GF4.MUL[2, arr]) == [0, 2, 3, 1]
