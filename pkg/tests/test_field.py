import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedpi.errors import FieldSpecError, NotPresent
from gradedpi.field import field_spec, make_field, parse_field_spec, primitive_cube_root


def test_prime_fields():
    assert make_field(5).q == 5
    assert make_field(7).q == 7


def test_gf25_modulus_is_smallest_non_residue(f25):
    # squares mod 5 are {0, 1, 4}, so 2 is the first non-residue
    assert f25.modulus_c == 2
    assert f25.q == 25


@pytest.mark.parametrize("p,k", [(4, 1), (3, 1), (2, 1), (9, 1), (5, 3), (5, 0)])
def test_rejects_bad_parameters(p, k):
    with pytest.raises(FieldSpecError):
        make_field(p, k)


def test_arith_examples(f5, f7, f25):
    assert f7.mul(3, 5) == 1          # 15 = 1 mod 7
    assert f5.add(2, 3) == 0
    t = f25.elem((0, 1))
    assert f25.mul(t, t) == 2         # t^2 reduces by the modulus


def test_division(f7):
    for a in f7.elements():
        for b in f7.units():
            assert f7.mul(f7.div(a, b), b) == a
    with pytest.raises(ZeroDivisionError):
        f7.div(3, 0)


def test_pow_examples(f5, f7, f25):
    assert f7.pow(2, 3) == 1
    minus2 = f5.elem(-2)
    assert f5.pow(minus2, 5) == minus2 == 3
    t = f25.elem((0, 1))
    assert f25.pow(t, 25) == t
    assert f5.pow(0, 0) == 1


@pytest.mark.parametrize("q,k", [(5, 1), (7, 1), (25, 2)])
def test_frobenius_and_inverses_exhaustive(q, k):
    ctx = make_field(5 if q == 25 else q, k)
    for a in ctx.elements():
        assert ctx.pow(a, ctx.q) == a
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1


def test_field_axioms_exhaustive_gf5(f5):
    elems = list(f5.elements())
    for a in elems:
        for b in elems:
            assert f5.add(a, b) == f5.add(b, a)
            assert f5.mul(a, b) == f5.mul(b, a)
            for c in elems:
                assert f5.mul(a, f5.add(b, c)) == f5.add(f5.mul(a, b), f5.mul(a, c))
                assert f5.add(a, f5.add(b, c)) == f5.add(f5.add(a, b), c)
                assert f5.mul(a, f5.mul(b, c)) == f5.mul(f5.mul(a, b), c)


@settings(max_examples=200)
@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24))
def test_field_axioms_random_gf25(a, b, c):
    ctx = make_field(5, 2)
    assert ctx.mul(a, b) == ctx.mul(b, a)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c)


def test_cube_roots(f5, f7, f25):
    assert primitive_cube_root(f7) == 2  # 2^3 = 8 = 1 mod 7
    with pytest.raises(NotPresent):
        primitive_cube_root(f5)          # 3 does not divide 4
    w = primitive_cube_root(f25)
    assert w != 1 and f25.pow(w, 3) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cube_root_iff_q_mod_3(p):
    ctx = make_field(p)
    if (ctx.q - 1) % 3 == 0:
        assert primitive_cube_root(ctx) != 1
    else:
        with pytest.raises(NotPresent):
            primitive_cube_root(ctx)


def test_field_spec_round_trip(f5, f25):
    assert parse_field_spec("5") == f5
    assert parse_field_spec("5^2") == f25
    assert field_spec(f5) == "5"
    assert field_spec(f25) == "5^2"
    with pytest.raises(FieldSpecError):
        parse_field_spec("abc")


def test_coeffs_round_trip(f25):
    for a in f25.elements():
        assert f25.elem(f25.coeffs(a)) == a
        assert all(0 <= r < 5 for r in f25.coeffs(a))


def test_modulus_irreducible_no_root(f25):
    # t^2 - c has no root in GF(p) exactly when c is a non-residue
    c = f25.modulus_c
    assert all((x * x) % 5 != c for x in range(5))
