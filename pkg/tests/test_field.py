from __future__ import annotations

from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeweight.field import (FieldContext, FieldError, clmul, find_factor, irreducibles,
                               is_irreducible, make_field, poly_mod, poly_str, smallest_irreducible)

ALPHA = 0b010


def test_default_cubic_modulus():
    assert make_field(3).modulus == 0b1011


def test_smallest_irreducibles_low_degree():
    # independent oracle: the classic table of lexicographically first irreducibles
    known = {2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B, 9: 0x203,
             10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B}
    for m, poly in known.items():
        assert smallest_irreducible(m) == poly


@pytest.mark.parametrize("m", [1, 0, 25])
def test_degree_out_of_range(m):
    with pytest.raises(FieldError):
        make_field(m)


def test_reducible_modulus_names_factor():
    with pytest.raises(FieldError, match=r"x\^2 \+ x \+ 1"):
        make_field(4, 0b10101)


def test_modulus_degree_mismatch():
    with pytest.raises(FieldError):
        make_field(4, 0b1011)


def test_find_factor():
    assert find_factor(0b10101) == 0b111
    assert find_factor(0b1011) is None
    assert clmul(0b111, 0b111) == 0b10101


def test_poly_str():
    assert poly_str(0b1011) == "x^3 + x + 1"
    assert poly_str(1) == "1"


def test_irreducible_count_degree_5():
    # (2^5 - 2) / 5 = 6 irreducible quintics
    assert len(irreducibles(5)) == 6
    assert all(is_irreducible(p) for p in irreducibles(5))


def test_mul_examples(gf8):
    a2 = gf8.mul(ALPHA, ALPHA)
    assert a2 == 0b100
    assert gf8.mul(ALPHA, a2) == 0b011
    assert gf8.mul(0b101, 1) == 0b101
    assert gf8.mul(0b101, 0) == 0


def test_pow_examples(gf8):
    assert gf8.pow(ALPHA, 3) == 0b011
    assert gf8.pow(0, 5) == 0
    assert gf8.pow(0, 0) == 1
    for x in range(1, 8):
        assert gf8.pow(x, 7) == 1


def test_trace_examples(gf8):
    assert gf8.trace(0) == 0
    assert gf8.trace(1) == 1
    assert gf8.trace(ALPHA) == 0


def test_trace_matches_frobenius_sum():
    for m in (4, 5, 8):
        ctx = make_field(m)
        for x in ctx.elements():
            acc, y = 0, x
            for _ in range(m):
                acc ^= y
                y = ctx.square(y)
            assert acc in (0, 1)
            assert acc == ctx.trace(x)


def test_rel_trace_edges():
    ctx = make_field(6)
    for x in ctx.elements():
        assert ctx.rel_trace(x, 6) == x
        assert ctx.rel_trace(x, 1) == ctx.trace(x)


@pytest.mark.parametrize("m,e", [(4, 2), (6, 2), (6, 3)])
def test_rel_trace_kernel_size(m, e):
    ctx = make_field(m)
    zeros = sum(1 for x in ctx.elements() if ctx.rel_trace(x, e) == 0)
    assert zeros == 1 << (m - e)


def test_rel_trace_bad_divisor():
    with pytest.raises(ValueError):
        make_field(6).rel_trace(3, 4)


def test_rel_trace_lands_in_subfield():
    ctx = make_field(6)
    for x in ctx.elements():
        y = ctx.rel_trace(x, 3)
        assert ctx.pow(y, 8) == y


def test_elements_order_and_sum(gf8):
    assert list(gf8.elements()) == list(range(8))
    for m in (2, 3, 7):
        ctx = make_field(m)
        assert len(ctx.elements()) == 1 << m
        assert reduce(lambda a, b: a ^ b, ctx.elements()) == 0


def test_large_field_without_tables():
    ctx = make_field(20)
    x = 0x12345
    assert ctx.mul(x, ctx.inv(x)) == 1
    assert ctx.pow(x, (1 << 20) - 1) == 1


def test_array_ops_match_scalar():
    ctx = make_field(7)
    xs = np.arange(ctx.order, dtype=np.int64)
    assert ctx.mul_array(xs, 0x35).tolist() == [ctx.mul(int(x), 0x35) for x in xs]
    assert ctx.pow_array(xs, 9).tolist() == [ctx.pow(int(x), 9) for x in xs]
    assert ctx.trace_array(xs).tolist() == [ctx.trace(int(x)) for x in xs]


def test_json_round_trip():
    ctx = make_field(9, 0x211)
    back = FieldContext.from_json(ctx.to_json())
    assert back == ctx and back.modulus == 0x211
    assert ctx.to_json() == {"m": 9, "modulus": "211"}


elements8 = st.integers(0, 255)
GF256 = make_field(8)


@settings(max_examples=200, deadline=None)
@given(elements8, elements8, elements8)
def test_field_axioms(x, y, z):
    f = GF256
    assert f.mul(x, y) == f.mul(y, x)
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    assert f.mul(x, y ^ z) == f.mul(x, y) ^ f.mul(x, z)
    assert f.mul(x, y) == poly_mod(clmul(x, y), f.modulus)


@settings(max_examples=200, deadline=None)
@given(elements8, elements8)
def test_trace_linear_and_frobenius_invariant(x, y):
    f = GF256
    assert f.trace(x ^ y) == f.trace(x) ^ f.trace(y)
    assert f.trace(f.square(x)) == f.trace(x)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 255))
def test_inverse(x):
    assert GF256.mul(x, GF256.inv(x)) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF256.inv(0)


def test_trace_transitivity():
    ctx = make_field(6)
    for x in ctx.elements():
        for e in (2, 3):
            assert ctx.subfield_trace(ctx.rel_trace(x, e), e) == ctx.trace(x)
