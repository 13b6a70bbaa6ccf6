from __future__ import annotations

import numpy as np
import pytest

from threeweight.charsums import (WeilSumQuery, closed_form_prediction, coprime_exponents, find_gamma, full_grid_check,
                                  fwht, jacobi_sign, weil_sum_closed, weil_sum_direct, weil_sums_over_a,
                                  weil_sums_over_b, weil_sweep)
from threeweight.field import make_field


def naive_sum(ctx, u, a, b):
    """Scalar reference: sum over x of (-1)^Tr(a x^(2^u+1) + b x)."""
    total = 0
    for x in ctx.elements():
        y = ctx.mul(a, ctx.pow(x, (1 << u) + 1)) ^ ctx.mul(b, x)
        total += 1 - 2 * ctx.trace(y)
    return total


def q(m, u, a, b):
    return WeilSumQuery(make_field(m), u, a, b)


def test_gf8_value():
    assert weil_sum_direct(q(3, 1, 1, 1)) == -4
    assert naive_sum(make_field(3), 1, 1, 1) == -4


def test_trivial_and_zero_b():
    for m in (3, 4, 6):
        assert weil_sum_direct(q(m, 1, 0, 0)) == 1 << m
    assert weil_sum_direct(q(5, 1, 1, 0)) == 0


def test_m7_exact_sign():
    r = weil_sum_closed(q(7, 1, 1, 1))
    assert r.prediction.kind == "exact" and r.prediction.value == 16
    assert r.value == 16 and r.agrees


def test_zero_prediction_when_trace_vanishes():
    ctx = make_field(5)
    for b in ctx.elements():
        if b and ctx.trace(b) == 0:
            pred = closed_form_prediction(WeilSumQuery(ctx, 1, 1, b))
            assert pred.kind == "zero"


def test_m5_u2_trace_one_line():
    ctx = make_field(5)
    hits = 0
    for b in ctx.elements():
        if ctx.trace(b) == 1:
            r = weil_sum_closed(WeilSumQuery(ctx, 2, 1, b))
            assert r.agrees is True
            assert abs(r.value) == 8
            hits += 1
    assert hits == 16


def test_even_quotient_is_not_applicable():
    r = weil_sum_closed(q(4, 1, 1, 1))
    assert r.prediction.kind == "n/a" and r.agrees is None


@pytest.mark.parametrize("m,e,sign", [(3, 1, -1), (7, 1, 1), (9, 3, -1), (5, 1, -1), (9, 1, 1)])
def test_jacobi_sign(m, e, sign):
    assert jacobi_sign(m, e) == sign


def test_jacobi_sign_m9_e3_matches_direct():
    # S_3(1,1) at m = 9 has e = 3 and magnitude 2^6
    assert weil_sum_direct(q(9, 3, 1, 1)) == -64


def test_jacobi_sign_rejects_bad_divisor():
    with pytest.raises(ValueError):
        jacobi_sign(9, 2)


def test_direct_matches_naive_small():
    ctx = make_field(5)
    for u in (1, 2, 3):
        for a in (1, 7, 19):
            for b in (0, 3, 30):
                assert weil_sum_direct(WeilSumQuery(ctx, u, a, b)) == naive_sum(ctx, u, a, b)


@pytest.mark.parametrize("m,u", [(5, 1), (5, 2), (6, 1), (7, 3)])
def test_lines_match_direct(m, u):
    ctx = make_field(m)
    sb = weil_sums_over_b(ctx, u, 1)
    sa = weil_sums_over_a(ctx, u)
    for x in ctx.elements():
        assert sb[x] == weil_sum_direct(WeilSumQuery(ctx, u, 1, x))
        assert sa[x] == weil_sum_direct(WeilSumQuery(ctx, u, x, 0))


def test_full_grid_m5_agrees_everywhere():
    # scaling law S(a,b) = S(1, b/gamma) is implicit in the closed forms
    ctx = make_field(5)
    rows = list(weil_sweep(ctx, 1, grid="full"))
    assert len(rows) == 1024
    assert all(r["agrees"] == "true" for r in rows)


def test_find_gamma():
    ctx = make_field(7)
    for a in (1, 2, 0x55):
        g = find_gamma(ctx, 2, a)
        assert ctx.pow(g, 5) == a


def test_fwht_small():
    f = np.array([1, -1, 1, 1])
    # W[c] = sum_x f[x] (-1)^popcount(c & x)
    ref = [sum(int(f[x]) * (-1) ** bin(c & x).count("1") for x in range(4)) for c in range(4)]
    assert fwht(f).tolist() == ref


def test_coprime_exponents():
    assert coprime_exponents(9) == [1, 2, 4, 5, 7, 8]
    assert coprime_exponents(7) == list(range(1, 7))


def test_query_validation():
    with pytest.raises(ValueError):
        q(3, 0, 1, 1)
    with pytest.raises(ValueError):
        q(3, 1, 8, 1)


def test_full_grid_check_matches_sweep():
    ctx = make_field(7)
    for u in (1, 3):
        pairs, bad = full_grid_check(ctx, u)
        assert pairs == 1 << 14 and bad == 0
        assert all(r["agrees"] == "true" for r in weil_sweep(ctx, u, grid="full"))


def test_full_grid_check_nontrivial_e():
    assert full_grid_check(make_field(9), 3) == (1 << 18, 0)


def test_full_grid_check_detects_broken_trace():
    ctx = make_field(7)
    ctx.trace_mask ^= 1 << 6
    assert full_grid_check(ctx, 1)[1] > 0


def test_full_grid_check_even_quotient():
    with pytest.raises(ValueError):
        full_grid_check(make_field(6), 1)


def test_fwht_batched_rows():
    f = np.array([[1, -1, 1, 1], [1, 1, 1, 1]])
    assert fwht(f).tolist() == [fwht(f[0]).tolist(), fwht(f[1]).tolist()]
