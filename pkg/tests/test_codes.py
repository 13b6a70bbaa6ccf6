from __future__ import annotations

import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threeweight.codes import (CodeError, LinearCode, WeightDistribution, dual_code, dual_count_closed_form,
                               gf2_rank, is_projective, kernel_rows, krawtchouk, krawtchouk_row,
                               macwilliams_dual, min_distance, pless_check, three_weight_profile)


def brute_distribution(code):
    """Reference: loop over all 2^k messages with Python ints."""
    counts = [0] * (code.n + 1)
    for bits in product((0, 1), repeat=code.k):
        w = 0
        for b, r in zip(bits, code.rows):
            if b:
                w ^= r
        counts[w.bit_count()] += 1
    return tuple(counts)


def even_weight(n):
    return LinearCode(n, [1 | (1 << i) for i in range(1, n)])


def test_repetition_code():
    c = LinearCode(6, [0b111111])
    assert c.weight_distribution().counts == (1, 0, 0, 0, 0, 0, 1)


def test_d_rho_6_5(code_6_5):
    d = code_6_5.weight_distribution()
    assert d.support() == {0: 1, 2: 15, 4: 15, 6: 1}
    assert d.enumerator() == "1 + 15z² + 15z⁴ + z⁶"


def test_quadric_5_4(quadric_5_4):
    assert quadric_5_4.weight_distribution().support() == {0: 1, 2: 10, 4: 5}


def test_gray_walk_matches_brute_force():
    rng = np.random.default_rng(7)
    for n, k in ((9, 4), (70, 6), (130, 5), (20, 18)):
        rows = []
        while len(rows) < k:
            r = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
            if gf2_rank(rows + [r]) == len(rows) + 1:
                rows.append(r)
        code = LinearCode(n, rows)
        assert code.weight_distribution().counts == brute_distribution(code)


def test_enumeration_cap():
    n = 30
    code = LinearCode(n, [1 << i for i in range(25)])
    with pytest.raises(CodeError, match="MacWilliams"):
        code.weight_distribution()


def test_dependent_rows_rejected():
    with pytest.raises(CodeError):
        LinearCode(4, [0b0011, 0b0110, 0b0101])
    assert LinearCode.from_spanning(4, [0b0011, 0b0110, 0b0101]).k == 2


def test_codewords_of_weight(code_28_7):
    words = code_28_7.codewords_of_weight(12)
    assert words.shape[0] == 63
    assert code_28_7.codewords_of_weight(13).shape[0] == 0


def test_krawtchouk_row_matches_sum():
    for n in (6, 11):
        for i in range(n + 1):
            assert krawtchouk_row(n, i) == [krawtchouk(n, j, i) for j in range(n + 1)]


def test_macwilliams_6_5():
    d = WeightDistribution((1, 0, 15, 0, 15, 0, 1), 6, 5)
    assert macwilliams_dual(d).counts == (1, 0, 0, 0, 0, 0, 1)


def test_macwilliams_28_7(code_28_7):
    dual = macwilliams_dual(code_28_7.weight_distribution())
    assert dual[4] == 315
    assert dual[1] == dual[2] == dual[3] == 0


def test_macwilliams_involution(code_36_7):
    d = code_36_7.weight_distribution()
    assert macwilliams_dual(macwilliams_dual(d)) == d


def test_inconsistent_distribution():
    with pytest.raises(CodeError, match="inconsistent distribution"):
        macwilliams_dual(WeightDistribution((1, 1, 0, 1), 3, 2))


def test_dual_code_and_double_dual(code_6_5):
    dual = dual_code(code_6_5)
    assert dual.k == 1 and dual.rows == (0b111111,)
    dd = dual_code(dual)
    assert dd.k == 5 and all(dd.contains(r) for r in code_6_5.rows)


def test_dual_of_even_weight():
    assert dual_code(even_weight(6)).weight_distribution().support() == {0: 1, 6: 1}


def test_kernel_is_orthogonal():
    code = LinearCode(10, [0b1011001110, 0b0110101011, 0b1111000001])
    for h in kernel_rows(code.rows, code.n):
        for g in code.rows:
            assert (h & g).bit_count() % 2 == 0


@pytest.mark.parametrize("fixture,d", [("code_6_5", 2), ("code_28_7", 12), ("code_36_7", 16)])
def test_min_distance(fixture, d, request):
    assert min_distance(request.getfixturevalue(fixture)) == d


def test_projective_examples(code_6_5):
    s = is_projective(code_6_5)
    assert s.projective and s.d_perp == 6 and s.route == "transform+enumeration"
    zero_col = LinearCode(4, [0b0011, 0b0110])  # column 4 is zero
    assert not is_projective(zero_col).projective
    equal_cols = LinearCode(4, [0b0111, 0b1011])  # columns 1 and 2 equal
    s = is_projective(equal_cols)
    assert not s.projective and s.distribution[2] >= 1


def test_full_space_is_projective():
    s = is_projective(LinearCode(3, [1, 2, 4]))
    assert s.projective and s.d_perp == math.inf


def test_pless_passes(code_6_5, quadric_5_4):
    dist = code_6_5.weight_distribution()
    assert pless_check(dist, is_projective(code_6_5)).ok
    assert pless_check(quadric_5_4.weight_distribution(), is_projective(quadric_5_4)).ok


def test_pless_detects_perturbation(code_6_5):
    counts = list(code_6_5.weight_distribution().counts)
    counts[2] -= 1
    bad = WeightDistribution(tuple(counts), 6, 5)
    v = pless_check(bad, WeightDistribution((1, 0, 0, 0, 0, 0, 1), 6, 1))
    assert not v.ok and v.failed.startswith("sum A_j")


def test_closed_form_examples():
    assert dual_count_closed_form(28, 7, 12, 2) == 315
    assert dual_count_closed_form(6, 5, 2, 2) == 0
    assert dual_count_closed_form(6, 5, 2, 3) == 1


def test_profile_examples(code_6_5, code_28_7):
    p = three_weight_profile(code_6_5)
    assert p.ok and p.weights == (2, 4, 6)
    p = three_weight_profile(code_28_7)
    assert p.ok and p.weights == (12, 16, 28)


def test_profile_hypothesis_fail():
    # columns e1, e2, e3, e1+e2: projective, weights {1, 2, 3}, no all-ones word
    code = LinearCode(4, [0b1001, 0b1010, 0b0100])
    assert code.weight_distribution().nonzero_weights() == [1, 2, 3]
    assert is_projective(code).projective
    p = three_weight_profile(code)
    assert not p.hypotheses_ok and p.failed_hypothesis == "A_n = 1"
    p = three_weight_profile(LinearCode(4, [0b0011, 0b1100]))
    assert not p.hypotheses_ok and p.failed_hypothesis


def test_column_permutation_invariance(code_28_7):
    rng = np.random.default_rng(1)
    perm = rng.permutation(code_28_7.n)
    rows = []
    for r in code_28_7.rows:
        rows.append(sum(((r >> int(p)) & 1) << i for i, p in enumerate(perm)))
    assert LinearCode(28, rows).weight_distribution() == code_28_7.weight_distribution()


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 14).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=n))))
def test_transform_matches_enumerated_dual(args):
    n, rows = args
    code = LinearCode.from_spanning(n, rows)
    dist = code.weight_distribution()
    assert dist.total == 1 << code.k
    if code.k == n:
        return
    assert macwilliams_dual(dist).counts == dual_code(code).weight_distribution().counts
    assert pless_check(dist, macwilliams_dual(dist)).ok


def test_enumerator_formatting():
    d = WeightDistribution((1, 1, 0, 2), 3, 2)
    assert d.enumerator() == "1 + z + 2z³"


def test_distribution_validation():
    with pytest.raises(CodeError):
        WeightDistribution((1, 2), 3, 1)
    with pytest.raises(CodeError):
        WeightDistribution((1, -1), 1, 1)
