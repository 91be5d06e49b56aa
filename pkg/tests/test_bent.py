import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdsforge.bent import (
    QuadraticForm,
    TruthTable,
    algebraic_degree,
    bent_from_apn,
    bent_from_image,
    bilinear_rank,
    derivative_balance,
    distance_to_affine,
    eval_quadratic,
    graph_rds_check,
    is_bent,
    quad_coeffs,
    summarize,
    walsh,
)
from rdsforge.differential import image_profile
from rdsforge.field import finv, make_field
from rdsforge.functions import family_paper_linear, family_special

import oracles

GF8 = make_field(3)


def random_quadratic(m, rng):
    return eval_quadratic(QuadraticForm(m, np.triu(rng.integers(0, 2, (m, m)))))


def test_bent_from_apn_gf8():
    F = bent_from_apn(GF8, 1)
    assert F.m == 2 and F.tolist() == [0, 1, 1, 1]
    # ANF x1 + x2 + x1 x2
    assert F.tolist() == [(x1 ^ x2 ^ (x1 & x2)) for x2 in (0, 1) for x1 in (0, 1)]
    assert algebraic_degree(F) == 2


@pytest.mark.parametrize("n", [5, 7, 9])
def test_bent_from_apn_zero_input(n):
    F = make_field(n)
    for a in (1, 2, F.order - 1):
        assert bent_from_apn(F, a).bits[0] == 0


def test_bent_from_apn_errors():
    with pytest.raises(ValueError):
        bent_from_apn(make_field(4), 1)
    with pytest.raises(ValueError):
        bent_from_apn(GF8, 0)


def test_walsh_examples():
    F = TruthTable(2, [0, 1, 1, 1])
    assert walsh(F).values.tolist() == [-2, 2, 2, 2]
    assert is_bent(F)
    zero = TruthTable(4, np.zeros(16))
    assert walsh(zero).values.tolist() == [16] + [0] * 15
    assert not is_bent(zero)
    assert not is_bent(TruthTable(3, [0, 1, 1, 1, 0, 0, 0, 1]))


def test_distance_examples():
    assert distance_to_affine(TruthTable(2, [0, 1, 1, 1])) == 1
    aff = TruthTable(3, [(bin(x & 5).count("1") & 1) ^ 1 for x in range(8)])
    assert distance_to_affine(aff) == 0
    bent4 = eval_quadratic(QuadraticForm(4, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]))
    assert is_bent(bent4) and distance_to_affine(bent4) == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_walsh_distance_degree_match_oracles(m, data):
    bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << m, max_size=1 << m))
    F = TruthTable(m, bits)
    W = walsh(F).values
    assert W.tolist() == oracles.walsh_direct(bits)
    assert int((W ** 2).sum()) == 1 << (2 * m)
    assert distance_to_affine(F) == oracles.distance_to_affine_direct(bits)
    assert algebraic_degree(F) == oracles.anf_degree_direct(bits)


def test_quad_coeffs_gf8():
    q = quad_coeffs(GF8, 1)
    assert q.coeffs.tolist() == [[1, 0], [1, 1]]
    assert eval_quadratic(q).tolist() == [0, 1, 1, 1]


def test_eval_quadratic_examples():
    assert eval_quadratic(QuadraticForm(3, np.zeros((3, 3)))).tolist() == [0] * 8
    assert eval_quadratic(QuadraticForm(2, [[0, 1], [0, 0]])).tolist() == [0, 0, 0, 1]


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_quadratic_form_reproduces_bent_from_apn(n):
    F = make_field(n)
    a_list = range(1, F.order) if n <= 7 else np.random.default_rng(n).integers(1, F.order, 16)
    for a in a_list:
        a = int(a)
        assert eval_quadratic(quad_coeffs(F, a)) == bent_from_apn(F, a)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_h_is_invariant_under_a_inverse_shift(n):
    F = make_field(n)
    x = F.elements()
    for a in (1, 3, F.order - 2):
        t = family_paper_linear(F, a).table
        assert np.array_equal(t, t[x ^ finv(F, a)])


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_bent_from_image_agrees_with_direct_construction(n):
    F = make_field(n)
    for a in (1, 6, F.order - 1):
        img = image_profile(family_paper_linear(F, a)).image
        assert bent_from_image(F, img, finv(F, a)) == bent_from_apn(F, a)


def test_bent_from_image_rejects_non_transversal():
    with pytest.raises(ValueError):
        bent_from_image(GF8, [0, 1, 2, 4], 1)


def test_bilinear_rank_examples():
    assert bilinear_rank(TruthTable(2, [0, 0, 0, 1])) == 2
    assert bilinear_rank(TruthTable(2, [0, 1, 1, 1])) == 2
    assert bilinear_rank(TruthTable(3, [0, 1, 1, 0, 1, 0, 0, 1])) == 0  # linear
    cubic = TruthTable(3, [0, 0, 0, 0, 0, 0, 0, 1])
    with pytest.raises(ValueError):
        bilinear_rank(cubic)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_bent_from_apn_full_rank(n):
    F = make_field(n)
    for a in (1, 2, F.order - 1):
        T = bent_from_apn(F, a)
        assert is_bent(T)
        assert bilinear_rank(T) == n - 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6]), st.integers(0, 2**32 - 1))
def test_rank_matches_textbook_gram_rank(m, seed):
    F = random_quadratic(m, np.random.default_rng(seed))
    gram = [[int(F.bits[(1 << i) ^ (1 << j)] ^ F.bits[1 << i] ^ F.bits[1 << j] ^ F.bits[0])
             if i != j else 0 for j in range(m)] for i in range(m)]
    assert bilinear_rank(F) == oracles.rank_f2_direct(gram)


def test_graph_examples():
    r = graph_rds_check(TruthTable(2, [0, 1, 1, 1]))
    assert r.verdict and r.params.as_tuple() == (4, 2, 4, 2)
    aff = TruthTable(2, [0, 1, 0, 1])
    assert not graph_rds_check(aff).verdict
    assert not derivative_balance(aff)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_three_way_agreement_on_random_quadratics(m):
    rng = np.random.default_rng(100 + m)
    seen = set()
    for _ in range(60):
        F = random_quadratic(m, rng)
        bent = is_bent(F)
        seen.add(bent)
        assert derivative_balance(F) == bent
        assert graph_rds_check(F).verdict == bent
        assert (bilinear_rank(F) == m) == bent
    assert seen == {True, False}


def test_three_way_agreement_on_non_quadratics():
    rng = np.random.default_rng(5)
    for m in (2, 4, 6):
        for _ in range(30):
            F = TruthTable(m, rng.integers(0, 2, 1 << m))
            assert derivative_balance(F) == is_bent(F) == graph_rds_check(F).verdict


@pytest.mark.parametrize("k", [2, 3, 4])
def test_special_family_bent_summary_is_reported(k):
    spec = make_field(2 * k - 1)
    img = image_profile(family_special(spec)).image
    s = summarize(bent_from_image(spec, img, 1))
    d = s.to_dict()
    assert d["m"] == 2 * k - 2 and d["is_bent"] is True
    assert set(d) == {"m", "is_bent", "degree", "bilinear_rank", "epsilon"}


def test_truth_table_json_roundtrip():
    F = bent_from_apn(make_field(5), 3)
    assert TruthTable.from_dict(F.to_dict()) == F
    with pytest.raises(ValueError):
        TruthTable(2, [0, 1, 2, 0])
