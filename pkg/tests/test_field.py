import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdsforge.field import (
    FieldSpec,
    complete_basis,
    exponent_inverse,
    f2_rank,
    finv,
    fmul,
    fpow,
    is_irreducible,
    make_field,
    trace,
    vmul,
    vpow,
    vtrace,
)

import oracles


@pytest.mark.parametrize("n,poly", [(2, 0b111), (3, 0b1011), (4, 0b10011)])
def test_make_field_examples(n, poly):
    assert make_field(n).poly == poly


@pytest.mark.parametrize("n", range(2, 11))
def test_make_field_matches_trial_division(n):
    assert make_field(n).poly == oracles.smallest_irreducible(n)


def test_irreducibility_agrees_with_trial_division():
    for p in range(4, 1 << 9):
        assert is_irreducible(p) == oracles.is_irreducible_trial(p), p


@pytest.mark.parametrize("n", [1, 25, 0])
def test_make_field_range(n):
    with pytest.raises(ValueError):
        make_field(n)


def test_fieldspec_rejects_reducible():
    with pytest.raises(ValueError):
        FieldSpec(3, 0b1001)  # x^3 + 1 = (x + 1)(x^2 + x + 1)


def test_fieldspec_json_roundtrip():
    spec = make_field(7)
    assert json.loads(spec.to_json()) == {"n": 7, "poly": 0x83}
    assert FieldSpec.from_dict(json.loads(spec.to_json())) == spec


def test_gf8_products():
    F = make_field(3)
    assert fmul(F, 2, 2) == 4
    assert fmul(F, 4, 2) == 3
    assert finv(F, 2) == 5
    assert fmul(F, 2, 5) == 1


def test_finv_zero():
    with pytest.raises(ZeroDivisionError):
        finv(make_field(3), 0)


def test_fpow_conventions():
    F = make_field(5)
    assert fpow(F, 0, 0) == 1
    assert fpow(F, 0, 31) == 0
    assert fpow(F, 7, 0) == 1
    assert fpow(F, 7, 31) == 1


def test_gf8_trace():
    F = make_field(3)
    assert trace(F, 0) == 0
    assert trace(F, 1) == 1
    assert trace(F, 2) == 0
    assert [a for a in range(8) if trace(F, a) == 0] == [0, 2, 4, 6]


@pytest.mark.parametrize("n", range(2, 9))
def test_scalar_ops_match_oracle(n):
    F = make_field(n)
    O = oracles.Field(n)
    for a in range(F.order):
        assert trace(F, a) == O.trace(a)
        for b in range(0, F.order, 3):
            assert fmul(F, a, b) == O.mul(a, b)
        assert fpow(F, a, 5) == O.pow(a, 5)
        if a:
            assert finv(F, a) == O.inv(a)


@pytest.mark.parametrize("n", range(2, 14))
def test_trace_zero_set_has_half_the_field(n):
    F = make_field(n)
    t = vtrace(F, F.elements())
    assert int(np.count_nonzero(t == 0)) == 1 << (n - 1)


@pytest.mark.parametrize("n", [3, 8, 13])
def test_vector_ops_match_scalar(n):
    F = make_field(n)
    rng = np.random.default_rng(n)
    a = rng.integers(0, F.order, 200)
    b = rng.integers(0, F.order, 200)
    prod = vmul(F, a, b)
    assert [fmul(F, int(x), int(y)) for x, y in zip(a, b)] == prod.tolist()
    assert [fpow(F, int(x), 9) for x in a] == vpow(F, a, 9).tolist()
    assert [trace(F, int(x)) for x in a] == vtrace(F, a).tolist()


fields = st.sampled_from([make_field(n) for n in (3, 5, 8, 11, 16, 24)])


@settings(max_examples=200, deadline=None)
@given(fields, st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert fmul(F, a, b) == fmul(F, b, a)
    assert fmul(F, a, fmul(F, b, c)) == fmul(F, fmul(F, a, b), c)
    assert fmul(F, a, b ^ c) == fmul(F, a, b) ^ fmul(F, a, c)
    assert fmul(F, a, 1) == a
    assert trace(F, a ^ b) == trace(F, a) ^ trace(F, b)
    assert trace(F, a) == trace(F, fmul(F, a, a))
    if a:
        assert fmul(F, a, finv(F, a)) == 1
        assert fpow(F, a, F.order - 1) == 1


def test_exponent_inverse_examples():
    assert exponent_inverse(3, 7) == 5
    assert exponent_inverse(1, 31) == 1
    with pytest.raises(ValueError):
        exponent_inverse(3, 63)


@pytest.mark.parametrize("k", range(2, 8))
def test_exponent_inverse_of_2k_minus_1(k):
    n = 2 * k - 1
    assert exponent_inverse((1 << k) - 1, (1 << n) - 1) == (1 << k) + 1


def test_complete_basis_examples():
    F = make_field(3)
    assert complete_basis(F, 1) == [1, 2, 4]
    assert complete_basis(F, 3) == [3, 1, 4]
    with pytest.raises(ValueError):
        complete_basis(F, 0)


@pytest.mark.parametrize("n", [2, 5, 9, 12])
def test_complete_basis_full_rank(n):
    F = make_field(n)
    for first in (1, F.order - 1, 5 % F.order or 1):
        basis = complete_basis(F, first)
        assert basis[0] == first
        assert len(basis) == n
        assert f2_rank(basis) == n
