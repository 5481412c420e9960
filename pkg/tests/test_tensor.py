"""Dense rational tensors: algebra, contraction, raising and lowering."""

from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paratwin.errors import ValidationError
from paratwin.scalar import Q, ZERO
from paratwin.tensor import (DOWN, UP, TensorDense, apply_endo, contract,
                             lower_index, matrix_determinant, matrix_inverse,
                             raise_index, symmetric_signature, tensor_equal,
                             transpose)

rationals = st.builds(Q, st.integers(-9, 9), st.integers(1, 5))


def tensors(dim=2, nslots=3):
    return st.builds(
        lambda vals: TensorDense(dim, (UP,) + (DOWN,) * (nslots - 1), vals),
        st.lists(rationals, min_size=dim ** nslots, max_size=dim ** nslots))


#: a fixed non-degenerate indefinite metric in dimension 2
G2 = TensorDense.from_matrix([[1, 2], [2, -1]], (DOWN, DOWN))
G2_INV = TensorDense.from_matrix(matrix_inverse(G2.matrix()), (UP, UP))


def test_shape_validation():
    with pytest.raises(ValidationError):
        TensorDense(3, (UP,), [ZERO] * 3)          # odd dimension
    with pytest.raises(ValidationError):
        TensorDense(2, (UP, DOWN), [ZERO] * 3)     # wrong component count
    with pytest.raises(ValidationError):
        TensorDense(2, ("x",), [ZERO] * 2)         # bad variance flag


def test_immutability():
    t = TensorDense.zeros(2, (UP, DOWN))
    with pytest.raises(AttributeError):
        t.dim = 4


@given(tensors(), tensors())
def test_addition_componentwise(a, b):
    s = a + b
    assert all(s.data[i] == a.data[i] + b.data[i] for i in range(len(s.data)))
    assert tensor_equal(s - b, a)


@given(tensors(), rationals, rationals)
def test_scale_is_linear(t, r, s):
    assert tensor_equal(t.scale(r) + t.scale(s), t.scale(r + s))


@given(tensors())
@settings(max_examples=30)
def test_raise_lower_round_trip(t):
    for slot in range(1, t.nslots):
        up = raise_index(t, slot, G2_INV)
        assert up.variance[slot] == UP
        assert tensor_equal(lower_index(up, slot, G2), t)


@given(tensors())
@settings(max_examples=30)
def test_transpose_composition(t):
    for p in permutations(range(t.nslots)):
        for q in permutations(range(t.nslots)):
            once = transpose(transpose(t, p), q)
            composed = tuple(p[k] for k in q)
            assert tensor_equal(once, transpose(t, composed))


@given(tensors())
def test_transpose_semantics(t):
    p = (1, 2, 0)
    tt = transpose(t, p)
    for idx in product(range(t.dim), repeat=3):
        old = [0] * 3
        for k in range(3):
            old[p[k]] = idx[k]
        assert tt[idx] == t[tuple(old)]


def test_contract_requires_mixed_pair():
    t = TensorDense.zeros(2, (DOWN, DOWN))
    with pytest.raises(ValidationError):
        contract(t, 0, 1)
    with pytest.raises(ValidationError):
        contract(TensorDense.identity(2), 0, 0)


def test_contract_identity_gives_dimension():
    for n in (2, 4, 6):
        assert contract(TensorDense.identity(n), 0, 1).item() == Q(n)


@given(tensors())
def test_apply_identity_endo_is_identity(t):
    e = TensorDense.identity(t.dim)
    for slot in range(t.nslots):
        assert tensor_equal(apply_endo(t, slot, e), t)


@given(tensors(), tensors())
@settings(max_examples=30)
def test_contract_is_additive(a, b):
    assert tensor_equal(contract(a + b, 0, 1), contract(a, 0, 1) + contract(b, 0, 1))


def test_matrix_inverse_and_determinant():
    m = [[Q(2), Q(1)], [Q(7), Q(4)]]
    inv = matrix_inverse(m)
    assert inv == [[Q(4), Q(-1)], [Q(-7), Q(2)]]
    assert matrix_determinant(m) == Q(1)
    assert matrix_inverse([[Q(1), Q(2)], [Q(2), Q(4)]]) is None
    assert matrix_determinant([[Q(1), Q(2)], [Q(2), Q(4)]]) == ZERO


def test_signature_neutral_metric():
    g = [[Q(1), ZERO, ZERO, ZERO],
         [ZERO, Q(1), ZERO, ZERO],
         [ZERO, ZERO, Q(-1), ZERO],
         [ZERO, ZERO, ZERO, Q(-1)]]
    assert symmetric_signature(g) == (2, 2, 0)
    # twin metric of the family basis: off-diagonal blocks
    gt = [[ZERO, Q(1), ZERO, ZERO],
          [Q(1), ZERO, ZERO, ZERO],
          [ZERO, ZERO, ZERO, Q(-1)],
          [ZERO, ZERO, Q(-1), ZERO]]
    assert symmetric_signature(gt) == (2, 2, 0)
