import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympdet import fixtures as F
from sympdet.baseline import decompose_baseline, s_vectors_from_S
from sympdet.detdiag import a_matrix
from sympdet.identities import (
    degenerate_bordered_sides,
    degenerate_minor_sides,
    relative_gap,
    selector,
    single_minor_sides,
    bordered_sides,
)
from sympdet.matcore import delete_row_col
from sympdet.sympbase import random_covariance

from conftest import make_instance

seeds = st.integers(0, 2**31 - 1)


def gap(lhs, rhs, rows_scale):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-12 * rows_scale)


def test_selector_deletes_row_and_column():
    A = np.arange(16.0).reshape(4, 4)
    np.testing.assert_array_equal(selector(4, 1).T @ A @ selector(4, 2), delete_row_col(A, 1, 2))


@given(st.integers(1, 4), seeds)
def test_single_minor_identity(d, seed):
    inst = make_instance(d, seed)
    ref = decompose_baseline(inst.V)
    s = s_vectors_from_S(ref.S)
    for m in range(d):
        pairs = [single_minor_sides(inst.V, ref.lambdas, m, k, l, s) for k in range(2 * d) for l in range(2 * d)]
        scale = max(max(abs(a), abs(b)) for a, b in pairs)
        assert max(gap(a, b, scale) for a, b in pairs) < 1e-7


@given(st.integers(1, 4), seeds)
def test_bordered_determinant_identity(d, seed):
    inst = make_instance(d, seed)
    ref = decompose_baseline(inst.V)
    s = s_vectors_from_S(ref.S)
    rng = np.random.default_rng(seed)
    n = 2 * d
    for m in range(d):
        Bx = rng.normal(size=(n, n - 1)) + 1j * rng.normal(size=(n, n - 1))
        By = rng.normal(size=(n, n - 1)) + 1j * rng.normal(size=(n, n - 1))
        lhs, rhs = bordered_sides(inst.V, ref.lambdas, m, Bx, By, s[m])
        assert relative_gap(lhs, rhs, floor=0.0) < 1e-7


def test_bordered_identity_reduces_to_single_minor():
    # With B_x, B_y the column selectors, the bordered identity is the single-minor one.
    inst = make_instance(2, 11)
    ref = decompose_baseline(inst.V)
    s = s_vectors_from_S(ref.S)
    lhs2, rhs2 = bordered_sides(inst.V, ref.lambdas, 1, selector(4, 0), selector(4, 3), s[1])
    lhs1, rhs1 = single_minor_sides(inst.V, ref.lambdas, 1, 0, 3, s)
    assert lhs2 == pytest.approx(lhs1)
    assert rhs2 == pytest.approx(rhs1)


def degenerate_instance(seed):
    return random_covariance(3, [3.0, 1.5, 1.5], seed=seed)


@given(seeds)
def test_degenerate_minor_identity(seed):
    inst = degenerate_instance(seed)
    s = s_vectors_from_S(inst.S)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        ks = sorted(rng.choice(6, size=2, replace=False))
        ls = sorted(rng.choice(6, size=2, replace=False))
        lhs, rhs = degenerate_minor_sides(inst.V, inst.lambdas, [1, 2], ks, ls, s)
        assert gap(lhs, rhs, 1.0) < 1e-6


@given(seeds)
def test_degenerate_bordered_identity(seed):
    inst = degenerate_instance(seed)
    s = s_vectors_from_S(inst.S)
    rng = np.random.default_rng(seed)
    Bx = rng.normal(size=(6, 4))
    By = rng.normal(size=(6, 4))
    lhs, rhs = degenerate_bordered_sides(inst.V, inst.lambdas, [1, 2], Bx, By, s)
    assert relative_gap(lhs, rhs, floor=0.0) < 1e-6


def test_degenerate_identity_on_closed_form():
    fx = F.degenerate_three_mode()
    S0 = F.degenerate_limit_S()
    s = s_vectors_from_S(S0)
    # Closed-form labels: modes 0 and 2 carry the repeated value a/2.
    lhs, rhs = degenerate_minor_sides(fx.V, fx.lambdas, [0, 2], [2, 4], [2, 4], s)
    assert lhs == pytest.approx(0.3125)
    assert rhs == pytest.approx(0.3125)


def test_degenerate_single_minors_vanish():
    # A doubly degenerate eigenvalue makes every single minor of A_m vanish.
    inst = degenerate_instance(2)
    A = a_matrix(inst.V, 1.5)
    for k in range(6):
        for l in range(6):
            assert abs(np.linalg.det(delete_row_col(A, k, l))) < 1e-9


def test_shape_validation():
    inst = degenerate_instance(0)
    with pytest.raises(ValueError):
        degenerate_bordered_sides(inst.V, inst.lambdas, [1, 2], np.ones((6, 5)), np.ones((6, 5)), s_vectors_from_S(inst.S))
    with pytest.raises(ValueError):
        degenerate_minor_sides(inst.V, inst.lambdas, [1, 2], [0], [1], s_vectors_from_S(inst.S))
