import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympdet import fixtures as F
from sympdet.baseline import s_vectors_from_S
from sympdet.detdiag import (
    DetOptions,
    a_matrix,
    choose_kbar,
    decompose_det,
    diagonal_minors,
    extract_S,
    minor_row,
    phase_product,
    s_vector,
    svectors_for,
)
from sympdet.errors import DegenerateSpectrum, DegenerateMode, NegativeNorm, NotSymplectic, PivotFailure
from sympdet.sympbase import convert_ordering, gauge_distance, random_symplectic, symplectic_residual
from sympdet.sympeig import aleph

from conftest import make_instance


def test_a_matrix_is_hermitian():
    inst = make_instance(3, 0)
    A = a_matrix(inst.V, 1.7)
    np.testing.assert_allclose(A, A.conj().T)


def test_two_mode_minor_rows_match_closed_form():
    fx = F.two_mode_squeezed()
    row1, row2 = F.two_mode_minors()
    lam1, lam2 = fx.lambdas
    np.testing.assert_allclose(minor_row(fx.V, lam1, 1).values, row1, atol=1e-12)
    np.testing.assert_allclose(minor_row(fx.V, lam2, 3).values, row2, atol=1e-12)


def test_two_mode_svectors_match_closed_form_up_to_phase():
    fx = F.two_mode_squeezed()
    ref = F.two_mode_svectors()
    for m, lam in enumerate(fx.lambdas):
        table = minor_row(fx.V, lam, choose_kbar(fx.V, lam))
        sv = s_vector(table, aleph(fx.lambdas, m))
        for k in range(4):
            for l in range(4):
                assert np.isclose(phase_product(sv, k, l), phase_product(ref[m], k, l), atol=1e-12)


def test_two_mode_decomposition():
    fx = F.two_mode_squeezed()
    out = decompose_det(fx.V)
    np.testing.assert_allclose(out.lambdas, [2.0, 1.0], atol=1e-12)
    assert gauge_distance(out.S, fx.sorted().S, out.lambdas) < 1e-12
    assert out.method == "det"
    assert out.residual_symp < 1e-12 and out.residual_rec < 1e-12


@given(st.integers(1, 5), st.integers(0, 2**31 - 1), st.sampled_from(["xpxp", "xxpp"]))
def test_decomposition_certifies(d, seed, ordering):
    inst = make_instance(d, seed, ordering)
    out = decompose_det(inst.V, ordering)
    assert out.residual_symp < 1e-8 and out.residual_rec < 1e-8
    np.testing.assert_allclose(out.lambdas, inst.lambdas, rtol=1e-9)
    assert gauge_distance(out.S, inst.S, out.lambdas, ordering) < 1e-7


@given(st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_native_block_ordering_agrees_with_converted(d, seed):
    inst = make_instance(d, seed, "xxpp")
    native = decompose_det(inst.V, "xxpp", native_ordering=True)
    converted = decompose_det(inst.V, "xxpp")
    assert native.info["work_ordering"] == "xxpp"
    assert gauge_distance(native.S, converted.S, native.lambdas, "xxpp") < 1e-9


@given(st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_fixed_pivot_policy(d, seed):
    inst = make_instance(d, seed)
    out = decompose_det(inst.V, kbar="fixed")
    assert len(set(out.info["kbar"])) == 1
    assert gauge_distance(out.S, inst.S, out.lambdas) < 1e-7


@given(st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_svectors_gauge_invariants_match_oracle(d, seed):
    inst = make_instance(d, seed)
    svecs, _ = svectors_for(inst.V, inst.lambdas)
    ref = s_vectors_from_S(inst.S)
    for m in range(d):
        outer = np.outer(svecs[m].entries.conj(), svecs[m].entries)
        np.testing.assert_allclose(outer, np.outer(ref[m].conj(), ref[m]), atol=1e-8 * np.max(np.abs(outer)))


def test_fixed_policy_skips_vanishing_pivot():
    # For a diagonal V the s-vector of mode 0 vanishes on mode 1's indices,
    # so those diagonal minors are zero and cannot serve as pivots.
    V = np.diag([2.0, 2.0, 1.0, 1.0])
    diag = diagonal_minors(V, 2.0)
    assert np.all(np.abs(diag[2:]) < 1e-12)
    with pytest.raises(PivotFailure):
        minor_row(V, 2.0, 2)
    # No single column serves both modes of a diagonal matrix.
    with pytest.raises(PivotFailure):
        decompose_det(V + 1e-3 * np.diag([0, 0, 1.0, 1.0]), kbar="fixed")
    out = decompose_det(V + 1e-3 * np.diag([0, 0, 1.0, 1.0]))
    assert out.residual_rec < 1e-12 and out.info["kbar"] == [0, 2]


def test_s_vector_errors():
    fx = F.two_mode_squeezed()
    table = minor_row(fx.V, fx.lambdas[0], 1)
    with pytest.raises(DegenerateMode):
        s_vector(table, 0.0)
    with pytest.raises(NegativeNorm):
        s_vector(table, -aleph(fx.lambdas, 0))


def test_extract_S_checks_symplecticity():
    S = random_symplectic(2, 0)
    svecs = s_vectors_from_S(S)
    np.testing.assert_allclose(extract_S(svecs), S, atol=1e-14)
    with pytest.raises(NotSymplectic):
        extract_S(svecs * 1.1)
    assert symplectic_residual(extract_S(svecs * 1.1, check=False)) > 1e-3


def test_degenerate_routing():
    with pytest.raises(DegenerateSpectrum):
        decompose_det(np.eye(4), auto_perturb=False)
    out = decompose_det(np.eye(4))
    assert out.method == "det-perturbed"
    np.testing.assert_allclose(out.lambdas, 1.0)


def test_options_dataclass_defaults():
    opts = DetOptions()
    assert opts.kbar == "per-mode" and opts.tol == 1e-8
    with pytest.raises(ValueError):
        decompose_det(make_instance(2, 0).V, kbar="bogus")


def test_block_result_converts():
    inst = make_instance(3, 7, "xxpp")
    out = decompose_det(inst.V, "xxpp")
    inter = out.to_ordering("xpxp")
    np.testing.assert_array_equal(inter.S, convert_ordering(out.S, "xxpp", "xpxp"))
