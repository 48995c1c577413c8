import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympdet import fixtures as F
from sympdet.baseline import baseline_work, decompose_baseline, s_vectors_from_S, sqrt_sym_pd
from sympdet.errors import NotPositiveDefinite
from sympdet.sympbase import gauge_distance, omega, svec_to_rows

from conftest import make_instance


def test_square_root():
    inst = make_instance(2, 3)
    R = sqrt_sym_pd(inst.V)
    np.testing.assert_allclose(R @ R, inst.V, atol=1e-12)
    np.testing.assert_allclose(R, R.T)


def test_K_is_orthogonal():
    work = baseline_work(make_instance(3, 4).V)
    K = work["K"]
    np.testing.assert_allclose(K @ K.T, np.eye(6), atol=1e-12)
    # K X K^T is the block-diagonal normal form of X.
    expected = np.kron(np.diag(work["lambdas"]), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    np.testing.assert_allclose(K @ work["X"] @ K.T, expected, atol=1e-12)


@given(st.integers(1, 6), st.integers(0, 2**31 - 1), st.sampled_from(["xpxp", "xxpp"]))
def test_baseline_recovers_instance(d, seed, ordering):
    inst = make_instance(d, seed, ordering)
    out = decompose_baseline(inst.V, ordering)
    assert out.residual_symp < 1e-10 and out.residual_rec < 1e-10
    np.testing.assert_allclose(out.lambdas, inst.lambdas, rtol=1e-10)
    assert gauge_distance(out.S, inst.S, out.lambdas, ordering) < 1e-8


def test_baseline_two_mode_fixture():
    fx = F.two_mode_squeezed()
    out = decompose_baseline(fx.V)
    assert gauge_distance(out.S, fx.sorted().S, out.lambdas) < 1e-12


def test_baseline_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        decompose_baseline(np.diag([1.0, -1.0]))


def test_s_vectors_layout():
    S = make_instance(2, 5).S
    s = s_vectors_from_S(S)
    assert s.shape == (2, 4)
    x, p = svec_to_rows(s[1])
    np.testing.assert_allclose(np.vstack([x, p]), S[2:4], atol=1e-14)
    # Symplectic rows give orthonormal s-vectors under <s, s'> = s^dagger (i Omega) s' / 2.
    G = s.conj() @ (1j * omega(2)) @ s.T / 2
    np.testing.assert_allclose(np.abs(G), np.eye(2), atol=1e-12)
