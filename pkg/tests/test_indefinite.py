import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympdet.detdiag import decompose_det
from sympdet.errors import DegenerateSpectrum, ZeroSymplecticEigenvalue
from sympdet.indefinite import NotDiagonalizable, decompose_indefinite, positive_eigenvalues, signed_spectrum
from sympdet.sympbase import convert_ordering, gauge_distance, random_covariance, williamson_matrix

from conftest import spaced_lambdas


def signed_instance(d, seed, ordering="xpxp"):
    rng = np.random.default_rng(seed)
    lam = spaced_lambdas(d, rng, lo=0.5, hi=4.0)
    signs = rng.choice([-1.0, 1.0], size=d)
    if d > 1 and np.all(signs == signs[0]):
        signs[0] = -signs[0]
    return random_covariance(d, signs * lam, seed=seed, ordering=ordering)


@given(st.integers(1, 4), st.integers(0, 2**31 - 1), st.sampled_from(["xpxp", "xxpp"]))
def test_round_trip_recovers_signs(d, seed, ordering):
    inst = signed_instance(d, seed, ordering)
    out = decompose_indefinite(inst.V, ordering)
    assert not isinstance(out, NotDiagonalizable), out
    order = np.argsort(-np.abs(inst.lambdas))
    np.testing.assert_array_equal(np.sign(out.lambdas), np.sign(inst.lambdas[order]))
    np.testing.assert_allclose(out.lambdas, inst.lambdas[order], rtol=1e-9)
    assert out.residual_symp < 1e-8 and out.residual_rec < 1e-8
    S_ref = convert_ordering(inst.S, ordering, "xpxp")[np.ravel([[2 * m, 2 * m + 1] for m in order])]
    assert gauge_distance(convert_ordering(out.S, ordering, "xpxp"), S_ref, out.lambdas) < 1e-6


def test_positive_definite_matches_det_method():
    inst = random_covariance(3, [3.0, 2.0, 1.0], seed=2)
    out = decompose_indefinite(inst.V)
    ref = decompose_det(inst.V)
    np.testing.assert_allclose(out.lambdas, ref.lambdas, rtol=1e-10)
    assert gauge_distance(out.S, ref.S, out.lambdas) < 1e-8


def test_negative_definite():
    out = decompose_indefinite(-williamson_matrix([2.0, 1.0]))
    np.testing.assert_allclose(out.lambdas, [-2.0, -1.0])


def test_hyperbolic_matrix_is_not_diagonalizable():
    verdict = decompose_indefinite(np.diag([1.0, -1.0]))
    assert isinstance(verdict, NotDiagonalizable)
    assert verdict.method == "det-indefinite"
    assert "gimel" in verdict.reason


@given(st.integers(0, 2**31 - 1))
def test_generic_indefinite_matrices_give_verdict_or_certified(seed):
    rng = np.random.default_rng(seed)
    G = rng.normal(size=(4, 4))
    V = (G + G.T) / 2
    try:
        out = decompose_indefinite(V)
    except (DegenerateSpectrum, ZeroSymplecticEigenvalue):
        return
    if not isinstance(out, NotDiagonalizable):
        assert out.residual_symp < 1e-8 and out.residual_rec < 1e-8


def test_signed_spectrum_fields():
    inst = random_covariance(2, [3.0, -1.0], seed=0)
    ss = signed_spectrum(inst.V)
    np.testing.assert_allclose(ss.lambdas_plus, [3.0, 1.0])
    np.testing.assert_array_equal(ss.signs, [1, -1])
    assert ss.diagonalizable_candidate
    np.testing.assert_allclose(ss.gimel.real * ss.signs > 0, True)


def test_zero_and_degenerate_are_rejected():
    with pytest.raises(ZeroSymplecticEigenvalue):
        positive_eigenvalues(np.diag([1.0, 0.0, 1.0, 1.0]))
    with pytest.raises(DegenerateSpectrum):
        signed_spectrum(williamson_matrix([2.0, -2.0]))
