from pathlib import Path

import numpy as np
import pytest

from sympdet import decompose_det, gauge_distance
from sympdet import fixtures as F
from sympdet import io as sio
from sympdet.sympbase import reconstruction_residual, symplectic_residual
from sympdet.sympeig import symplectic_eigenvalues

DATA = Path(__file__).resolve().parents[1] / "data" / "fixtures"


@pytest.mark.parametrize(
    "fx",
    [
        F.two_mode_squeezed(),
        F.two_mode_squeezed(5.0, 1.0, 0.5),
        F.three_mode(2.0, 0.5),
        F.three_mode(3.0, 1.0),
        F.three_mode(1.5, 0.3),
        F.degenerate_three_mode(1.0, 0.2),
        F.degenerate_three_mode(2.0, 0.0),
    ],
    ids=lambda fx: f"{fx.name}-{fx.params}",
)
def test_closed_forms_are_williamson_decompositions(fx):
    assert symplectic_residual(fx.S) < 1e-13
    assert reconstruction_residual(fx.V, fx.S, fx.lambdas) < 1e-13
    np.testing.assert_allclose(np.sort(symplectic_eigenvalues(fx.V).lambdas), np.sort(fx.lambdas), rtol=1e-12)


def test_published_values():
    np.testing.assert_allclose(F.two_mode_squeezed(3, 2, 2).lambdas, [1.0, 2.0])
    assert F.two_mode_squeezed(3, 2, 2).params["y"] == 9
    np.testing.assert_allclose(F.degenerate_three_mode(1.0).lambdas, [0.5, 2.0, 0.5])
    S0 = F.degenerate_limit_S()
    assert set(np.round(np.abs(S0[S0 != 0]), 12)) == set(
        np.round([1 / np.sqrt(2), 1 / np.sqrt(3), np.sqrt(2 / 3), 1 / np.sqrt(6)], 12)
    )


def test_sorted_relabels_modes():
    fx = F.three_mode().sorted()
    assert np.all(np.diff(fx.lambdas) < 0)
    assert reconstruction_residual(fx.V, fx.S, fx.lambdas) < 1e-13


@pytest.mark.parametrize("stem", ["two_mode_squeezed", "three_mode", "degenerate_three_mode"])
def test_shipped_files_match_generators(stem):
    mf = sio.read_matrix(str(DATA / f"{stem}.json"))
    assert "provenance" in mf.meta
    S = np.array(mf.meta["S"])
    assert symplectic_residual(S) < 1e-13
    assert reconstruction_residual(mf.data, S, mf.meta["lambdas"]) < 1e-13


def test_two_mode_closed_form_survives_equal_diagonal():
    # At a = b the two eigenvalues coincide and the general formula still applies.
    fx = F.two_mode_squeezed(3.0, 3.0, 2.0)
    np.testing.assert_allclose(fx.lambdas, [np.sqrt(5.0)] * 2)
    assert reconstruction_residual(fx.V, fx.S, fx.lambdas) < 1e-13
    out = decompose_det(fx.V)
    assert out.method == "det-perturbed"
    assert gauge_distance(out.S, fx.S, out.lambdas) < 1e-8
