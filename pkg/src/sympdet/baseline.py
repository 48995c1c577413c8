r"""Eigenvector-based Williamson decomposition.

This is the standard numerical route :math:`S = D^{-1/2} K V^{1/2}` with
``K`` orthogonal, built from the eigenvectors of the antisymmetric matrix
:math:`X = V^{1/2} \Omega V^{1/2}`. It is independent of the determinant
method and serves as its cross-validation oracle. Positive definite input
only.
"""

from __future__ import annotations

import numpy as np

from .matcore import eigvecs_paired
from .sympbase import (
    INTERLEAVED,
    WilliamsonDecomp,
    convert_ordering,
    n_modes,
    normalize_ordering,
    omega,
    rows_to_svec,
)
from .sympeig import sqrtm_psd_factor


def sqrt_sym_pd(V):
    """Unique symmetric positive definite square root of ``V``."""
    return sqrtm_psd_factor(np.asarray(V, dtype=float))


def baseline_work(V):
    """Intermediate quantities of the construction (interleaved ordering).

    Returns:
        dict: ``Vhalf``, ``X``, ``K``, ``pairs`` and ``lambdas``.
    """
    V = np.asarray(V, dtype=float)
    d = n_modes(V)
    Vhalf = sqrt_sym_pd(V)
    X = Vhalf @ omega(d) @ Vhalf
    X = (X - X.T) / 2
    pairs = eigvecs_paired(X)
    lambdas = np.array([ev.imag for ev, _ in pairs])
    K = np.empty((2 * d, 2 * d))
    for m, (_, x) in enumerate(pairs):
        K[2 * m] = -np.sqrt(2) * x.imag
        K[2 * m + 1] = np.sqrt(2) * x.real
    return {"Vhalf": Vhalf, "X": X, "K": K, "pairs": pairs, "lambdas": lambdas}


def decompose_baseline(V, ordering=INTERLEAVED):
    """Williamson decomposition of a positive definite ``V``.

    Args:
        V (array[float]): real symmetric positive definite ``2d x 2d`` matrix
        ordering (str): quadrature ordering of ``V`` (``"xpxp"`` or ``"xxpp"``)

    Returns:
        WilliamsonDecomp: with eigenvalues sorted in decreasing order and
        residuals filled in.

    Raises:
        NotPositiveDefinite: if ``V`` is not positive definite.
    """
    ordering = normalize_ordering(ordering)
    V = np.asarray(V, dtype=float)
    Vi = convert_ordering(V, ordering, INTERLEAVED)
    work = baseline_work(Vi)
    lambdas = work["lambdas"]
    S = (work["K"] @ work["Vhalf"]) / np.sqrt(np.repeat(lambdas, 2))[:, None]
    S = convert_ordering(S, INTERLEAVED, ordering)
    return WilliamsonDecomp(S=S, lambdas=lambdas, ordering=ordering, method="baseline").certify(V)


def s_vectors_from_S(S, ordering=INTERLEAVED):
    """Pack each mode's two rows of ``S`` into its complex s-vector.

    Returns:
        array[complex]: shape ``(d, 2d)``; row ``m`` is ``s_m``.
    """
    S = np.asarray(S)
    return np.array([rows_to_svec(S, m, ordering) for m in range(n_modes(S))])
