"""Symplectic eigenvalues and degeneracy analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite, ZeroSymplecticEigenvalue
from .matcore import eigvals
from .sympbase import INTERLEAVED, n_modes, omega

# Relative gap (to the largest eigenvalue) below which two modes count as
# degenerate.
TAU_DEG = 1e-8


@dataclass
class SympSpectrum:
    lambdas: np.ndarray
    gaps: np.ndarray
    degenerate_groups: list
    tau_deg: float = TAU_DEG

    @property
    def d(self):
        return len(self.lambdas)

    @property
    def is_degenerate(self):
        return any(len(g) > 1 for g in self.degenerate_groups)

    def min_relative_gap(self):
        lam = np.abs(self.lambdas)
        if len(lam) < 2:
            return np.inf
        diffs = np.abs(lam[:, None] - lam[None, :])
        diffs[np.diag_indices_from(diffs)] = np.inf
        return float(np.min(diffs) / np.max(lam))


def spectrum_from_lambdas(lambdas, tau_deg=TAU_DEG):
    """Wrap a list of symplectic eigenvalues with gap/degeneracy data."""
    lambdas = np.asarray(lambdas)
    sq = lambdas**2
    gaps = np.abs(sq[:, None] - sq[None, :])
    return SympSpectrum(lambdas, gaps, degenerate_groups(lambdas, tau_deg), tau_deg)


def degenerate_groups(lambdas, tau_deg=TAU_DEG):
    """Partition modes: ``m`` and ``n`` share a group iff their values are
    within ``tau_deg * max|lambda|`` (closed under chaining)."""
    lambdas = np.asarray(lambdas)
    d = len(lambdas)
    thresh = tau_deg * np.max(np.abs(lambdas))
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            if abs(lambdas[i] - lambdas[j]) <= thresh:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def sqrtm_psd_factor(V):
    """Symmetric square root of a positive definite matrix via ``eigh``.

    Raises:
        NotPositiveDefinite: if any eigenvalue is not strictly positive.
    """
    w, Q = np.linalg.eigh(V)
    if w[0] <= 0 or w[0] <= 1e-14 * w[-1]:
        raise NotPositiveDefinite(f"matrix is not positive definite (smallest eigenvalue {w[0]:.3e})")
    return (Q * np.sqrt(w)) @ Q.T


def symplectic_eigenvalues(V, ordering=INTERLEAVED, tau_deg=TAU_DEG):
    r"""Symplectic eigenvalues of a positive definite ``V``, sorted descending.

    They are the positive eigenvalues of :math:`i\Omega V`, computed from the
    Hermitian matrix :math:`V^{1/2} (i\Omega) V^{1/2}`, which is similar to
    it and so has the same (exactly real) spectrum.

    Raises:
        NotPositiveDefinite: for indefinite input (use ``indefinite``).
    """
    V = np.asarray(V, dtype=float)
    d = n_modes(V)
    R = sqrtm_psd_factor(V)
    H = R @ (1j * omega(d, ordering)) @ R
    w = np.sort(eigvals((H + H.conj().T) / 2, hermitian=True))[::-1]
    lambdas = w[:d]
    if lambdas[-1] <= 0:
        raise ZeroSymplecticEigenvalue("zero symplectic eigenvalue")
    return spectrum_from_lambdas(lambdas, tau_deg)


def aleph(lambdas, m):
    r"""Spectral prefactor :math:`\lambda_m \prod_{n \ne m} (\lambda_n^2 - \lambda_m^2)`.

    Vanishes exactly when ``lambda_m`` is degenerate.
    """
    lambdas = np.asarray(getattr(lambdas, "lambdas", lambdas))
    others = np.delete(lambdas, m)
    return lambdas[m] * np.prod(others**2 - lambdas[m] ** 2)
