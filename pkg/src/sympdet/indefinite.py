r"""Symplectic diagonalisation of indefinite (or complex) symmetric matrices.

When ``V`` is not positive definite a real symplectic ``S`` with
``V = S^T D S`` may or may not exist, and the entries of ``D`` may be
negative. The eigenvalues of :math:`i\Omega V` still come in pairs
:math:`\pm\lambda_m`; the one with positive real part (positive imaginary
part on ties) is :math:`\lambda_m^+`. The sign actually present in ``D`` is
read off the normalised diagonal minor

.. math::

    \gimel_m = \frac{\det R_{k,k}(V - i\lambda_m^+\Omega)}
                    {\lambda_m^+ \prod_{n\ne m} (\lambda_n^2 - \lambda_m^{+2})},

which equals :math:`+|s_{m,k}|^2` for the correct sign and its negative
otherwise. A non-zero imaginary part of any :math:`\gimel_m` proves that no
real diagonalising symplectic exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .detdiag import DetOptions, diagonal_minors, extract_S, svectors_for
from .errors import DegenerateSpectrum, SympdetError, ZeroSymplecticEigenvalue
from .matcore import eigvals
from .sympbase import (
    INTERLEAVED,
    WilliamsonDecomp,
    as_covariance,
    convert_ordering,
    n_modes,
    normalize_ordering,
    omega,
    reconstruction_residual,
    symplectic_residual,
)
from .sympeig import TAU_DEG, degenerate_groups

# |Im gimel| <= GIMEL_IMAG_RTOL * |gimel| counts as real.
GIMEL_IMAG_RTOL = 1e-7


@dataclass
class SignedSpectrum:
    lambdas_plus: np.ndarray
    signs: np.ndarray
    gimel: np.ndarray
    kbar: list
    imag_flags: np.ndarray

    @property
    def lambdas(self):
        """Signed symplectic eigenvalues as they appear in ``D``."""
        return self.signs * self.lambdas_plus

    @property
    def diagonalizable_candidate(self):
        """False if the necessary condition ``Im gimel_m = 0`` fails."""
        return not bool(np.any(self.imag_flags))


@dataclass
class NotDiagonalizable:
    """Verdict: no real symplectic brings ``V`` to Williamson form."""

    reason: str
    lambdas_plus: np.ndarray
    gimel: np.ndarray
    residual_symp: float = float("nan")
    residual_rec: float = float("nan")
    info: dict = field(default_factory=dict)

    method = "det-indefinite"


def _is_positive(z, zero_tol):
    if z.real > zero_tol:
        return True
    return abs(z.real) <= zero_tol and z.imag > 0


def positive_eigenvalues(V, ordering=INTERLEAVED):
    r"""The ``d`` eigenvalues :math:`\lambda_m^+` of :math:`i\Omega V`, sorted
    by decreasing real part.

    Raises:
        ZeroSymplecticEigenvalue: if :math:`i\Omega V` is (numerically) singular.
    """
    d = n_modes(V)
    ev = eigvals(1j * omega(d, ordering) @ V)
    scale = max(np.max(np.abs(ev)), np.finfo(float).tiny)
    if np.min(np.abs(ev)) <= 1e-12 * scale:
        raise ZeroSymplecticEigenvalue(
            "a symplectic eigenvalue is zero; perturb the matrix slightly before decomposing"
        )
    zero_tol = 1e-12 * scale
    plus = [z for z in ev if _is_positive(z, zero_tol)]
    if len(plus) != d:
        # Round-off pushed a pair across the imaginary axis: fall back to a
        # lexicographic split of the (pairwise symmetric) spectrum.
        plus = sorted(ev, key=lambda z: (z.real, z.imag))[d:]
    plus = np.array(sorted(plus, key=lambda z: (-z.real, -z.imag)))
    if np.all(np.abs(plus.imag) <= zero_tol):
        plus = plus.real
    return plus


def gimel(V, lambdas_plus, m, k=None, ordering=INTERLEAVED):
    """Normalised diagonal minor for mode ``m``; returns ``(gimel, k)``.

    ``k`` defaults to the pivot with the largest diagonal minor.
    """
    lam = lambdas_plus[m]
    others = np.delete(lambdas_plus, m)
    denom = lam * np.prod(others**2 - lam**2)
    diag = diagonal_minors(V, lam, ordering)
    if k is None:
        k = int(np.argmax(np.abs(diag)))
    return diag[k] / denom, k


def signed_spectrum(V, ordering=INTERLEAVED, kbar=None, tau_deg=TAU_DEG, imag_rtol=GIMEL_IMAG_RTOL):
    """Symplectic eigenvalues with signs resolved.

    Args:
        V (array): symmetric matrix, not necessarily positive definite
        ordering (str): quadrature ordering
        kbar (int or None): diagonal-minor index used for every mode; by
            default each mode uses its largest diagonal minor

    Raises:
        ZeroSymplecticEigenvalue: a symplectic eigenvalue vanishes.
        DegenerateSpectrum: two eigenvalues of ``i Omega V`` coincide up to sign.
    """
    V = as_covariance(V)
    plus = positive_eigenvalues(V, ordering)
    groups = degenerate_groups(plus, tau_deg)
    if any(len(g) > 1 for g in groups):
        raise DegenerateSpectrum(
            "degenerate symplectic eigenvalues; perturb the matrix slightly before decomposing",
            groups=[g for g in groups if len(g) > 1],
        )
    values, ks = [], []
    for m in range(len(plus)):
        g, k = gimel(V, plus, m, kbar, ordering)
        values.append(g)
        ks.append(k)
    values = np.array(values, dtype=complex)
    signs = np.where(values.real > 0, 1, -1)
    flags = np.abs(values.imag) > imag_rtol * np.abs(values)
    return SignedSpectrum(lambdas_plus=plus, signs=signs, gimel=values, kbar=ks, imag_flags=flags)


def decompose_indefinite(V, ordering=INTERLEAVED, opts=None, **overrides):
    """Williamson decomposition for a symmetric matrix of any signature.

    Returns either a certified :class:`WilliamsonDecomp` (method
    ``"det-indefinite"``) whose eigenvalues carry their signs, or a
    :class:`NotDiagonalizable` verdict when no real diagonalising
    symplectic exists. Certification against ``opts.tol`` is mandatory.

    Raises:
        ZeroSymplecticEigenvalue, DegenerateSpectrum: the method does not
            apply; perturb the input first.
    """
    opts = replace(opts or DetOptions(), **overrides)
    ordering = normalize_ordering(ordering)
    V = as_covariance(V)
    Vi = convert_ordering(V, ordering, INTERLEAVED)
    ss = signed_spectrum(Vi, INTERLEAVED, tau_deg=opts.tau_deg)
    info = {"signs": ss.signs.tolist(), "gimel_kbar": ss.kbar}
    if not ss.diagonalizable_candidate:
        return NotDiagonalizable(
            reason="imaginary normalised minor (Im gimel != 0) in modes "
            f"{np.flatnonzero(ss.imag_flags).tolist()}",
            lambdas_plus=ss.lambdas_plus,
            gimel=ss.gimel,
            info=info,
        )

    lambdas = ss.lambdas
    plus = ss.lambdas_plus
    alephs = [ss.signs[m] * plus[m] * np.prod(np.delete(plus, m) ** 2 - plus[m] ** 2) for m in range(len(plus))]
    complex_path = np.iscomplexobj(Vi) or np.iscomplexobj(lambdas)
    try:
        svecs, tables = svectors_for(Vi, lambdas, INTERLEAVED, opts, alephs=alephs, allow_complex=complex_path)
    except SympdetError as exc:
        return NotDiagonalizable(reason=f"construction failed: {exc}", lambdas_plus=plus, gimel=ss.gimel, info=info)
    S = extract_S(svecs, INTERLEAVED, check=False)
    S = convert_ordering(S, INTERLEAVED, ordering)
    res_symp = symplectic_residual(S, ordering)
    res_rec = reconstruction_residual(V, S, lambdas, ordering)
    info["kbar"] = [t.kbar for t in tables]
    if not (res_symp <= opts.tol and res_rec <= opts.tol):
        return NotDiagonalizable(
            reason=f"certification failed (symplectic {res_symp:.3e}, reconstruction {res_rec:.3e})",
            lambdas_plus=plus,
            gimel=ss.gimel,
            residual_symp=res_symp,
            residual_rec=res_rec,
            info=info,
        )
    return WilliamsonDecomp(
        S=S,
        lambdas=lambdas,
        ordering=ordering,
        residual_symp=res_symp,
        residual_rec=res_rec,
        method="det-indefinite",
        info=info,
    )
