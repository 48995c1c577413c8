r"""Diagonalising symplectic from submatrix determinants.

For a covariance matrix with symplectic eigenvalues :math:`\lambda_m`, the
minors of :math:`A_m = V - i\lambda_m\Omega` factorise as

.. math::

    \det R_{k,l}(A_m) = (-1)^{k+l}\, s_{m,k}^* s_{m,l}\, \aleph_m,
    \qquad \aleph_m = \lambda_m \prod_{n\ne m} (\lambda_n^2 - \lambda_m^2),

where the complex vector :math:`s_m` packs the two rows of ``S`` belonging
to mode ``m``. Fixing :math:`s_{m,\bar k}` real and positive, one row of
minors per mode determines :math:`s_m` and hence ``S``, using eigenvalues
only (no eigenvectors).

All indices in this module are zero-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    CertificationFailed,
    DegenerateMode,
    DegenerateSpectrum,
    NegativeNorm,
    NotSymplectic,
    PivotFailure,
)
from .matcore import det, minors
from .sympbase import (
    INTERLEAVED,
    WilliamsonDecomp,
    as_covariance,
    convert_ordering,
    mode_rows,
    n_modes,
    normalize_ordering,
    omega,
    reconstruction_residual,
    svec_to_rows,
    symplectic_residual,
)
from .sympeig import TAU_DEG, aleph, symplectic_eigenvalues

TAU_PIVOT = 1e-10


@dataclass
class DetOptions:
    """Options for :func:`decompose_det`.

    ``kbar`` is ``"per-mode"`` (each mode uses the pivot column with the
    largest diagonal minor) or ``"fixed"`` (one column ``kbar_start`` for all
    modes, moving to the next column whenever a pivot vanishes).
    """

    tol: float = 1e-8
    kbar: str = "per-mode"
    kbar_start: int = 0
    tau_pivot: float = TAU_PIVOT
    tau_deg: float = TAU_DEG
    auto_perturb: bool = True
    epsilon: float | None = None
    tol_deg: float = 1e-6
    native_ordering: bool = False
    check: bool = True


@dataclass
class MinorTable:
    """One row of minors ``det R_{kbar,l}(V - i lambda_m Omega)``, all ``l``."""

    m: int
    kbar: int
    values: np.ndarray
    lam: complex = 0.0

    @property
    def pivot(self):
        return self.values[self.kbar]


@dataclass
class SVector:
    """Complex vector holding the two rows of ``S`` for mode ``m``."""

    m: int
    entries: np.ndarray
    kbar: int


def a_matrix(V, lam, ordering=INTERLEAVED):
    r""":math:`V - i\lambda\Omega`; Hermitian for real symmetric ``V`` and real ``lam``."""
    V = np.asarray(V)
    return V - 1j * lam * omega(n_modes(V), ordering)


def diagonal_minors(V, lam, ordering=INTERLEAVED):
    """All ``det R_{k,k}(V - i lam Omega)``, ``k = 0..2d-1``."""
    A = a_matrix(V, lam, ordering)
    n = A.shape[0]
    stack = np.stack([np.delete(np.delete(A, k, axis=0), k, axis=1) for k in range(n)])
    return det(stack)


def minor_row(V, lam, kbar, ordering=INTERLEAVED, m=0, tau_pivot=TAU_PIVOT, diag_scale=None):
    """Row of minors for pivot column ``kbar``.

    The pivot is compared with the whole row and with ``diag_scale``, the
    largest diagonal minor of the mode (computed when not given). The
    latter catches rows made entirely of round-off.

    Raises:
        PivotFailure: if the diagonal minor is negligible, in which case
            another ``kbar`` must be used.
    """
    A = a_matrix(V, lam, ordering)
    n = A.shape[0]
    if not 0 <= kbar < n:
        raise IndexError(f"kbar={kbar} out of range for dimension {n}")
    values = minors(A, kbar, range(n))
    table = MinorTable(m=m, kbar=kbar, values=values, lam=lam)
    if diag_scale is None:
        diag_scale = np.max(np.abs(diagonal_minors(V, lam, ordering)))
    scale = max(np.max(np.abs(values)), diag_scale)
    if not np.abs(table.pivot) > tau_pivot * scale:
        raise PivotFailure(f"mode {m}: pivot minor at kbar={kbar} vanishes (|{table.pivot:.3e}| vs row scale {scale:.3e})")
    return table


def s_vector(table, aleph_m, allow_complex=False):
    r"""s-vector from a row of minors.

    Uses :math:`s_{m,\bar k} = \sqrt{\beth_{\bar k\bar k m}/\aleph_m}` (real,
    positive) and :math:`s_{m,l} = (-1)^{\bar k + l}\beth_{\bar k l m} /
    (\aleph_m s_{m,\bar k})`.

    Raises:
        DegenerateMode: if ``aleph_m`` is zero.
        NegativeNorm: if the pivot ratio is negative, i.e. the sign of
            ``lambda_m`` is wrong (indefinite input) or the numerics broke down.
    """
    if aleph_m == 0 or not np.isfinite(aleph_m):
        raise DegenerateMode(f"mode {table.m}: degenerate symplectic eigenvalue (aleph = {aleph_m})")
    k = table.kbar
    if allow_complex:
        ratio = table.pivot / aleph_m
        sk = np.sqrt(complex(ratio))
    else:
        # Hermitian A_m: the diagonal minor is real up to round-off.
        ratio = np.real(table.pivot) / np.real(aleph_m)
        if not ratio > 0:
            raise NegativeNorm(f"mode {table.m}: |s_(m,kbar)|^2 = {ratio:.3e} is not positive")
        sk = np.sqrt(ratio)
    n = len(table.values)
    signs = (-1.0) ** (k + np.arange(n))
    entries = signs * table.values / (aleph_m * sk)
    entries[k] = sk
    return SVector(m=table.m, entries=np.asarray(entries, dtype=complex), kbar=k)


def phase_product(svec, k, l):
    r"""Gauge-invariant product :math:`s_{m,k}^* s_{m,l}`."""
    e = getattr(svec, "entries", svec)
    return np.conj(e[k]) * e[l]


def extract_S(svecs, ordering=INTERLEAVED, tol=1e-8, check=True):
    """Assemble the real symplectic matrix from one s-vector per mode.

    Raises:
        NotSymplectic: when ``check`` is set and the residual exceeds ``tol``.
    """
    svecs = list(svecs)
    d = len(svecs)
    S = np.empty((2 * d, 2 * d))
    for idx, sv in enumerate(svecs):
        m = getattr(sv, "m", idx)
        entries = getattr(sv, "entries", sv)
        if len(entries) != 2 * d:
            raise ValueError(f"s-vector of length {len(entries)} for {d} modes")
        xr, pr = mode_rows(m, d, ordering)
        S[xr], S[pr] = svec_to_rows(entries, ordering)
    if check:
        res = symplectic_residual(S, ordering)
        if res > tol:
            raise NotSymplectic(f"assembled matrix is not symplectic (residual {res:.3e})", residual=res)
    return S


def choose_kbar(V, lam, ordering=INTERLEAVED):
    """Pivot column maximising the magnitude of the diagonal minor."""
    return int(np.argmax(np.abs(np.real(diagonal_minors(V, lam, ordering)))))


def svectors_for(V, lambdas, ordering=INTERLEAVED, opts=None, alephs=None, allow_complex=False):
    """s-vectors for every mode, following the pivot policy in ``opts``.

    Returns:
        tuple: ``(svecs, tables)``.
    """
    opts = opts or DetOptions()
    d = len(lambdas)
    if alephs is None:
        alephs = [aleph(lambdas, m) for m in range(d)]
    if opts.kbar == "per-mode":
        tables = []
        for m in range(d):
            diag = np.abs(np.real(diagonal_minors(V, lambdas[m], ordering)))
            kbar = int(np.argmax(diag))
            tables.append(minor_row(V, lambdas[m], kbar, ordering, m, opts.tau_pivot, diag_scale=diag[kbar]))
    elif opts.kbar == "fixed":
        tables = None
        scales = [np.max(np.abs(diagonal_minors(V, lam, ordering))) for lam in lambdas]
        for shift in range(2 * d):
            kbar = (opts.kbar_start + shift) % (2 * d)
            try:
                tables = [
                    minor_row(V, lambdas[m], kbar, ordering, m, opts.tau_pivot, diag_scale=scales[m]) for m in range(d)
                ]
                break
            except PivotFailure:
                continue
        if tables is None:
            raise PivotFailure("no pivot column works for all modes")
    else:
        raise ValueError(f"unknown kbar policy {opts.kbar!r}")
    svecs = [s_vector(t, alephs[t.m], allow_complex) for t in tables]
    return svecs, tables


def _certify(V, S, lambdas, ordering, tol, check):
    res_symp = symplectic_residual(S, ordering)
    res_rec = reconstruction_residual(V, S, lambdas, ordering)
    if check and res_symp > tol:
        raise NotSymplectic(f"symplectic residual {res_symp:.3e} exceeds {tol:.1e}", residual=res_symp)
    if check and res_rec > tol:
        raise CertificationFailed(
            f"reconstruction residual {res_rec:.3e} exceeds {tol:.1e}", residual_symp=res_symp, residual_rec=res_rec
        )
    return res_symp, res_rec


def decompose_det(V, ordering=INTERLEAVED, opts=None, **overrides):
    """Williamson decomposition of a positive definite ``V`` from minors.

    Args:
        V (array[float]): real symmetric positive definite ``2d x 2d`` matrix
        ordering (str): quadrature ordering of ``V``
        opts (DetOptions): algorithm options; keyword overrides are applied
            on top

    Returns:
        WilliamsonDecomp: eigenvalues in decreasing order, ``S`` in the
        ordering of the input.

    Raises:
        DegenerateSpectrum: repeated eigenvalues and ``auto_perturb`` off.
        PivotFailure: no usable pivot column.
        NotSymplectic, CertificationFailed: the self-check failed.
    """
    opts = replace(opts or DetOptions(), **overrides)
    ordering = normalize_ordering(ordering)
    V = as_covariance(V)
    work_ordering = ordering if opts.native_ordering else INTERLEAVED
    Vw = convert_ordering(V, ordering, work_ordering)

    spec = symplectic_eigenvalues(Vw, work_ordering, opts.tau_deg)
    if spec.is_degenerate:
        if not opts.auto_perturb:
            groups = [g for g in spec.degenerate_groups if len(g) > 1]
            raise DegenerateSpectrum(f"degenerate symplectic eigenvalues in modes {groups}", groups=groups)
        from .degenerate import decompose_perturbed

        return decompose_perturbed(V, ordering=ordering, opts=opts)

    lambdas = spec.lambdas
    svecs, tables = svectors_for(Vw, lambdas, work_ordering, opts)
    S = extract_S(svecs, work_ordering, opts.tol, check=False)
    S = convert_ordering(S, work_ordering, ordering)
    res_symp, res_rec = _certify(V, S, lambdas, ordering, opts.tol, opts.check)
    info = {
        "kbar": [t.kbar for t in tables],
        "kbar_policy": opts.kbar,
        "pivot_imag": float(max(abs(np.imag(t.pivot)) / np.max(np.abs(t.values)) for t in tables)),
        "work_ordering": work_ordering,
    }
    return WilliamsonDecomp(
        S=S, lambdas=lambdas, ordering=ordering, residual_symp=res_symp, residual_rec=res_rec, method="det", info=info
    )
