"""Dense matrix primitives: minors, determinants and eigenvalue extraction."""

from __future__ import annotations

import numpy as np

from .errors import NumericalError


def delete_row_col(M, k=None, l=None):
    """Return ``M`` with row ``k`` and/or column ``l`` removed.

    Indices are zero-based; ``None`` leaves that axis untouched, so
    ``delete_row_col(M, None, j)`` drops only column ``j``. ``k`` and ``l``
    may also be sequences, in which case every listed row/column is removed.

    Raises:
        IndexError: if an index is outside the matrix.
    """
    M = np.asarray(M)
    rows, cols = M.shape
    out = M
    if k is not None:
        ks = np.atleast_1d(k)
        if np.any((ks < 0) | (ks >= rows)):
            raise IndexError(f"row index {k} out of range for {rows} rows")
        out = np.delete(out, ks, axis=0)
    if l is not None:
        ls = np.atleast_1d(l)
        if np.any((ls < 0) | (ls >= cols)):
            raise IndexError(f"column index {l} out of range for {cols} columns")
        out = np.delete(out, ls, axis=1)
    return out


def det(M):
    """Determinant by LU factorisation with partial pivoting.

    Accepts a single square matrix or a stack ``(..., n, n)``. The empty
    0x0 matrix has determinant 1.
    """
    M = np.asarray(M)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise ValueError(f"determinant needs a square matrix, got shape {M.shape}")
    if M.shape[-1] == 0:
        dtype = np.result_type(M.dtype, np.float64)
        return np.ones(M.shape[:-2], dtype=dtype)[()]
    # LAPACK getrf: partial pivoting. An exactly singular factor is a valid
    # zero determinant, not an error.
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.linalg.det(M)


def minors(M, k, ls):
    """Stack of determinants ``det R_{k,l}(M)`` for every ``l`` in ``ls``."""
    M = np.asarray(M)
    n = M.shape[0]
    ls = list(ls)
    if not 0 <= k < n:
        raise IndexError(f"row index {k} out of range for {n} rows")
    reduced = np.delete(M, k, axis=0)
    stack = np.stack([np.delete(reduced, l, axis=1) for l in ls])
    return det(stack)


def eigvals(M, hermitian=False):
    """All eigenvalues of a square matrix, with multiplicity.

    With ``hermitian=True`` the matrix is treated as Hermitian and the
    returned spectrum is exactly real. Ordering is unspecified.

    Raises:
        NumericalError: if the eigensolver fails to converge.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"eigvals needs a square matrix, got shape {M.shape}")
    try:
        if hermitian:
            return np.linalg.eigvalsh(M)
        return np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc


def eigvecs_paired(X, tol=1e-12):
    r"""Half-spectrum eigenpairs of a real antisymmetric matrix.

    The eigenvalues of a real antisymmetric ``X`` come in conjugate pairs
    :math:`\pm i\mu`. This returns the ``d`` pairs ``(i mu_m, x_m)`` with
    ``mu_m > 0``, sorted by decreasing ``mu_m``; the partners
    ``(-i mu_m, conj(x_m))`` are implied. Each ``x_m`` has unit norm and is
    rotated so its largest-magnitude entry is real and positive.

    The eigenvectors come from the Hermitian matrix ``iX`` so that vectors
    belonging to repeated ``mu`` are orthonormal.

    Raises:
        NumericalError: if ``X`` has a (numerically) zero eigenvalue.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if n % 2:
        raise ValueError("antisymmetric matrix must have even dimension")
    try:
        w, U = np.linalg.eigh(1j * X)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    scale = max(np.max(np.abs(w)), 1.0)
    if np.min(np.abs(w)) <= tol * scale:
        raise NumericalError("zero eigenvalue encountered: matrix is singular")
    # X x = i mu x  <=>  (iX) x = -mu x, so the negative half of eigh's output
    # (ascending) is the one we want, already in decreasing mu order.
    d = n // 2
    pairs = []
    for j in range(d):
        x = U[:, j]
        pivot = np.argmax(np.abs(x))
        x = x * (np.abs(x[pivot]) / x[pivot])
        pairs.append((1j * -w[j], x / np.linalg.norm(x)))
    return pairs
