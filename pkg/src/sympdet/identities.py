r"""Both sides of the determinant identities behind the method.

These are diagnostics and test oracles; the decomposition pipeline does not
depend on them. Each function evaluates the left- and right-hand sides
independently from ``V``, the symplectic eigenvalues and reference
s-vectors (e.g. from :func:`sympdet.baseline.s_vectors_from_S`), so that
the identity can be checked numerically.

All indices are zero-based; ``svecs`` has shape ``(d, 2d)`` with row ``m``
belonging to ``lambdas[m]``.
"""

from __future__ import annotations

import numpy as np

from .detdiag import a_matrix
from .matcore import delete_row_col, det
from .sympbase import INTERLEAVED


def selector(n, l):
    """``n x (n-1)`` matrix: the identity with a zero row inserted at ``l``.

    ``selector(n, k).conj().T @ A @ selector(n, l)`` is ``A`` with row ``k``
    and column ``l`` deleted.
    """
    return np.delete(np.eye(n), l, axis=1)


def _prefactor(lambdas, group):
    lambdas = np.asarray(lambdas)
    lam = np.mean(lambdas[list(group)])
    rest = np.delete(lambdas, list(group))
    return lam, np.prod(rest**2 - lam**2)


def single_minor_sides(V, lambdas, m, k, l, svecs, ordering=INTERLEAVED):
    r"""``det R_{k,l}(V - i lambda_m Omega)`` against
    :math:`(-1)^{k+l} s_{m,k}^* s_{m,l} \aleph_m`."""
    lam, rest = _prefactor(lambdas, [m])
    lhs = det(delete_row_col(a_matrix(V, lam, ordering), k, l))
    s = np.asarray(svecs)[m]
    rhs = (-1) ** (k + l) * np.conj(s[k]) * s[l] * lam * rest
    return complex(lhs), complex(rhs)


def bordered_sides(V, lambdas, m, Bx, By, s_m, ordering=INTERLEAVED):
    r"""Both sides of :math:`\det[B_x^\dagger A_m B_y] =
    \det[(B_x\ s_m/\sqrt2)]^* \det[(B_y\ s_m/\sqrt2)]\, 2\aleph_m`.

    ``Bx`` and ``By`` are ``2d x (2d-1)``; ``(B s)`` denotes concatenation.
    """
    return degenerate_bordered_sides(V, lambdas, [m], Bx, By, np.atleast_2d(s_m), ordering, _rows=[0])


def degenerate_bordered_sides(V, lambdas, group, Bx, By, svecs, ordering=INTERLEAVED, _rows=None):
    r"""The bordered identity generalised to a ``p``-fold degenerate eigenvalue.

    ``Bx``, ``By`` are ``2d x (2d-p)`` and are concatenated with the ``p``
    vectors ``s_{m_j}/sqrt(2)`` of the degenerate group; the prefactor
    becomes :math:`(2\lambda)^p \prod_{n\notin\{m_j\}} (\lambda_n^2-\lambda^2)`.
    """
    V = np.asarray(V)
    Bx, By = np.asarray(Bx), np.asarray(By)
    n = V.shape[0]
    p = len(group)
    if Bx.shape != (n, n - p) or By.shape != (n, n - p):
        raise ValueError(f"B matrices must be {n}x{n - p}, got {Bx.shape} and {By.shape}")
    lam, rest = _prefactor(lambdas, group)
    lhs = det(Bx.conj().T @ a_matrix(V, lam, ordering) @ By)
    rows = group if _rows is None else _rows
    cols = np.asarray(svecs)[list(rows)].T / np.sqrt(2)
    rhs = np.conj(det(np.hstack([Bx, cols]))) * det(np.hstack([By, cols])) * (2 * lam) ** p * rest
    return complex(lhs), complex(rhs)


def degenerate_minor_sides(V, lambdas, group, ks, ls, svecs, ordering=INTERLEAVED):
    r"""Minors of a degenerate :math:`A_m` with ``p`` rows ``ks`` and ``p``
    columns ``ls`` removed, against
    :math:`(-1)^{\sum k_j + l_j} \lambda^p \det[s_{\{m_j\},\{k_j\}}]^*
    \det[s_{\{m_j\},\{l_j\}}] \prod_{n\notin\{m_j\}} (\lambda_n^2 - \lambda^2)`.

    ``ks`` and ``ls`` are taken in increasing order.
    """
    p = len(group)
    ks, ls = sorted(ks), sorted(ls)
    if len(ks) != p or len(ls) != p:
        raise ValueError(f"need {p} row and column indices, got {len(ks)} and {len(ls)}")
    lam, rest = _prefactor(lambdas, group)
    lhs = det(delete_row_col(a_matrix(V, lam, ordering), ks, ls))
    s = np.asarray(svecs)[list(group)]
    sign = (-1) ** (sum(ks) + sum(ls))
    rhs = sign * lam**p * np.conj(det(s[:, ks])) * det(s[:, ls]) * rest
    return complex(lhs), complex(rhs)


def relative_gap(lhs, rhs, floor=1.0):
    """``|lhs - rhs| / max(|lhs|, |rhs|, floor)``."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor)
