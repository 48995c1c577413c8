r"""Symplectic forms, orderings, gauge freedom and random test instances.

Two quadrature orderings are supported:

* ``"xpxp"`` (interleaved): :math:`(x_1, p_1, \dots, x_d, p_d)` with
  :math:`\Omega = \bigoplus_m \omega`, :math:`\omega = [[0, 1], [-1, 0]]`;
* ``"xxpp"`` (block): :math:`(x_1, \dots, x_d, p_1, \dots, p_d)` with
  :math:`\Omega = [[0, I], [-I, 0]]`.

Interleaved is the canonical internal ordering. Matrices (covariances and
symplectics alike) convert between orderings by the same index
permutation applied to rows and columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import linear_sum_assignment

from .errors import ParseError

INTERLEAVED = "xpxp"
BLOCK = "xxpp"

_ALIASES = {
    "xpxp": INTERLEAVED,
    "interleaved": INTERLEAVED,
    "xxpp": BLOCK,
    "block": BLOCK,
}

# Relative tolerance for treating two symplectic eigenvalues as equal when
# matching modes in gauge comparisons.
EQUAL_LAMBDA_RTOL = 1e-6


def normalize_ordering(ordering):
    try:
        return _ALIASES[str(ordering).lower()]
    except KeyError:
        raise ValueError(f"unknown quadrature ordering {ordering!r}") from None


def n_modes(M):
    n = np.shape(M)[0]
    if n % 2:
        raise ValueError(f"matrix dimension {n} is odd")
    return n // 2


def omega(d, ordering=INTERLEAVED):
    """The ``2d x 2d`` symplectic form in the requested ordering."""
    if d < 1:
        raise ValueError("number of modes must be positive")
    ordering = normalize_ordering(ordering)
    if ordering == INTERLEAVED:
        return np.kron(np.eye(d), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    eye = np.eye(d)
    zero = np.zeros((d, d))
    return np.block([[zero, eye], [-eye, zero]])


def mode_rows(m, d, ordering=INTERLEAVED):
    """Row indices ``(x, p)`` belonging to mode ``m`` (zero-based)."""
    if normalize_ordering(ordering) == INTERLEAVED:
        return 2 * m, 2 * m + 1
    return m, m + d


def interleave_permutation(d):
    """Index map ``p`` with ``v_xpxp = v_xxpp[p]``."""
    p = np.empty(2 * d, dtype=int)
    p[0::2] = np.arange(d)
    p[1::2] = np.arange(d, 2 * d)
    return p


def convert_ordering(M, src, dst):
    """Re-express a phase-space matrix in another quadrature ordering.

    Works for covariance matrices and symplectic matrices alike, since both
    transform by the same permutation on rows and columns. The conversion
    is a pure index shuffle, so round trips are bit-exact.
    """
    src, dst = normalize_ordering(src), normalize_ordering(dst)
    M = np.asarray(M)
    if src == dst:
        return M.copy()
    p = interleave_permutation(n_modes(M))
    if src == BLOCK:
        return M[np.ix_(p, p)]
    q = np.argsort(p)
    return M[np.ix_(q, q)]


def as_covariance(V, tol=1e-12):
    """Validate and exactly symmetrise a real or complex symmetric matrix.

    Positivity is deliberately not checked here. Raises ``ParseError`` on
    non-square, odd-sized, non-finite or asymmetric input.
    """
    V = np.array(V)
    if V.dtype.kind not in "fc":
        V = V.astype(float)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ParseError(f"covariance matrix must be square, got shape {V.shape}")
    if V.shape[0] == 0 or V.shape[0] % 2:
        raise ParseError(f"covariance matrix dimension must be even and positive, got {V.shape[0]}")
    if not np.all(np.isfinite(V)):
        raise ParseError("covariance matrix has non-finite entries")
    scale = np.max(np.abs(V))
    if np.max(np.abs(V - V.T)) > tol * max(scale, np.finfo(float).tiny):
        raise ParseError("covariance matrix is not symmetric")
    if np.isrealobj(V) or np.all(V.imag == 0):
        V = np.real(V)
    if np.array_equal(V, V.T):
        return V
    return V / 2 + V.T / 2


def williamson_matrix(lambdas, ordering=INTERLEAVED):
    """Realise ``D = diag(lambda_m I_2)`` in the given ordering."""
    lambdas = np.asarray(lambdas)
    diag = np.repeat(lambdas, 2)
    if normalize_ordering(ordering) == BLOCK:
        diag = np.concatenate([lambdas, lambdas])
    return np.diag(diag)


def symplectic_residual(M, ordering=INTERLEAVED):
    M = np.asarray(M)
    Om = omega(n_modes(M), ordering)
    return float(np.max(np.abs(M.T @ Om @ M - Om)))


def is_symplectic(M, ordering=INTERLEAVED, tol=1e-9):
    """Return ``(residual, ok)`` with ``residual = max|M^T Omega M - Omega|``."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    res = symplectic_residual(M, ordering)
    return res, bool(res <= tol)


def reconstruction_residual(V, S, lambdas, ordering=INTERLEAVED):
    """``max|S^T D S - V| / max(1, max|V|)``."""
    V = np.asarray(V)
    D = williamson_matrix(lambdas, ordering)
    return float(np.max(np.abs(S.T @ D @ S - V)) / max(1.0, np.max(np.abs(V))))


@dataclass
class WilliamsonDecomp:
    """Result of a Williamson decomposition ``V = S^T D S``.

    ``lambdas[m]`` belongs to the mode whose rows of ``S`` are
    ``mode_rows(m, d, ordering)``. ``D`` is stored only as this list.
    """

    S: np.ndarray
    lambdas: np.ndarray
    ordering: str = INTERLEAVED
    residual_symp: float = float("nan")
    residual_rec: float = float("nan")
    method: str = "det"
    info: dict = field(default_factory=dict)

    @property
    def d(self):
        return len(self.lambdas)

    @property
    def D(self):
        return williamson_matrix(self.lambdas, self.ordering)

    def certify(self, V):
        self.residual_symp = symplectic_residual(self.S, self.ordering)
        self.residual_rec = reconstruction_residual(V, self.S, self.lambdas, self.ordering)
        return self

    def to_ordering(self, ordering):
        ordering = normalize_ordering(ordering)
        return WilliamsonDecomp(
            S=convert_ordering(self.S, self.ordering, ordering),
            lambdas=np.array(self.lambdas),
            ordering=ordering,
            residual_symp=self.residual_symp,
            residual_rec=self.residual_rec,
            method=self.method,
            info=dict(self.info),
        )


# --- s-vector packing -------------------------------------------------------


def rows_to_svec(S, m, ordering=INTERLEAVED):
    """Pack the two rows of mode ``m`` into the complex vector
    ``s_m = -Omega (S[x] - i S[p])``."""
    S = np.asarray(S)
    d = n_modes(S)
    xr, pr = mode_rows(m, d, ordering)
    return -omega(d, ordering) @ (S[xr] - 1j * S[pr])


def svec_to_rows(s, ordering=INTERLEAVED):
    """Inverse of :func:`rows_to_svec`: returns the ``(x, p)`` rows."""
    s = np.asarray(s)
    d = len(s) // 2
    z = omega(d, ordering) @ s
    return z.real, -z.imag


# --- gauge freedom ----------------------------------------------------------


def gauge_matrix(phases, ordering=INTERLEAVED):
    """Block rotation ``P = diag([[cos, sin], [-sin, cos]])`` per mode."""
    phases = np.asarray(phases, dtype=float)
    d = len(phases)
    P = np.zeros((2 * d, 2 * d))
    for m, phi in enumerate(phases):
        xr, pr = mode_rows(m, d, ordering)
        c, s = np.cos(phi), np.sin(phi)
        P[xr, xr], P[xr, pr] = c, s
        P[pr, xr], P[pr, pr] = -s, c
    return P


def gauge_apply(S, phases, ordering=INTERLEAVED):
    """Apply one-mode phase rotations: returns ``P S``."""
    S = np.asarray(S)
    if len(phases) != n_modes(S):
        raise ValueError("number of phases does not match number of modes")
    return gauge_matrix(phases, ordering) @ S


def _align_rows(A, B):
    """Best rotation of the 2-row block ``A`` onto ``B`` (Frobenius)."""
    M = A @ B.T
    phi = np.arctan2(M[1, 0] - M[0, 1], M[0, 0] + M[1, 1])
    c, s = np.cos(phi), np.sin(phi)
    R = np.array([[c, s], [-s, c]])
    return R @ A


def equal_groups(lambdas, rtol=EQUAL_LAMBDA_RTOL):
    """Partition mode indices into runs of (numerically) equal values."""
    lambdas = np.asarray(lambdas)
    scale = max(np.max(np.abs(lambdas)), np.finfo(float).tiny)
    order = np.argsort(-np.real(lambdas), kind="stable")
    groups = [[int(order[0])]]
    for a, b in zip(order[:-1], order[1:]):
        if abs(lambdas[a] - lambdas[b]) <= rtol * scale:
            groups[-1].append(int(b))
        else:
            groups.append([int(b)])
    return [sorted(g) for g in groups]


def align_gauge(S1, S2, lambdas, ordering=INTERLEAVED, rtol=EQUAL_LAMBDA_RTOL, mix_degenerate=False):
    """Move ``S1`` as close as possible to ``S2`` along its gauge orbit.

    The orbit consists of one-mode phase rotations together with
    relabellings of modes sharing the same symplectic eigenvalue. With
    ``mix_degenerate=True`` the full unitary freedom inside each group of
    equal eigenvalues is used instead (a passive transformation acting on
    the degenerate modes only).

    Returns:
        array: the aligned copy of ``S1``.
    """
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    if S1.shape != S2.shape:
        raise ValueError("matrices have different shapes")
    d = n_modes(S1)
    if len(lambdas) != d:
        raise ValueError("eigenvalue list does not match number of modes")
    out = np.empty_like(S1)
    rows = [mode_rows(m, d, ordering) for m in range(d)]
    for group in equal_groups(lambdas, rtol):
        if mix_degenerate and len(group) > 1:
            Z1 = np.array([rows_to_svec(S1, m, ordering) for m in group])
            Z2 = np.array([rows_to_svec(S2, m, ordering) for m in group])
            U, _, Vh = np.linalg.svd(Z2 @ Z1.conj().T)
            Z = (U @ Vh) @ Z1
            for m, z in zip(group, Z):
                out[list(rows[m])] = np.vstack(svec_to_rows(z, ordering))
            continue
        best, best_cost = None, np.inf
        for target in _assignments(S1, S2, group, rows):
            aligned = {m: _align_rows(S1[list(rows[j])], S2[list(rows[m])]) for m, j in target.items()}
            cost = max(np.max(np.abs(aligned[m] - S2[list(rows[m])])) for m in group)
            if cost < best_cost:
                best, best_cost = aligned, cost
        for m, block in best.items():
            out[list(rows[m])] = block
    return out


def _assignments(S1, S2, group, rows, max_enumerate=6):
    """Candidate maps (target mode -> source mode) within one group."""
    if len(group) <= max_enumerate:
        for perm in itertools.permutations(group):
            yield dict(zip(group, perm))
        return
    cost = np.empty((len(group), len(group)))
    for a, m in enumerate(group):
        for b, j in enumerate(group):
            B = S2[list(rows[m])]
            cost[a, b] = np.max(np.abs(_align_rows(S1[list(rows[j])], B) - B))
    ia, ib = linear_sum_assignment(cost)
    yield {group[a]: group[b] for a, b in zip(ia, ib)}


def gauge_distance(S1, S2, lambdas, ordering=INTERLEAVED, rtol=EQUAL_LAMBDA_RTOL, mix_degenerate=False):
    """Max-norm distance between ``S2`` and the gauge orbit of ``S1``.

    Per mode the optimal phase comes from the closed-form 2x2 Procrustes
    alignment of the corresponding row pairs; modes with equal eigenvalue
    (within ``rtol`` of the largest) may additionally be permuted.
    """
    aligned = align_gauge(S1, S2, lambdas, ordering, rtol, mix_degenerate)
    return float(np.max(np.abs(aligned - np.asarray(S2))))


# --- random instances -------------------------------------------------------


def symplectic_from_generator(H, ordering=INTERLEAVED):
    """``exp(Omega H)`` for a real symmetric ``H``; symplectic for any such ``H``."""
    H = np.asarray(H, dtype=float)
    return expm(omega(n_modes(H), ordering) @ H)


def random_symplectic(d, seed=None, ordering=INTERLEAVED, max_norm=2.0):
    """Deterministic random symplectic matrix ``exp(Omega H)``.

    ``H`` is symmetric with entries drawn uniformly from ``[-0.5, 0.5]``,
    rescaled so that ``||Omega H||_2 <= max_norm``.
    """
    rng = np.random.default_rng(seed)
    G = rng.uniform(-0.5, 0.5, size=(2 * d, 2 * d))
    H = (G + G.T) / 2
    norm = np.linalg.norm(omega(d, ordering) @ H, 2)
    if norm > max_norm:
        H *= max_norm / norm
    return symplectic_from_generator(H, ordering)


@dataclass
class Instance:
    """A covariance matrix generated from a known decomposition."""

    V: np.ndarray
    S: np.ndarray
    lambdas: np.ndarray
    ordering: str = INTERLEAVED
    seed: int | None = None


def random_covariance(d, lambdas, seed=None, ordering=INTERLEAVED, S=None):
    """Build ``V = S^T D S`` from a random (or given) symplectic ``S``."""
    lambdas = np.asarray(lambdas, dtype=float)
    if len(lambdas) != d:
        raise ValueError(f"need {d} symplectic eigenvalues, got {len(lambdas)}")
    if np.any(lambdas == 0):
        raise ValueError("symplectic eigenvalues must be non-zero")
    if S is None:
        S = random_symplectic(d, seed, ordering)
    V = S.T @ williamson_matrix(lambdas, ordering) @ S
    return Instance(V=(V + V.T) / 2, S=S, lambdas=lambdas, ordering=normalize_ordering(ordering), seed=seed)


def is_physical(lambdas, shot_noise=1.0):
    """Whether every symplectic eigenvalue is at least the shot-noise level.

    The shot-noise value is convention dependent (1 here, 1/2 or 1/4 in
    other conventions), so this is informational only.
    """
    return bool(np.all(np.asarray(lambdas) >= shot_noise))
