"""Decomposition of matrices with repeated symplectic eigenvalues.

The determinant formula breaks down for a degenerate eigenvalue (both sides
vanish). Instead ``V`` is perturbed to ``V + eps * Delta`` with a
non-degenerate spectrum, decomposed at two magnitudes ``eps`` and
``eps / 2``, and the two symplectics are extrapolated linearly to
``eps -> 0``. The result is certified against the unperturbed ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import CertificationFailed, DegeneracyNotBroken, DegenerateSpectrum, SympdetError
from .sympbase import (
    INTERLEAVED,
    WilliamsonDecomp,
    align_gauge,
    as_covariance,
    mode_rows,
    n_modes,
    normalize_ordering,
    reconstruction_residual,
    symplectic_residual,
    williamson_matrix,
)
from .sympeig import symplectic_eigenvalues

GRADED = "graded-diagonal"
RANDOM = "seeded-random-diagonal"
CUSTOM = "custom"


@dataclass
class PerturbPlan:
    """Perturbation direction ``delta`` and base magnitude ``epsilon``.

    The two trial magnitudes are ``epsilon`` and ``epsilon / 2``.
    """

    delta: np.ndarray
    epsilon: float
    strategy: str = CUSTOM
    seed: int | None = None

    @property
    def epsilons(self):
        return [self.epsilon, self.epsilon / 2]


def graded_delta(d, ordering=INTERLEAVED):
    """``diag(1, 1, 2, 2, ..., d, d)`` (in the given ordering)."""
    return williamson_matrix(np.arange(1, d + 1, dtype=float), ordering)


def random_delta(d, seed=0):
    rng = np.random.default_rng(seed)
    return np.diag(1.0 + rng.uniform(0.0, 1.0, size=2 * d))


def make_plan(V, spec=None, seed=0, epsilon=None, strategy=GRADED, ordering=INTERLEAVED):
    """Default perturbation plan.

    The graded diagonal is positive semidefinite, so positive definite
    inputs stay positive definite for every ``epsilon >= 0``. The base
    magnitude defaults to ``1e-6 * max|V|``.
    """
    V = np.asarray(V)
    d = n_modes(V)
    if epsilon is None:
        epsilon = 1e-6 * np.max(np.abs(V))
    if strategy == GRADED:
        delta = graded_delta(d, ordering)
    elif strategy == RANDOM:
        delta = random_delta(d, seed)
    else:
        raise ValueError(f"unknown perturbation strategy {strategy!r}")
    return PerturbPlan(delta=delta, epsilon=float(epsilon), strategy=strategy, seed=seed)


def match_modes(lam_ref, lam_new):
    """Permutation ``p`` so that ``lam_new[p[m]]`` is nearest to ``lam_ref[m]``."""
    cost = np.abs(np.subtract.outer(np.asarray(lam_ref), np.asarray(lam_new)))
    _, cols = linear_sum_assignment(cost)
    return cols


def _permute_modes(S, perm, ordering):
    d = n_modes(S)
    out = np.empty_like(S)
    for m, j in enumerate(perm):
        out[list(mode_rows(m, d, ordering))] = S[list(mode_rows(j, d, ordering))]
    return out


def _extrapolate(V, plan, ordering, opts):
    from .detdiag import decompose_det

    runs = []
    for eps in plan.epsilons:
        Vp = V + eps * plan.delta
        spec = symplectic_eigenvalues(Vp, ordering, opts.tau_deg)
        if spec.is_degenerate:
            raise DegeneracyNotBroken(f"{plan.strategy} perturbation at eps={eps:.3e} leaves modes {spec.degenerate_groups}")
        runs.append(decompose_det(Vp, ordering=ordering, opts=opts, auto_perturb=False, tol=opts.tol_deg))
    big, small = runs
    perm = match_modes(big.lambdas, small.lambdas)
    S_small = _permute_modes(small.S, perm, ordering)
    # Per-mode phases of the two runs are independent; only aligned
    # matrices can be extrapolated. rtol=0 keeps the mode labels fixed.
    S_small = align_gauge(S_small, big.S, big.lambdas, ordering, rtol=0.0)
    return 2.0 * S_small - big.S, big


def decompose_perturbed(V, plan=None, ordering=INTERLEAVED, opts=None, **overrides):
    """Williamson decomposition through a vanishing perturbation.

    Args:
        V (array[float]): symmetric positive definite matrix
        plan (PerturbPlan): perturbation to use; by default the graded
            diagonal plan, falling back to a seeded random diagonal one
        ordering (str): quadrature ordering of ``V`` and ``plan.delta``
        opts (DetOptions): options; ``tol_deg`` bounds both residuals of
            the certified result and ``epsilon`` overrides the magnitude

    Returns:
        WilliamsonDecomp: method ``"det-perturbed"``, with the
        unperturbed eigenvalues in decreasing order.

    Raises:
        DegeneracyNotBroken: no plan made the spectrum non-degenerate.
        CertificationFailed: the extrapolated matrix does not diagonalise ``V``.
    """
    from .detdiag import DetOptions, decompose_det

    opts = replace(opts or DetOptions(), **overrides)
    ordering = normalize_ordering(ordering)
    V = as_covariance(V)
    spec = symplectic_eigenvalues(V, ordering, opts.tau_deg)
    if not spec.is_degenerate:
        out = decompose_det(V, ordering=ordering, opts=opts, auto_perturb=False)
        out.info["epsilon"] = 0.0
        return out

    if plan is not None:
        plans = [plan]
    else:
        plans = [make_plan(V, spec, epsilon=opts.epsilon, strategy=s, ordering=ordering) for s in (GRADED, RANDOM)]

    lambdas = spec.lambdas
    last_error = None
    for p in plans:
        try:
            S, big = _extrapolate(V, p, ordering, opts)
        except SympdetError as exc:
            last_error = exc
            continue
        res_symp = symplectic_residual(S, ordering)
        res_rec = reconstruction_residual(V, S, lambdas, ordering)
        if opts.check and (res_symp > opts.tol_deg or res_rec > opts.tol_deg):
            last_error = CertificationFailed(
                f"{p.strategy}: extrapolated symplectic fails certification "
                f"(symplectic {res_symp:.3e}, reconstruction {res_rec:.3e})",
                residual_symp=res_symp,
                residual_rec=res_rec,
            )
            continue
        info = {
            "epsilon": p.epsilon,
            "epsilons": p.epsilons,
            "strategy": p.strategy,
            "seed": p.seed,
            "degenerate_groups": [g for g in spec.degenerate_groups if len(g) > 1],
            "kbar": big.info.get("kbar"),
            "kbar_policy": opts.kbar,
        }
        return WilliamsonDecomp(
            S=S,
            lambdas=lambdas,
            ordering=ordering,
            residual_symp=res_symp,
            residual_rec=res_rec,
            method="det-perturbed",
            info=info,
        )
    if not isinstance(last_error, (DegeneracyNotBroken, DegenerateSpectrum)):
        raise last_error
    raise DegeneracyNotBroken(f"no perturbation broke the degeneracy: {last_error}")
