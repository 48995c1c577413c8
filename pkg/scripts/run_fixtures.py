"""Decompose every shipped fixture and report distance to its stored symplectic."""

import argparse
import time
from pathlib import Path

import numpy as np

from sympdet import decompose_det, gauge_distance
from sympdet import io as sio
from sympdet.degenerate import CUSTOM, PerturbPlan, decompose_perturbed


def sort_modes(S, lambdas):
    order = np.argsort(-np.asarray(lambdas), kind="stable")
    rows = np.ravel([[2 * m, 2 * m + 1] for m in order])
    return S[rows]


def run(path):
    mf = sio.read_matrix(str(path))
    S_ref = np.asarray(mf.meta["S"], dtype=float)
    lam_ref = np.asarray(mf.meta["lambdas"], dtype=float)
    t0 = time.perf_counter()
    if "delta" in mf.meta:
        plan = PerturbPlan(np.asarray(mf.meta["delta"]), mf.meta["epsilon_reference"], CUSTOM, None)
        res = decompose_perturbed(mf.data, plan)
    else:
        res = decompose_det(mf.data)
    ms = (time.perf_counter() - t0) * 1e3
    dist = gauge_distance(res.S, sort_modes(S_ref, lam_ref), res.lambdas)
    return mf.meta["label"], res, dist, ms


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("paths", nargs="*")
    args = parser.parse_args(argv)
    paths = args.paths or sorted((Path(__file__).resolve().parents[1] / "data" / "fixtures").glob("*.json"))
    for path in paths:
        label, res, dist, ms = run(path)
        lam = ", ".join(f"{v:.12g}" for v in res.lambdas)
        print(f"{label:<24} {res.method:<14} lambdas=({lam}) gauge_distance={dist:.2e} "
              f"residuals=({res.residual_symp:.1e}, {res.residual_rec:.1e}) {ms:.2f} ms")


if __name__ == "__main__":
    main()
