import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sympdet.sympbase import random_covariance

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def spaced_lambdas(d, rng, lo=1.0, hi=5.0, min_rel_gap=1e-2):
    """Distinct values in ``[lo, hi]``, descending, with relative gaps at least ``min_rel_gap``."""
    while True:
        lam = np.sort(rng.uniform(lo, hi, size=d))[::-1]
        if d == 1 or np.min(-np.diff(lam) / lam[:-1]) >= min_rel_gap:
            return lam


def make_instance(d, seed, ordering="xpxp", min_rel_gap=1e-2):
    rng = np.random.default_rng(seed)
    return random_covariance(d, spaced_lambdas(d, rng, min_rel_gap=min_rel_gap), seed=seed, ordering=ordering)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[0][2:])):
            terminalreporter.write_line(line)
