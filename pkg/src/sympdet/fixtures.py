"""Closed-form test cases with known diagonalising symplectics.

All matrices use the interleaved ``xpxp`` ordering. Mode labels follow the
closed forms, not the decreasing order used by the solvers, so comparisons
should go through :func:`sympdet.sympbase.gauge_distance` after sorting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

I2 = np.eye(2)
Z2 = np.diag([1.0, -1.0])
O2 = np.zeros((2, 2))


@dataclass
class Fixture:
    name: str
    V: np.ndarray
    S: np.ndarray
    lambdas: np.ndarray
    params: dict = field(default_factory=dict)
    delta: np.ndarray | None = None

    def sorted(self):
        """Copy with modes relabelled by decreasing eigenvalue."""
        order = np.argsort(-self.lambdas, kind="stable")
        rows = np.ravel([[2 * m, 2 * m + 1] for m in order])
        return Fixture(self.name, self.V, self.S[rows], self.lambdas[order], dict(self.params), self.delta)


def two_mode_squeezed(a=3.0, b=2.0, c=2.0):
    """``V = [[a I, c Z], [c Z, b I]]``.

    ``S = [[w- Z, w+ I], [w+ I, w- Z]]`` with
    ``w+- = sqrt((a + b +- sqrt(y)) / (2 sqrt(y)))``, ``y = (a+b)^2 - 4c^2``;
    mode 1 has ``(sqrt(y) - (a-b)) / 2`` and mode 2 ``(sqrt(y) + (a-b)) / 2``.
    """
    V = np.block([[a * I2, c * Z2], [c * Z2, b * I2]])
    y = (a + b) ** 2 - 4 * c**2
    ry = np.sqrt(y)
    wm = np.sqrt((a + b - ry) / (2 * ry))
    wp = np.sqrt((a + b + ry) / (2 * ry))
    S = np.block([[wm * Z2, wp * I2], [wp * I2, wm * Z2]])
    lambdas = np.array([(ry - (a - b)) / 2, (ry + (a - b)) / 2])
    return Fixture("two-mode-squeezed", V, S, lambdas, {"a": a, "b": b, "c": c, "y": y})


def two_mode_svectors(a=3.0, b=2.0, c=2.0):
    """Closed-form s-vectors ``s_1 = (-i w-, w-, i w+, w+)`` and
    ``s_2 = (i w+, w+, -i w-, w-)`` for :func:`two_mode_squeezed`."""
    y = (a + b) ** 2 - 4 * c**2
    ry = np.sqrt(y)
    wm = np.sqrt((a + b - ry) / (2 * ry))
    wp = np.sqrt((a + b + ry) / (2 * ry))
    return np.array([[-1j * wm, wm, 1j * wp, wp], [1j * wp, wp, -1j * wm, wm]])


def two_mode_minors(a=3.0, b=2.0, c=2.0):
    """Closed-form minor rows ``(kbar=1, m=0)`` and ``(kbar=3, m=1)``
    (zero-based) of :func:`two_mode_squeezed`."""
    l1, l2 = two_mode_squeezed(a, b, c).lambdas
    row1 = np.array(
        [
            1j * l1 * (l1**2 - b**2 + c**2),
            a * (b**2 - l1**2) - b * c**2,
            -1j * l1 * c * (a - b),
            -c * (l1**2 - a * b + c**2),
        ]
    )
    row2 = np.array(
        [
            1j * l2 * c * (a - b),
            -c * (l2**2 - a * b + c**2),
            1j * l2 * (l2**2 - a**2 + c**2),
            b * (a**2 - l2**2) - a * c**2,
        ]
    )
    return row1, row2


def three_mode(a=2.0, c=0.5):
    """``V = [[a I, c Z, c Z], [c Z, a I, c I], [c Z, c I, a I]]``.

    Eigenvalues ``a - c`` and ``(sqrt(x) +- c) / 2`` with
    ``x = 4a^2 + 4ac - 7c^2``. The mode-3 row uses ``2 x^(1/4)`` in the
    denominator of its ``Z`` blocks; that is what makes it symplectic.
    """
    x = 4 * a**2 + 4 * a * c - 7 * c**2
    rx = np.sqrt(x)
    yp, ym = c + rx, c - rx
    l1 = a - c
    l2 = (rx + c) / 2
    l3 = (rx - c) / 2
    g = 2 * c * np.sqrt(l2) / np.sqrt(rx * (a * yp + 2 * l2**2))
    h = np.sqrt(a * yp + 2 * l2**2) / (2 * np.sqrt(l2 * rx))
    al = np.sqrt(2 * a + yp) / np.sqrt(2 * rx)
    be = np.sqrt(2 * a + ym) / (2 * x**0.25)
    r2 = 1 / np.sqrt(2)
    S = np.block(
        [
            [O2, r2 * I2, -r2 * I2],
            [g * Z2, h * I2, h * I2],
            [al * I2, be * Z2, be * Z2],
        ]
    )
    V = np.block([[a * I2, c * Z2, c * Z2], [c * Z2, a * I2, c * I2], [c * Z2, c * I2, a * I2]])
    return Fixture("three-mode", V, S, np.array([l1, l2, l3]), {"a": a, "c": c, "x": x})


def degenerate_three_mode(a=1.0, eps=0.0):
    """``V = a [[1, 1/2, 1/2], [1/2, 1, 1/2], [1/2, 1/2, 1]] (x) I + eps Delta``
    with ``Delta = I (+) 0 (+) 0``.

    At ``eps = 0`` the eigenvalues are ``(a/2, 2a, a/2)`` in the closed-form
    labelling, degenerate at ``a/2``; for ``eps > 0`` they split.
    """
    delta = np.kron(np.diag([1.0, 0.0, 0.0]), I2)
    V = a * np.kron(np.array([[1.0, 0.5, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 1.0]]), I2) + eps * delta
    x = 9 * a**2 - 4 * a * eps + 4 * eps**2
    rx = np.sqrt(x)
    yp = np.sqrt(rx + (a - 2 * eps)) / x**0.25
    ym = np.sqrt(rx - (a - 2 * eps)) / x**0.25
    r2 = 1 / np.sqrt(2)
    S = np.block(
        [
            [O2, r2 * I2, -r2 * I2],
            [ym * r2 * I2, yp / 2 * I2, yp / 2 * I2],
            [-yp * r2 * I2, ym / 2 * I2, ym / 2 * I2],
        ]
    )
    q = 17 * a**2 + 8 * a * eps + 4 * eps**2
    lambdas = np.array(
        [
            a / 2,
            np.sqrt(q + rx * (5 * a + 2 * eps)) / (2 * np.sqrt(2)),
            np.sqrt(q - rx * (5 * a + 2 * eps)) / (2 * np.sqrt(2)),
        ]
    )
    return Fixture("degenerate-three-mode", V, S, lambdas, {"a": a, "eps": eps}, delta=delta)


def degenerate_limit_S():
    """Exact limit ``eps -> 0`` of the degenerate three-mode symplectic."""
    r2, r3, r6 = 1 / np.sqrt(2), 1 / np.sqrt(3), 1 / np.sqrt(6)
    return np.block(
        [
            [O2, r2 * I2, -r2 * I2],
            [r3 * I2, r3 * I2, r3 * I2],
            [-np.sqrt(2 / 3) * I2, r6 * I2, r6 * I2],
        ]
    )


ALL = {
    "two-mode-squeezed": two_mode_squeezed,
    "three-mode": three_mode,
    "degenerate-three-mode": degenerate_three_mode,
}
