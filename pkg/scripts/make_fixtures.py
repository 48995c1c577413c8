"""Write the closed-form fixtures to data/fixtures as matrix files."""

import argparse
from pathlib import Path

import numpy as np

from sympdet import fixtures as F
from sympdet import io as sio

PROVENANCE = {
    "two-mode-squeezed": "published closed form, evaluated numerically",
    "three-mode": "published closed form with two corrected typos (see notes), evaluated numerically",
    "degenerate-three-mode": "published matrix and limiting symplectic, exact entries",
}


def fixture_files():
    tms = F.two_mode_squeezed(3.0, 2.0, 2.0)
    three = F.three_mode(2.0, 0.5)
    deg = F.degenerate_three_mode(1.0, 0.0)
    deg_S = F.degenerate_limit_S()
    return {
        "two_mode_squeezed": (tms, tms.S, {}),
        "three_mode": (three, three.S, {}),
        "degenerate_three_mode": (deg, deg_S, {"delta": deg.delta, "epsilon_reference": 1e-6}),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data" / "fixtures"))
    args = parser.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for stem, (fx, S, extra) in fixture_files().items():
        meta = {
            "label": fx.name,
            "provenance": PROVENANCE[fx.name],
            "params": fx.params,
            "lambdas": np.asarray(fx.lambdas),
            "S": S,
            **extra,
        }
        path = out / f"{stem}.json"
        sio.write_matrix(str(path), sio.MatrixFile(data=fx.V, meta=meta))
        print(path)


if __name__ == "__main__":
    main()
