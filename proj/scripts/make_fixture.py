#!/usr/bin/env python3
"""Regenerate data/fixture.csv, the deterministic test table.

Two latent factors drive the exposure and pull the outcome in opposite
directions, so different covariate subsets move the adjusted slope both
ways. Values are rounded to 3 decimals to keep the file readable; the
rounded file is the reference, not the generator state.
"""

import random
import sys

N = 48
SEED = 74120


def main() -> None:
    rng = random.Random(SEED)
    rows = []
    for _ in range(N):
        u = rng.gauss(0, 1)
        v = rng.gauss(0, 1)
        e = rng.gauss(0, 1)
        exposure = u + v + 0.6 * e
        outcome = 0.4 * exposure + 1.2 * u - 1.0 * v + 0.8 * rng.gauss(0, 1)
        z1 = u + 0.3 * rng.gauss(0, 1)
        z2 = v + 0.3 * rng.gauss(0, 1)
        z3 = 0.7 * u + 0.7 * v + 0.4 * rng.gauss(0, 1)
        z4 = e + 0.5 * rng.gauss(0, 1)
        z5 = 0.5 * outcome + rng.gauss(0, 1)
        z6 = rng.gauss(0, 1)
        rows.append([outcome, exposure, z1, z2, z3, z4, z5, z6])

    out = sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w")
    print("outcome,exposure,z1,z2,z3,z4,z5,z6", file=out)
    for row in rows:
        print(",".join(f"{value:.3f}" for value in row), file=out)


if __name__ == "__main__":
    main()
