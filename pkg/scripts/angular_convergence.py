#!/usr/bin/env python3
"""Doubling-window ladder for the angular average.

Shows the finite-window average of exp(i sigma (n-m) phi) collapsing onto
the Kronecker delta as the window grows, with the 1/window envelope, and
cross-checks the closed form against brute-force trapezoid integration at
small windows.
"""

import argparse

from stretched_fock import QuadratureSpec, angular_average, angular_average_numeric


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sigma", type=float, default=0.5)
    parser.add_argument("--delta", type=int, default=3, help="level offset n - m")
    parser.add_argument("--phi0", type=float, default=5.0, help="starting half-window")
    parser.add_argument("--rungs", type=int, default=10, help="number of doublings")
    args = parser.parse_args()

    print(f"sigma={args.sigma}  delta={args.delta}")
    print(f"{'phi':>12s} {'|average|':>14s} {'1/(sigma*delta*phi)':>20s} {'trapezoid':>14s}")
    for k in range(args.rungs):
        phi = args.phi0 * 2**k
        spec = QuadratureSpec(
            sigma=args.sigma, radial_nodes=8, angular_mode="finite-phi", phi=phi
        )
        closed = angular_average(args.delta, 0, args.sigma, spec)
        envelope = 1.0 / (args.sigma * args.delta * phi)
        if phi <= 100.0:
            steps = max(64 * (1 + args.delta), int(40 * args.sigma * args.delta * phi))
            numeric = f"{abs(angular_average_numeric(args.delta, 0, args.sigma, phi, steps)):14.6e}"
        else:
            numeric = f"{'(skipped)':>14s}"
        print(f"{phi:12.1f} {abs(closed):14.6e} {envelope:20.6e} {numeric}")


if __name__ == "__main__":
    main()
