#!/usr/bin/env python3
"""Map the branch window of label-level time evolution.

Free evolution multiplies amplitude n by exp(-i n omega_t), which always
lands back in the same state family.  The label-level shortcut
zeta -> exp(-i omega_t / sigma) zeta reproduces it only while the rotated
label's argument stays inside (-pi, pi]; past the cut the two routes differ
by the branch jump exp(2 pi i sigma).  This scans omega_t and reports where
the shortcut holds.
"""

import argparse
import cmath

import numpy as np

from stretched_fock import (
    EvolutionPhase,
    StretchLabel,
    TruncationConfig,
    evolve,
    evolved_label,
    make_state,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sigma", type=float, default=0.5)
    parser.add_argument("--zeta-mod", type=float, default=1.0, dest="zeta_mod")
    parser.add_argument("--zeta-arg", type=float, default=2.0, dest="zeta_arg")
    parser.add_argument("--dim", type=int, default=64)
    parser.add_argument("--steps", type=int, default=24)
    parser.add_argument("--max-omega-t", type=float, default=2 * np.pi, dest="max_omega_t")
    args = parser.parse_args()

    label = StretchLabel(args.zeta_mod * cmath.exp(1j * args.zeta_arg), args.sigma)
    cfg = TruncationConfig(args.dim)
    base = make_state(label, cfg)

    print(f"zeta = {label.zeta:.4f}  sigma = {args.sigma}  Arg(zeta) = {args.zeta_arg:+.4f}")
    print("label route matches amplitude route while Arg(zeta) - omega_t/sigma stays in (-pi, pi]")
    print(f"{'omega_t':>10s} {'rotated Arg':>12s} {'|label - amplitude|':>20s} {'wrapped':>8s}")
    for k in range(args.steps + 1):
        omega_t = args.max_omega_t * k / args.steps
        phase = EvolutionPhase(omega_t)
        via_amps = evolve(base, phase)
        via_label = make_state(evolved_label(label, phase), cfg)
        diff = float(np.abs(via_label - via_amps).max())
        rotated = args.zeta_arg - omega_t / args.sigma
        wrapped = not (-np.pi < rotated <= np.pi)
        print(f"{omega_t:10.4f} {rotated:12.4f} {diff:20.3e} {'yes' if wrapped else 'no':>8s}")


if __name__ == "__main__":
    main()
