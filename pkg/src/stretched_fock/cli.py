"""Command-line front end: compute states, statistics, overlaps, and
operators, run the identity suite, and sweep parameter grids.

Complex flags take "re,im" pairs; ``--polar r,theta`` enters the command's
primary complex parameter in polar form instead.  Output goes to stdout or
``--output``; JSON records carry {schema, command, params, results, audit}
and CSV uses a documented fixed column order with full (17 significant
digit) precision.  Identical invocations produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 truncation insufficiency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .composite import CompositeLabel, modified_displacement, squeezed_expectations
from .fock import (
    StretchLabel,
    TruncationConfig,
    TruncationError,
    poisson_tail_bound,
    required_dim,
)
from .operators import (
    SqueezeLabel,
    displacement,
    displacement_normal_ordered,
    squeezing,
)
from .states import (
    annihilation_residual,
    make_state,
    numeric_photon_stats,
    overlap,
    photon_pmf,
    photon_stats,
)
from .verify import run_verification

__all__ = ["RunConfig", "main"]

SCHEMA_VERSION = 1

OPERATOR_KINDS = (
    "displacement",
    "displacement-normal-ordered",
    "squeezing",
    "modified-displacement",
)

SWEEP_OBSERVABLES = (
    "mean",
    "second_moment",
    "mandel_q",
    "en",
    "eigen_residual",
    "overlap_vacuum",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of one CLI invocation."""

    command: str
    sigma: float = 1.0
    upsilon: float = 1.0
    zeta: complex = 0j
    xi: complex = 0j
    alpha: complex = 0j
    dim: int = 64
    tol: float = 1e-8
    tail_tol: float = 1e-12
    output_format: str = "json"
    output_path: str | None = None
    seed: int = 0

    def validate(self) -> None:
        if not 0.0 < self.sigma <= 1.0:
            raise ValueError(f"--sigma must lie in (0, 1], got {self.sigma}")
        if not 0.0 < self.upsilon <= 1.0:
            raise ValueError(f"--upsilon must lie in (0, 1], got {self.upsilon}")
        if self.dim < 1:
            raise ValueError(f"--dim must be >= 1, got {self.dim}")
        if self.tol <= 0.0:
            raise ValueError(f"--tol must be > 0, got {self.tol}")
        if not 0.0 <= self.tail_tol < 1.0:
            raise ValueError(f"--tail-tol must lie in [0, 1), got {self.tail_tol}")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"--format must be json or csv, got {self.output_format}")


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from exc


def _parse_polar(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'r,theta', got {text!r}")
    try:
        r, theta = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'r,theta', got {text!r}") from exc
    return complex(r * np.cos(theta), r * np.sin(theta))


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _g17(value: float) -> str:
    return format(value, ".17g")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_record(command: str, params: dict, results: dict, audit: dict) -> str:
    record = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
        "audit": audit,
    }
    return json.dumps(record, indent=2)


def _csv_table(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else _g17(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _complex_param(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_state(cfg: RunConfig) -> int:
    label = StretchLabel(cfg.zeta, cfg.sigma)
    tcfg = TruncationConfig(cfg.dim, tail_tol=cfg.tail_tol)
    amps = make_state(label, tcfg)
    pmf = [photon_pmf(label, n) for n in range(cfg.dim)]
    norm_sq = float(np.vdot(amps, amps).real)
    mean = label.mean_photons
    audit = {
        "mean_photons": mean,
        "tail_bound": poisson_tail_bound(mean, cfg.dim),
        "tail_tol": cfg.tail_tol,
        "required_dim": required_dim(mean, cfg.tail_tol) if mean > 0 and cfg.tail_tol > 0 else 1,
    }
    if cfg.output_format == "csv":
        rows = [[n, float(amps[n].real), float(amps[n].imag), pmf[n]] for n in range(cfg.dim)]
        _emit(_csv_table(["n", "amp_re", "amp_im", "pmf"], rows), cfg.output_path)
    else:
        results = {
            "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
            "pmf": pmf,
            "norm_sq": norm_sq,
        }
        params = {"zeta": _complex_param(cfg.zeta), "sigma": cfg.sigma, "dim": cfg.dim}
        _emit(_json_record("state", params, results, audit), cfg.output_path)
    return 0


def cmd_stats(cfg: RunConfig) -> int:
    label = StretchLabel(cfg.zeta, cfg.sigma)
    cf = photon_stats(label)
    num = numeric_photon_stats(label)
    results = {
        "mean": cf.mean,
        "second_moment": cf.second_moment,
        "mandel_q": cf.mandel_q,
        "numeric_mean": num.mean,
        "numeric_second_moment": num.second_moment,
        "numeric_mandel_q": num.mandel_q,
    }
    if cfg.output_format == "csv":
        header = list(results.keys())
        _emit(_csv_table(header, [[results[k] for k in header]]), cfg.output_path)
    else:
        params = {"zeta": _complex_param(cfg.zeta), "sigma": cfg.sigma}
        _emit(_json_record("stats", params, results, {}), cfg.output_path)
    return 0


def cmd_overlap(cfg: RunConfig) -> int:
    bra = StretchLabel(cfg.alpha, cfg.sigma)
    ket = StretchLabel(cfg.zeta, cfg.sigma)
    value = overlap(bra, ket)
    results = {
        "overlap_re": value.real,
        "overlap_im": value.imag,
        "magnitude": abs(value),
    }
    if cfg.output_format == "csv":
        header = list(results.keys())
        _emit(_csv_table(header, [[results[k] for k in header]]), cfg.output_path)
    else:
        params = {
            "alpha": _complex_param(cfg.alpha),
            "zeta": _complex_param(cfg.zeta),
            "sigma": cfg.sigma,
        }
        _emit(_json_record("overlap", params, results, {}), cfg.output_path)
    return 0


def cmd_operator(cfg: RunConfig, kind: str) -> int:
    tcfg = TruncationConfig(cfg.dim, tail_tol=cfg.tail_tol)
    if kind == "displacement":
        op = displacement(StretchLabel(cfg.zeta, cfg.sigma), tcfg)
    elif kind == "displacement-normal-ordered":
        op = displacement_normal_ordered(StretchLabel(cfg.zeta, cfg.sigma), tcfg)
    elif kind == "squeezing":
        op = squeezing(SqueezeLabel(cfg.xi, cfg.upsilon), tcfg)
    elif kind == "modified-displacement":
        op = modified_displacement(
            StretchLabel(cfg.alpha, cfg.sigma), StretchLabel(cfg.zeta, cfg.sigma), tcfg
        )
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    defect = float(np.linalg.norm(op.conj().T @ op - np.eye(cfg.dim)))
    audit = {"unitarity_residual": defect, "dim": cfg.dim}
    if cfg.output_format == "csv":
        rows = [
            [m, n, float(op[m, n].real), float(op[m, n].imag)]
            for m in range(cfg.dim)
            for n in range(cfg.dim)
        ]
        _emit(_csv_table(["m", "n", "re", "im"], rows), cfg.output_path)
    else:
        results = {
            "entries": [
                [m, n, float(op[m, n].real), float(op[m, n].imag)]
                for m in range(cfg.dim)
                for n in range(cfg.dim)
            ]
        }
        params = {
            "kind": kind,
            "zeta": _complex_param(cfg.zeta),
            "xi": _complex_param(cfg.xi),
            "alpha": _complex_param(cfg.alpha),
            "sigma": cfg.sigma,
            "upsilon": cfg.upsilon,
            "dim": cfg.dim,
        }
        _emit(_json_record("operator", params, results, audit), cfg.output_path)
    return 0


def cmd_verify(cfg: RunConfig, sigma_given: bool, upsilon_given: bool) -> int:
    checks = run_verification(
        tol=cfg.tol,
        dim=cfg.dim,
        seed=cfg.seed,
        sigma=cfg.sigma if sigma_given else None,
        upsilon=cfg.upsilon if upsilon_given else None,
    )
    failed = [c for c in checks if not c.passed]
    if cfg.output_format == "json":
        results = {
            "checks": [
                {
                    "name": c.name,
                    "identity": c.identity,
                    "residual": c.residual,
                    "tol": c.tol,
                    "passed": c.passed,
                }
                for c in checks
            ],
            "all_passed": not failed,
        }
        params = {"tol": cfg.tol, "dim": cfg.dim, "seed": cfg.seed}
        _emit(_json_record("verify", params, results, {"failed": len(failed)}), cfg.output_path)
    elif cfg.output_format == "csv":
        rows = [[c.name, c.identity, c.residual, c.tol, "PASS" if c.passed else "FAIL"] for c in checks]
        _emit(_csv_table(["name", "identity", "residual", "tol", "status"], rows), cfg.output_path)
    else:
        lines = []
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status}  {c.name:32s} residual={c.residual:.3e}  tol={c.tol:.1e}")
            if not c.passed:
                lines.append(f"      failing identity: {c.identity}")
        lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return 1 if failed else 0


def cmd_sweep(cfg: RunConfig, observables, sigmas, upsilons, zeta_mods, rhos) -> int:
    for name in observables:
        if name not in SWEEP_OBSERVABLES:
            raise ValueError(f"unknown observable {name!r}; choose from {SWEEP_OBSERVABLES}")
    for s in sigmas:
        if not 0.0 < s <= 1.0:
            raise ValueError(f"sweep sigma values must lie in (0, 1], got {s}")
    for u in upsilons:
        if not 0.0 < u <= 1.0:
            raise ValueError(f"sweep upsilon values must lie in (0, 1], got {u}")
    tcfg = TruncationConfig(cfg.dim, tail_tol=cfg.tail_tol)
    header = ["sigma", "upsilon", "zeta_mod", "rho", *observables]
    rows = []
    for s in sigmas:
        for u in upsilons:
            for zmod in zeta_mods:
                for rho in rhos:
                    label = StretchLabel(complex(zmod, 0.0), s)
                    stats = photon_stats(label)
                    row: list = [s, u, zmod, rho]
                    for name in observables:
                        if name == "mean":
                            row.append(stats.mean)
                        elif name == "second_moment":
                            row.append(stats.second_moment)
                        elif name == "mandel_q":
                            row.append(stats.mandel_q)
                        elif name == "en":
                            comp = CompositeLabel(label, SqueezeLabel(complex(rho, 0.0), u))
                            row.append(squeezed_expectations(comp).en)
                        elif name == "eigen_residual":
                            row.append(annihilation_residual(label, tcfg))
                        elif name == "overlap_vacuum":
                            row.append(abs(overlap(StretchLabel(0j, s), label)))
                    rows.append(row)
    if cfg.output_format == "json":
        params = {
            "observables": list(observables),
            "sigmas": list(sigmas),
            "upsilons": list(upsilons),
            "zeta_mods": list(zeta_mods),
            "rhos": list(rhos),
            "dim": cfg.dim,
        }
        results = {"columns": header, "rows": rows}
        _emit(_json_record("sweep", params, results, {}), cfg.output_path)
    else:
        _emit(_csv_table(header, rows), cfg.output_path)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stretched-fock",
        description="Stretched coherent states and their operator algebra in a truncated Fock basis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format="json"):
        p.add_argument("--format", default=default_format, dest="output_format",
                       help=f"output format (default {default_format})")
        p.add_argument("--output", default=None, dest="output_path",
                       help="write output to this path instead of stdout")

    p_state = sub.add_parser("state", help="amplitudes, photon pmf, and truncation audit")
    p_state.add_argument("--zeta", type=_parse_complex, default=0j, help="label as 're,im'")
    p_state.add_argument("--polar", type=_parse_polar, default=None, metavar="R,THETA",
                         help="enter zeta in polar form instead")
    p_state.add_argument("--sigma", type=float, default=1.0)
    p_state.add_argument("--dim", type=int, default=64)
    p_state.add_argument("--tail-tol", type=float, default=1e-12, dest="tail_tol")
    add_common(p_state)

    p_stats = sub.add_parser("stats", help="photon-number moments and Mandel parameter")
    p_stats.add_argument("--zeta", type=_parse_complex, default=0j)
    p_stats.add_argument("--polar", type=_parse_polar, default=None, metavar="R,THETA")
    p_stats.add_argument("--sigma", type=float, default=1.0)
    add_common(p_stats)

    p_overlap = sub.add_parser("overlap", help="closed-form overlap <alpha|zeta> at common sigma")
    p_overlap.add_argument("--zeta", type=_parse_complex, default=0j, help="ket label")
    p_overlap.add_argument("--alpha", type=_parse_complex, default=0j, help="bra label")
    p_overlap.add_argument("--polar", type=_parse_polar, default=None, metavar="R,THETA",
                           help="enter zeta in polar form instead")
    p_overlap.add_argument("--sigma", type=float, default=1.0)
    add_common(p_overlap)

    p_op = sub.add_parser("operator", help="matrix entries of a displacement or squeezing operator")
    p_op.add_argument("--kind", choices=OPERATOR_KINDS, default="displacement")
    p_op.add_argument("--zeta", type=_parse_complex, default=0j)
    p_op.add_argument("--xi", type=_parse_complex, default=0j)
    p_op.add_argument("--alpha", type=_parse_complex, default=0j)
    p_op.add_argument("--polar", type=_parse_polar, default=None, metavar="R,THETA",
                      help="polar entry for zeta (squeezing: for xi)")
    p_op.add_argument("--sigma", type=float, default=1.0)
    p_op.add_argument("--upsilon", type=float, default=1.0)
    p_op.add_argument("--dim", type=int, default=32)
    p_op.add_argument("--tail-tol", type=float, default=1e-12, dest="tail_tol")
    add_common(p_op)

    p_verify = sub.add_parser("verify", help="run the cross-module identity suite")
    p_verify.add_argument("--tol", type=float, default=1e-8)
    p_verify.add_argument("--dim", type=int, default=96)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--sigma", type=float, default=None)
    p_verify.add_argument("--upsilon", type=float, default=None)
    add_common(p_verify, default_format="text")

    p_sweep = sub.add_parser("sweep", help="evaluate observables over a parameter grid")
    p_sweep.add_argument("--observables", type=str, default="mean",
                         help=f"comma list from {','.join(SWEEP_OBSERVABLES)}")
    p_sweep.add_argument("--sigmas", type=_parse_floats, default=(1.0,))
    p_sweep.add_argument("--upsilons", type=_parse_floats, default=(1.0,))
    p_sweep.add_argument("--zeta-mods", type=_parse_floats, default=(1.0,), dest="zeta_mods")
    p_sweep.add_argument("--rhos", type=_parse_floats, default=(0.0,))
    p_sweep.add_argument("--dim", type=int, default=96)
    p_sweep.add_argument("--tail-tol", type=float, default=1e-12, dest="tail_tol")
    add_common(p_sweep, default_format="csv")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    polar = getattr(args, "polar", None)
    zeta = getattr(args, "zeta", 0j)
    xi = getattr(args, "xi", 0j)
    if polar is not None:
        if getattr(args, "kind", None) == "squeezing":
            xi = polar
        else:
            zeta = polar

    cfg = RunConfig(
        command=args.command,
        sigma=getattr(args, "sigma", None) if getattr(args, "sigma", None) is not None else 1.0,
        upsilon=getattr(args, "upsilon", None) if getattr(args, "upsilon", None) is not None else 1.0,
        zeta=zeta,
        xi=xi,
        alpha=getattr(args, "alpha", 0j),
        dim=getattr(args, "dim", 64),
        tol=getattr(args, "tol", 1e-8),
        tail_tol=getattr(args, "tail_tol", 1e-12),
        output_format=args.output_format,
        output_path=args.output_path,
        seed=getattr(args, "seed", 0),
    )

    try:
        cfg.validate()
        if args.command == "state":
            return cmd_state(cfg)
        if args.command == "stats":
            return cmd_stats(cfg)
        if args.command == "overlap":
            return cmd_overlap(cfg)
        if args.command == "operator":
            return cmd_operator(cfg, args.kind)
        if args.command == "verify":
            return cmd_verify(cfg, args.sigma is not None, args.upsilon is not None)
        if args.command == "sweep":
            observables = tuple(s.strip() for s in args.observables.split(",") if s.strip())
            return cmd_sweep(cfg, observables, args.sigmas, args.upsilons, args.zeta_mods, args.rhos)
        raise ValueError(f"unknown command {args.command!r}")
    except TruncationError as exc:
        print(f"truncation insufficiency: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
