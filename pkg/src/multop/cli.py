"""Command-line front end.

Subcommands: spectrum, pseudospectrum, resolvent-check, commutator-report,
toeplitz-check, convergence.  Every command writes deterministic CSV/JSON
(and optionally SVG) artifacts named "<command>_<kind>_<N>.<ext>" into the
output directory.  Exit codes: 0 success, 1 input error, 2 a report check
failed its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .domains import DomainParams, Truncation, params_from_mapping, load_config
from .errors import MultopError
from .kernels import KernelSpec, schur_young_bound
from .operators import build_z, build_zzstar, dump_dense_csv, dump_triplets
from .quotient import commutator_ideal_certificates, compactness_score, toeplitz_compress
from .resolvent import (
    GridSpec,
    TOL_RESOLVENT,
    dense_oracle_z,
    pseudospectrum_grid,
    solve_resolvent_z,
    solve_resolvent_zzstar,
)
from .spectra import (
    CoefficientVector,
    closed_form_spectrum,
    spectrum_convergence_report,
    truncated_eigenvalues,
)
from .symbols import OperatorWord, symbol_of


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


ISOLATED_TOL = 1e-8
BAND_TOL = 1e-2
CERT_TOL = 1e-10


def cmd_spectrum(params, trunc, args, out: Path) -> int:
    op = build_zzstar(params, trunc, args.mode)
    eigs = truncated_eigenvalues(op)
    spec = closed_form_spectrum(params)
    rows, failed = [], False
    for value, family in sorted(spec.isolated):
        err = float(np.min(np.abs(eigs - value)))
        rows.append([family, float(value), float(eigs[np.argmin(np.abs(eigs - value))]), err])
        failed |= args.mode == "exact" and err > ISOLATED_TOL
    if spec.band is not None:
        lo, hi = spec.band
        inside = eigs[(eigs > lo - BAND_TOL) & (eigs < hi + BAND_TOL)]
        rows.append(["band-lo", float(lo), float(inside.min()), float(abs(inside.min() - lo))])
        rows.append(["band-hi", float(hi), float(inside.max()), float(abs(inside.max() - hi))])
        failed |= args.mode == "exact" and (
            abs(inside.min() - lo) > BAND_TOL or abs(inside.max() - hi) > BAND_TOL
        )
    _write_csv(
        out / f"spectrum_{params.kind}_{trunc.N}.csv",
        ["target", "value", "nearest_eig", "err"],
        rows,
    )
    if args.dump == "dense":
        dump_dense_csv(op, out / f"spectrum_matrix_{params.kind}_{trunc.N}.csv")
    elif args.dump == "triplets":
        dump_triplets(op, out / f"spectrum_matrix_{params.kind}_{trunc.N}.txt")
    return 2 if failed else 0


def cmd_pseudospectrum(params, trunc, args, out: Path) -> int:
    grid = args.grid or GridSpec(-1.2, 1.2, -1.2, 1.2, 41)
    rows = pseudospectrum_grid(params, trunc, grid)
    _write_csv(
        out / f"pseudospectrum_{params.kind}_{trunc.N}.csv",
        ["re", "im", "smin", "region"],
        rows,
    )
    if args.svg:
        _pseudospectrum_svg(rows, grid, out / f"pseudospectrum_{params.kind}_{trunc.N}.svg")
    return 0


def _pseudospectrum_svg(rows, grid: GridSpec, path: Path) -> None:
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "multop"
    smin = np.array([r[2] for r in rows]).reshape(grid.res, grid.res)
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(
        np.log10(np.maximum(smin, 1e-300)),
        origin="lower",
        extent=(grid.x0, grid.x1, grid.y0, grid.y1),
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label="log10 smin")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)


def _random_rhs(index, rng) -> CoefficientVector:
    # support restricted to |n| <= N/2 so dropped tails stay below tolerance
    values = np.zeros(index.dim, dtype=complex)
    half = index.trunc.N // 2
    for i, label in enumerate(index.order):
        if abs(label.n) <= half:
            values[i] = rng.standard_normal() + 1j * rng.standard_normal()
    return CoefficientVector(index, values)


def cmd_resolvent_check(params, trunc, args, out: Path) -> int:
    from .domains import enumerate_basis

    rng = np.random.default_rng(args.seed)
    index = enumerate_basis(params, trunc)
    zz = build_zzstar(params, trunc, "exact").array
    eye = np.eye(index.dim)
    rows, failed = [], False

    def sample_lambda(region: str) -> complex:
        if region == "hole1":
            r_in = params.r if params.kind == "annulus" else params.r1
            rad = rng.uniform(0.0, 0.9 * r_in)
            return rad * np.exp(2j * np.pi * rng.uniform())
        if region == "hole2":
            rad = rng.uniform(0.0, 0.9 * params.r2)
            return params.a + rad * np.exp(2j * np.pi * rng.uniform())
        return rng.uniform(1.1, 2.0) * np.exp(2j * np.pi * rng.uniform())

    z_regions = ["hole1", "outside"] if params.kind != "disk" else ["outside"]
    if params.kind == "pants":
        z_regions.insert(1, "hole2")
    for region in z_regions:
        worst = 0.0
        for _ in range(args.samples):
            lam = sample_lambda(region)
            rhs = _random_rhs(index, rng)
            phi = solve_resolvent_z(params, lam, rhs)
            dense = dense_oracle_z(params, lam, rhs)
            worst = max(
                worst,
                float(np.linalg.norm(phi.values - dense) / np.linalg.norm(dense)),
            )
        rows.append([f"z:{region}", worst])
        failed |= worst > TOL_RESOLVENT

    if params.kind == "pants":
        from .spectra import simple_eigenvalue

        lam_star = simple_eigenvalue(params)
        lo, hi = (params.r2 - params.a) ** 2, (params.r2 + params.a) ** 2
        # sampling windows keep |x_out|^(N/2) below tolerance at the band
        # edges and stay clear of the two interior eigenvalues
        for region, (x0, x1) in (
            ("low", (0.1 * lo, 0.8 * lo)),
            ("high", (hi + 0.2 * (1 - hi), 1 - 0.1 * (1 - hi))),
        ):
            worst = 0.0
            for _ in range(args.samples):
                lam = rng.uniform(x0, x1)
                while min(abs(lam - lam_star), abs(lam - params.r1 ** 2)) < 1e-3:
                    lam = rng.uniform(x0, x1)
                rhs = _random_rhs(index, rng)
                phi = solve_resolvent_zzstar(params, lam, rhs)
                dense = np.linalg.solve(zz - lam * eye, rhs.values)
                worst = max(
                    worst,
                    float(np.linalg.norm(phi.values - dense) / np.linalg.norm(dense)),
                )
            rows.append([f"zzstar:{region}", worst])
            failed |= worst > TOL_RESOLVENT

    _write_csv(
        out / f"resolvent-check_{params.kind}_{trunc.N}.csv",
        ["region", "max_rel_err"],
        rows,
    )
    return 2 if failed else 0


def cmd_commutator_report(params, trunc, args, out: Path) -> int:
    results = commutator_ideal_certificates(params, trunc)
    _write_json(out / f"commutator-report_{params.kind}_{trunc.N}.json", results)
    return 2 if any(r["max_deviation"] > CERT_TOL for r in results) else 0


def cmd_toeplitz_check(params, trunc, args, out: Path) -> int:
    from .domains import enumerate_basis

    index = enumerate_basis(params, trunc)
    word = OperatorWord.z()
    triple = symbol_of(word, params)
    diff = toeplitz_compress(params, trunc, triple).array - build_z(params, trunc).array
    allowed = np.zeros(index.dim, dtype=bool)
    for i, label in enumerate(index.order):
        if (label.family in ("F", "G") and label.n == -1) or abs(label.n) == trunc.N:
            allowed[i] = True
    leak = float(np.max(np.abs(diff[:, ~allowed]))) if (~allowed).any() else 0.0
    rows = compactness_score(params, word, [trunc.N])
    payload = {
        "symbol_of_z": {
            "phi1": [[d, [c.real, c.imag]] for d, c in triple.phi1.terms()],
            "phi2": [[d, [c.real, c.imag]] for d, c in triple.phi2.terms()],
            "phi3": [[d, [c.real, c.imag]] for d, c in triple.phi3.terms()],
        },
        "offsupport_leak": leak,
        "compactness": rows,
    }
    _write_json(out / f"toeplitz-check_{params.kind}_{trunc.N}.json", payload)
    _write_csv(
        out / f"toeplitz-check_compactness_{params.kind}_{trunc.N}.csv",
        ["N", "M", "masked_norm", "tail_norm"],
        [[r["N"], r["M"], r["masked_norm"], r["tail_norm"]] for r in rows],
    )
    return 2 if leak > 1e-12 else 0


def cmd_convergence(params, trunc, args, out: Path) -> int:
    N_list = args.N_list or [25, 50, 100, trunc.N]
    rows = spectrum_convergence_report(params, sorted(set(N_list)))
    _write_csv(
        out / f"convergence_{params.kind}_{trunc.N}.csv",
        ["N", "err_lambda_star", "err_r1sq", "err_one", "band_lo_err", "band_hi_err"],
        [
            [
                r["N"],
                r["err_lambda_star"],
                r["err_r1sq"],
                r["err_one"],
                r["band_lo_err"],
                r["band_hi_err"],
            ]
            for r in rows
        ],
    )
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "pseudospectrum": cmd_pseudospectrum,
    "resolvent-check": cmd_resolvent_check,
    "commutator-report": cmd_commutator_report,
    "toeplitz-check": cmd_toeplitz_check,
    "convergence": cmd_convergence,
}


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 5:
        raise ValueError(f"grid must be 'x0,x1,y0,y1,res', got {text!r}")
    return GridSpec(
        float(parts[0]), float(parts[1]), float(parts[2]), float(parts[3]), int(parts[4])
    )


def _parse_n_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multop",
        description="Truncated multiplication-operator models on the disk, "
        "annulus and pair of pants.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--kind", choices=["disk", "annulus", "pants"], default="pants")
    parser.add_argument("--a", type=float, default=None)
    parser.add_argument("--r1", type=float, default=None)
    parser.add_argument("--r2", type=float, default=None)
    parser.add_argument("--r", type=float, default=None)
    parser.add_argument("--N", type=int, default=100)
    parser.add_argument("--grid", type=str, default=None, help="x0,x1,y0,y1,res")
    parser.add_argument("--out", type=str, default=".")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--mode", choices=["exact", "compressed"], default="exact")
    parser.add_argument("--config", type=str, default=None, help="JSON/TOML config path")
    parser.add_argument("--svg", action="store_true", help="emit an SVG heatmap")
    parser.add_argument("--dump", choices=["dense", "triplets"], default=None)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--N-list", dest="N_list", type=str, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            params, trunc = load_config(args.config)
        else:
            cfg = {"kind": args.kind, "N": args.N}
            if args.kind == "pants":
                cfg.update(
                    a=0.5 if args.a is None else args.a,
                    r1=0.2 if args.r1 is None else args.r1,
                    r2=0.2 if args.r2 is None else args.r2,
                )
            elif args.kind == "annulus":
                cfg.update(r=0.5 if args.r is None else args.r)
            params, trunc = params_from_mapping(cfg)
        if args.grid is not None:
            args.grid = _parse_grid(args.grid)
        if args.N_list is not None:
            args.N_list = _parse_n_list(args.N_list)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    except (MultopError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](params, trunc, args, out)
    except MultopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
