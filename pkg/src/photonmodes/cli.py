"""Command-line interface: evaluate modes to files, run validation suites,
compute overlap/Gram matrices.

Exit codes: 0 success (and all checks passed), 1 runtime failure or failed
checks, 2 usage error (bad flags, unknown suite, invalid label).

Output formats: field grids are written as a JSON header plus a CSV body
(one row per node: t, x, y, z then Re/Im of the four covector components,
17 significant digits, row-major over the axes as declared); reports and
Gram matrices are JSON with a provenance block (tool version, seed, config
hash).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .errors import InvalidLabelError, NonConvergenceError
from .modes import (PlaneWaveLabel, CylindricalLabel, SphericalLabel,
                    GridSpec, sample_grid)
from .inner_product import QuadratureSpec, discrete_orthonormality
from . import validation

FMT = "%.16e"   # 17 significant digits, lowercase scientific


def _provenance(seed, config):
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return {
        "tool": "photonmodes",
        "version": __version__,
        "seed": seed,
        "config_hash": hashlib.sha256(blob.encode()).hexdigest(),
    }


def _parse_kv(pairs):
    out = {}
    for item in pairs or []:
        for chunk in item.split(","):
            if not chunk:
                continue
            if "=" not in chunk:
                raise ValueError(f"expected key=value, got {chunk!r}")
            k, v = chunk.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _build_label(family, kv):
    try:
        if family == "plane":
            return PlaneWaveLabel((float(kv["px"]), float(kv["py"]), float(kv["pz"])),
                                  int(kv.get("s", 1)))
        if family == "cylindrical":
            return CylindricalLabel(float(kv["p0"]), float(kv.get("pz", 0.0)),
                                    int(kv.get("m", 0)), int(kv.get("s", 1)))
        if family == "spherical":
            return SphericalLabel(float(kv["p0"]), int(kv["l"]),
                                  int(kv.get("m", 0)), int(kv.get("s", 1)))
    except KeyError as exc:
        raise ValueError(f"missing label key {exc} for family {family!r}") from exc
    raise ValueError(f"unknown family {family!r}")


def _build_mode(family, kv):
    from .modes import plane_wave, cylindrical_mode, spherical_mode
    label = _build_label(family, kv)
    ctor = {"plane": plane_wave, "cylindrical": cylindrical_mode,
            "spherical": spherical_mode}[family]
    return ctor(label)


def _parse_grid(items):
    axes = {}
    for item in items or []:
        for chunk in item.split(","):
            if not chunk:
                continue
            parts = chunk.split(":")
            if len(parts) != 4:
                raise ValueError(f"grid axis must be name:min:max:n, got {chunk!r}")
            name, lo, hi, n = parts
            if name not in ("t", "x", "y", "z"):
                raise ValueError(f"unknown grid axis {name!r}")
            axes[name] = (float(lo), float(hi), int(n))
    defaults = {"t": (0.0, 0.0, 1), "x": (-1.0, 1.0, 8), "y": (-1.0, 1.0, 8),
                "z": (-1.0, 1.0, 8)}
    defaults.update(axes)
    return GridSpec(**defaults)


def _parse_quad(items):
    kv = _parse_kv(items)
    kwargs = {}
    floats = ("t_slice", "r_max", "box_half", "tail_r0", "tail_eta", "tol")
    ints = ("n_r", "n_theta", "n_phi", "n_box", "tail_rounds", "gl_order")
    for k, v in kv.items():
        if k in floats:
            kwargs[k] = float(v)
        elif k in ints:
            kwargs[k] = int(v)
        elif k in ("chart", "tail"):
            kwargs[k] = v
        else:
            raise ValueError(f"unknown quadrature key {k!r}")
    return QuadratureSpec(**kwargs)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args):
    kv = _parse_kv(args.label)
    mode = _build_mode(args.family, kv)
    spec = _parse_grid(args.grid)
    grid = sample_grid(mode, spec)
    header = {
        "chart": "lorentz",
        "family": args.family,
        "label": kv,
        "axes": {k: [float(v[0]), float(v[-1]), len(v)] for k, v in grid.axes.items()},
        "columns": ["t", "x", "y", "z",
                    "re_A0", "im_A0", "re_A1", "im_A1",
                    "re_A2", "im_A2", "re_A3", "im_A3"],
        "ordering": "row-major over (t, x, y, z)",
        "provenance": _provenance(args.seed, {"label": kv, "grid": repr(spec)}),
    }
    base = args.out
    with open(base + ".header.json", "w") as fh:
        json.dump(header, fh, indent=2, sort_keys=True)
        fh.write("\n")
    tt, xx, yy, zz = np.meshgrid(*grid.axes.values(), indexing="ij")
    coords = np.stack([tt.ravel(), xx.ravel(), yy.ravel(), zz.ravel()], axis=1)
    vals = grid.values.reshape(-1, 4)
    body = np.concatenate([coords, np.stack(
        [vals.real[:, 0], vals.imag[:, 0], vals.real[:, 1], vals.imag[:, 1],
         vals.real[:, 2], vals.imag[:, 2], vals.real[:, 3], vals.imag[:, 3]], axis=1)],
        axis=1)
    if args.format == "csv":
        np.savetxt(base + ".csv", body, fmt=FMT, delimiter=",",
                   header=",".join(header["columns"]), comments="")
    else:
        # covectors as JSON arrays of [re, im] pairs per component
        rows = [{"coords": [float(FMT % c) for c in row[:4]],
                 "A": [[float(FMT % row[4 + 2 * k]), float(FMT % row[5 + 2 * k])]
                       for k in range(4)]}
                for row in body]
        with open(base + ".json", "w") as fh:
            json.dump({"header": header, "rows": rows}, fh)
            fh.write("\n")
    print(f"wrote {base}.header.json and {base}.{args.format} "
          f"({body.shape[0]} rows)")
    return 0


def cmd_validate(args):
    names = list(validation.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in validation.SUITES:
            print(f"unknown suite {name!r}; available: "
                  f"{', '.join(validation.SUITES)}, all", file=sys.stderr)
            return 2
    reports = []
    for name in names:
        reports.extend(validation.run_suite(name, seed=args.seed,
                                            n_labels=args.n_labels))
    payload = {
        "provenance": _provenance(args.seed, {"suites": names, "n_labels": args.n_labels}),
        "reports": [rep.to_dict() for rep in reports],
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    width = max(len(rep.name) for rep in reports)
    print(f"{'check'.ljust(width)}  {'worst residual':>14}  {'time':>7}  status")
    all_pass = True
    for rep in reports:
        worst = max(rep.residuals.values()) if rep.residuals else 0.0
        status = "pass" if rep.passed else "FAIL"
        all_pass &= rep.passed
        print(f"{rep.name.ljust(width)}  {worst:14.3e}  {rep.runtime:6.1f}s  {status}")
    print(f"overall: {'pass' if all_pass else 'FAIL'}")
    return 0 if all_pass else 1


def cmd_overlap(args):
    kv = _parse_kv(args.label)
    spec = _parse_quad(args.quad) if args.quad else QuadratureSpec(
        tail_r0=300.0, tail_rounds=4)
    try:
        if args.family == "spherical":
            fixed = {"p0": float(kv.get("p0", 1.0))}
            ranges = {"l_max": int(kv.get("lmax", 3))}
        elif args.family == "cylindrical":
            fixed = {"p0": float(kv.get("p0", 1.0)), "pz": float(kv.get("pz", 0.0))}
            ranges = {"m_max": int(kv.get("mmax", 3))}
        else:
            raise ValueError("overlap supports the cylindrical and spherical families")
        gram = discrete_orthonormality(args.family, fixed, ranges, spec)
        entries = [[None if not np.isfinite(v) else v
                    for v in row] for row in np.real(gram.matrix).tolist()]
    except NonConvergenceError as exc:
        print(f"quadrature failed to converge: {exc}", file=sys.stderr)
        return 1
    payload = {
        "provenance": _provenance(args.seed, {"family": args.family, "fixed": fixed,
                                              "ranges": ranges}),
        "family": args.family,
        "fixed": fixed,
        "labels": [list(lb) for lb in gram.labels],
        "matrix_real": entries,
        "max_offdiag": gram.max_offdiag,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"{len(gram.labels)}x{len(gram.labels)} Gram matrix, "
          f"max off-diagonal {gram.max_offdiag:.3e}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="photonmodes",
                                 description="photon mode bases and their checks")
    ap.add_argument("--seed", type=int, default=20240801)
    sub = ap.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="sample a mode on a grid and write it out")
    p_eval.add_argument("--family", required=True,
                        choices=("plane", "cylindrical", "spherical"))
    p_eval.add_argument("--label", action="append", required=True,
                        help="key=value list, e.g. p0=1.0,l=1,m=0,s=1")
    p_eval.add_argument("--grid", action="append",
                        help="axis:min:max:n, e.g. x:-2:2:32")
    p_eval.add_argument("--out", required=True)
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.set_defaults(func=cmd_eval)

    p_val = sub.add_parser("validate", help="run verification suites")
    p_val.add_argument("suite", nargs="?", default="all",
                       help=f"one of {', '.join(validation.SUITES)}, or all")
    p_val.add_argument("--n-labels", type=int, default=20)
    p_val.add_argument("--out")
    p_val.set_defaults(func=cmd_validate)

    p_ov = sub.add_parser("overlap", help="discrete-sector Gram matrix")
    p_ov.add_argument("--family", required=True,
                      choices=("cylindrical", "spherical"))
    p_ov.add_argument("--label", action="append",
                      help="p0=...,pz=...,lmax=...,mmax=...")
    p_ov.add_argument("--quad", action="append", help="quadrature key=value list")
    p_ov.add_argument("--out")
    p_ov.set_defaults(func=cmd_overlap)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (InvalidLabelError, ValueError) as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:   # runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
