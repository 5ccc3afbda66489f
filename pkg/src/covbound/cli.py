"""Command-line front end: ``covbound {spectrum,wavefn,verify,orbit,constants}``."""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import __version__
from . import induced as ind
from .errors import CovboundError, ConfigError, OrbitCoverage
from .hyperangular import HyperangularState
from .io import csv_text, emit, json_text, load_json, read_orbit, read_tabulated_potential, rows_to_columns
from .kinematics import TwoBodyMasses
from .radial import Coulomb, Oscillator, RadialGrid, Tabulated
from .spectrum import positronium_report, spectrum_table
from .units import get_units, masses_in_units
from .verify import SUITES, demo_bundle, run_suite
from .wavefn import sample_wavefunction

EXIT_FAIL = 1
EXIT_ERROR = 2


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--units", choices=["atomic", "ev"], default="atomic")
    p.add_argument("--out", default=None, help="output path; stdout when omitted")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--tol", type=_positive_float, default=None)
    p.add_argument("--grid", type=_positive_int, default=None)
    p.add_argument("--config", default=None, help="JSON file of defaults; explicit flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covbound", description=__doc__)
    parser.add_argument("--version", action="version", version=f"covbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="mass/energy table for a radial potential")
    _common(p)
    p.add_argument("--potential", choices=["coulomb", "oscillator", "tabulated"], default="coulomb")
    p.add_argument("--Z", type=_positive_int, default=1)
    p.add_argument("--omega", type=_positive_float, default=1.0)
    p.add_argument("--table", default=None, help="two-column CSV (rho, V) for --potential tabulated")
    p.add_argument("--N-max", dest="N_max", type=_positive_int, default=3)
    p.add_argument("--ell-max", dest="ell_max", type=int, default=None)
    p.add_argument("--m1", type=_positive_float, default=1.0, help="mass in electron masses")
    p.add_argument("--m2", type=_positive_float, default=1.0, help="mass in electron masses")
    p.add_argument("--numeric", action="store_true", help="solve the radial equation numerically")
    p.add_argument("--preset", choices=["positronium"], default=None)
    p.add_argument("--K", type=float, default=None, help="override the constant K (default -M c^2 / 2)")

    p = sub.add_parser("wavefn", help="sample psi on matched Gauss nodes")
    _common(p)
    p.add_argument("--potential", choices=["coulomb", "oscillator"], default="coulomb")
    p.add_argument("--Z", type=_positive_int, default=1)
    p.add_argument("--omega", type=_positive_float, default=1.0)
    p.add_argument("--m1", type=_positive_float, default=1.0)
    p.add_argument("--m2", type=_positive_float, default=1.0)
    p.add_argument("--n-a", dest="n_a", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--eps", type=_positive_float, default=0.05, help="regulator for n = 0")
    p.add_argument("--conjugated", action="store_true")
    p.add_argument("--normalize", action="store_true", help="rescale to unit quadrature norm")

    p = sub.add_parser("verify", help="run self-verification suites")
    _common(p)
    p.add_argument("--suite", default="all", help=f"one of {sorted(SUITES) + ['all']}")

    p = sub.add_parser("orbit", help="transport a sampled bundle along the orbit")
    _common(p)
    p.add_argument("--orbit", default=None, help="JSON orbit file (directions, optional transform)")
    p.add_argument("--boost", type=float, nargs=3, default=None, metavar=("BX", "BY", "BZ"))
    p.add_argument("--axis", type=float, nargs=3, default=None, metavar=("X", "Y", "Z"))
    p.add_argument("--angle", type=float, default=None)
    p.add_argument("--seed", type=int, default=None, help="use a seeded random Lorentz transform")
    p.add_argument("--interpolate", action="store_true")

    p = sub.add_parser("constants", help="print the active unit-system record")
    _common(p)
    return parser


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace, argv: Sequence[str]) -> argparse.Namespace:
    if not args.config:
        return args
    cfg = load_json(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub._actions} - {"help", "config"}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise ConfigError(f"{args.config}: unknown field(s) {', '.join(unknown)} for '{args.command}'")
    for action in sub._actions:
        if action.dest in cfg and action.type is not None:
            val = cfg[action.dest]
            try:
                cfg[action.dest] = [action.type(str(v)) for v in val] if isinstance(val, list) else action.type(str(val))
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise ConfigError(f"{args.config}: field '{action.dest}': {exc}") from None
        if action.dest in cfg and action.choices is not None and cfg[action.dest] not in action.choices:
            raise ConfigError(f"{args.config}: field '{action.dest}' must be one of {list(action.choices)}")
    sub.set_defaults(**cfg)
    return parser.parse_args(argv)


def _masses(args, units) -> TwoBodyMasses:
    return TwoBodyMasses(*masses_in_units(args.m1, args.m2, units))


def _unit_meta(units) -> dict:
    return {"units": units.name, "energy_unit": units.energy_unit, "length_unit": units.length_unit,
            "mass_unit": units.mass_unit}


def _render(args, kind: str, columns: dict, meta: dict, extra: dict | None = None) -> str:
    if args.format == "json":
        rows = [dict(zip(columns, vals)) for vals in zip(*columns.values())]
        return json_text(kind, {"metadata": meta, "rows": rows, **(extra or {})})
    return csv_text(columns, meta | (extra or {}))


def cmd_spectrum(args) -> tuple[str, int]:
    if args.preset == "positronium":
        args.units, args.potential, args.Z, args.m1, args.m2 = "ev", "coulomb", 1, 1.0, 1.0
    units = get_units(args.units)
    if args.ell_max is not None and args.ell_max < 0:
        raise ConfigError("--ell-max must be nonnegative")
    if args.potential == "coulomb":
        pot = Coulomb(args.Z)
    elif args.potential == "oscillator":
        pot = Oscillator(args.omega)
    else:
        if not args.table:
            raise ConfigError("--potential tabulated requires --table PATH")
        pot = Tabulated(*read_tabulated_potential(args.table))
        args.numeric = True
    grid = RadialGrid(points=args.grid or 20000, tol=args.tol or 1e-6) if args.numeric else None
    masses = _masses(args, units)
    lines = spectrum_table(pot, args.N_max, masses, units, args.ell_max, args.numeric, grid, args.K)
    meta = {"command": "spectrum", "potential": args.potential, **_unit_meta(units),
            "M": masses.M, "m": masses.m, "numeric": args.numeric}
    if args.potential == "coulomb":
        meta["Z"] = args.Z
    elif args.potential == "oscillator":
        meta["omega"] = args.omega
    extra = {}
    if args.preset == "positronium":
        rep = positronium_report()
        extra = {"preset": "positronium", "binding": rep.binding, "delta": rep.delta,
                 "hyperfine": rep.hyperfine, "hyperfine_fraction": rep.hyperfine_fraction}
    columns = rows_to_columns([ln.as_record() for ln in lines])
    return _render(args, "spectrum", columns, meta, extra), 0


def cmd_wavefn(args) -> tuple[str, int]:
    units = get_units(args.units)
    state = HyperangularState(args.n, args.k, args.ell, conjugated=args.conjugated,
                              eps=args.eps if args.n == 0 else None)
    pot = Coulomb(args.Z) if args.potential == "coulomb" else Oscillator(args.omega)
    masses = _masses(args, units)
    sizes = (args.grid,) * 4 if args.grid else None
    raw = sample_wavefunction(pot, args.n_a, state, masses.m, units, sizes)
    s = sample_wavefunction(pot, args.n_a, state, masses.m, units, sizes, normalize=True) if args.normalize else raw
    meta = {"command": "wavefn", "potential": args.potential, "n_a": args.n_a, "n": args.n, "k": args.k,
            "ell": args.ell, "m": state.m, "conjugated": args.conjugated,
            "eps": state.eps if args.n == 0 else None, **_unit_meta(units),
            "raw_norm": raw.norm(), "normalized": args.normalize, "points": int(s.rho.size)}
    return _render(args, "wavefn", s.columns(), meta), 0


def cmd_verify(args) -> tuple[str, int]:
    checks = run_suite(args.suite, args.grid, args.tol)
    records = [c.as_dict() for c in checks]
    for r in records:
        r.pop("passed")
    ok = all(c.passed for c in checks)
    meta = {"command": "verify", "suite": args.suite, "all_pass": ok}
    if args.format == "json":
        text = json_text("verify", {"suite": args.suite, "all_pass": ok, "checks": records})
    else:
        text = csv_text(rows_to_columns(records), meta)
    return text, 0 if ok else EXIT_FAIL


def _orbit_transform(args, doc: dict) -> np.ndarray:
    if args.seed is not None:
        return ind.random_lorentz(np.random.default_rng(args.seed))
    if "matrix" in doc and args.boost is None and args.axis is None:
        lam = np.asarray(doc["matrix"], dtype=float)
        if lam.shape != (4, 4) or ind.pseudo_orthogonality_residual(lam) > 1e-9:
            raise ConfigError("orbit 'matrix' must be a 4x4 Lorentz matrix")
        return lam
    boost = args.boost if args.boost is not None else doc.get("boost", [0.0, 0.0, 0.0])
    axis = args.axis if args.axis is not None else doc.get("axis", [0.0, 0.0, 1.0])
    angle = args.angle if args.angle is not None else doc.get("angle", 0.0)
    return ind.boost(boost) @ ind.rotation(axis, angle)


def cmd_orbit(args) -> tuple[str, int]:
    doc = read_orbit(args.orbit) if args.orbit else {"directions": [list(ind.M0)]}
    lam = _orbit_transform(args, doc)
    b = demo_bundle([ind.as_direction(d, tol=1e-9) for d in doc["directions"]])
    targets = doc.get("targets")
    res = ind.transport_with_bounds(lam, b, targets, interpolate=args.interpolate or doc.get("interpolate", False))
    before = b.member_norms()
    after = res.bundle.member_norms()
    sources = res.bundle.directions @ ind.lorentz_inverse(lam).T
    if targets is not None:
        sources = np.array([b.directions[b.nearest(s)[0]] for s in sources])
    stab = [ind.stabilization_residual(lam, t) for t in res.bundle.directions]
    cols = {f"m{i}": res.bundle.directions[:, i] for i in range(4)}
    cols |= {"norm_before": before if targets is None else np.array([b.member_norms()[b.nearest(s)[0]] for s in sources]),
             "norm_after": after, "stabilization_residual": np.array(stab),
             "interpolation_bound": res.interpolation_bounds}
    drift = float(np.max(np.abs(cols["norm_after"] - cols["norm_before"])))
    meta = {"command": "orbit", **_unit_meta(get_units(args.units)), "lambda": lam.tolist(),
            "norm_drift": drift, "max_stabilization_residual": max(stab)}
    return _render(args, "orbit", cols, meta), 0


def cmd_constants(args) -> tuple[str, int]:
    rec = get_units(args.units).record()
    if args.format == "json":
        return json_text("constants", rec), 0
    return csv_text({"name": list(rec), "value": list(rec.values())}, {"command": "constants"}), 0


COMMANDS = {"spectrum": cmd_spectrum, "wavefn": cmd_wavefn, "verify": cmd_verify,
            "orbit": cmd_orbit, "constants": cmd_constants}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(parser, args, argv)
        text, status = COMMANDS[args.command](args)
        emit(text, args.out, sys.stdout)
    except OrbitCoverage as exc:
        print(f"covbound: orbit coverage: missing direction {list(exc.direction)}", file=sys.stderr)
        return EXIT_ERROR
    except CovboundError as exc:
        print(f"covbound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return status


if __name__ == "__main__":
    sys.exit(main())
