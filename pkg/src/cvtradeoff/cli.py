"""Command-line driver: run a scan and write CSV, a JSON manifest and optionally SVG."""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, report
from .gaussian import Impure, InvalidParameter, InvalidState, Pure
from .relations import InvalidRegime
from .sampler import DEFAULT_SHOTS
from .scenarios import (
    DEFAULT_REPEATS,
    DEFAULT_SPEC,
    DEFAULT_T_GRID,
    DEFAULT_THETA_GRID,
    ErrorFree,
    MixedState,
    NonzeroError,
    ScenarioConfig,
    assemble_bounds_plane,
    run,
)

SCENARIOS = ("error-free", "nonzero", "mixed", "bounds")


def _grid(text: str) -> tuple[float, ...]:
    """Either a comma list "0,0.5,1" or a range "start:stop:step" (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ValueError
            n = int(round((stop - start) / step))
            return tuple(round(start + i * step, 12) for i in range(n + 1))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cvtradeoff",
        description="Error-tradeoff uncertainty relations on a simulated EPR state.",
    )
    p.add_argument("--scenario", choices=SCENARIOS, default="error-free")
    p.add_argument("--squeezing-db", type=float, default=None)
    p.add_argument("--antisqueezing-db", type=float, default=None)
    p.add_argument("--r", type=float, default=None, help="pure two-mode squeezing parameter")
    p.add_argument("--theta-grid", type=_grid, default=None, help="degrees, e.g. 0:360:30")
    p.add_argument("--t-grid", type=_grid, default=None, help="transmissions, e.g. 0:1:0.1")
    p.add_argument("--eps-a-grid", type=_grid, default=None, help="bounds plane only")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("analytic", "mc", "both"), default="analytic")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--svg", action="store_true", help="also write an SVG figure")
    p.add_argument(
        "--from-manifest", type=Path, default=None,
        help="rerun with the arguments recorded in a manifest",
    )
    return p


def spec_from_args(args):
    if args.r is not None:
        if args.squeezing_db is not None or args.antisqueezing_db is not None:
            raise InvalidParameter("--r cannot be combined with --squeezing-db/--antisqueezing-db")
        return Pure(args.r)
    if args.squeezing_db is None and args.antisqueezing_db is None:
        return DEFAULT_SPEC
    if args.squeezing_db is None or args.antisqueezing_db is None:
        raise InvalidParameter("--squeezing-db and --antisqueezing-db must be given together")
    return Impure(args.squeezing_db, args.antisqueezing_db)


def _spec_dict(spec) -> dict:
    if isinstance(spec, Pure):
        return {"variant": "pure", "r": spec.r}
    return {
        "variant": "impure",
        "squeezing_db": spec.squeezing_db,
        "antisqueezing_db": spec.antisqueezing_db,
    }


def _scenario(args):
    if args.scenario == "error-free":
        return ErrorFree(args.theta_grid or DEFAULT_THETA_GRID)
    if args.scenario == "nonzero":
        return NonzeroError(args.t_grid or DEFAULT_T_GRID)
    return MixedState(args.t_grid or DEFAULT_T_GRID)


def _manifest(argv, args, spec, extra) -> dict:
    return {
        "argv": list(argv),
        "scenario": args.scenario,
        "spec": _spec_dict(spec),
        "seed": args.seed,
        "n_shots": args.shots,
        "repeats": args.repeats,
        "mode": args.mode,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        **extra,
    }


def _write(path: Path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_scan(args, spec, argv) -> list[Path]:
    scenario = _scenario(args)
    config = ScenarioConfig(
        scenario, spec=spec, n_shots=args.shots, seed=args.seed,
        mode=args.mode, repeats=args.repeats,
    )
    result = run(config, workers=args.workers)
    stem = args.out_dir / args.scenario
    files = [stem.with_suffix(".csv")]
    _write(files[0], report.scenario_csv(result))
    if args.svg:
        files.append(stem.with_suffix(".svg"))
        _write(files[-1], report.scenario_svg(result))
    extra = {
        "grid": list(scenario.grid),
        "parameter": scenario.parameter,
        "seeds": [list(s) for s in result.seeds],
        "deviations": "pre-loss signal" if args.scenario == "nonzero" else "state under test",
    }
    files.append(stem.with_suffix(".manifest.json"))
    _write(files[-1], report.manifest_json(_manifest(argv, args, spec, extra)))
    return files


cmd_error_free = cmd_nonzero = cmd_mixed = cmd_scan


def cmd_bounds(args, spec, argv) -> list[Path]:
    eps_grid = np.asarray(args.eps_a_grid) if args.eps_a_grid else None
    plane = assemble_bounds_plane(spec, eps_a_grid=eps_grid, t_grid=args.t_grid or DEFAULT_T_GRID)
    stem = args.out_dir / "bounds"
    files = [stem.with_suffix(".csv")]
    _write(files[0], report.bounds_csv(plane))
    if args.svg:
        files.append(stem.with_suffix(".svg"))
        _write(files[-1], report.bounds_svg(plane))
    extra = {"deviations": {k: list(v) for k, v in plane.deviations.items()}}
    files.append(stem.with_suffix(".manifest.json"))
    _write(files[-1], report.manifest_json(_manifest(argv, args, spec, extra)))
    return files


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.from_manifest is not None:
        try:
            recorded = json.loads(args.from_manifest.read_text())["argv"]
        except (OSError, KeyError, ValueError) as exc:
            print(f"cvtradeoff: cannot read manifest: {exc}", file=sys.stderr)
            return 2
        # Flags given alongside --from-manifest (e.g. --out-dir) override the recording.
        rest = [a for a in argv if a != "--from-manifest" and a != str(args.from_manifest)]
        argv = [a for a in recorded] + rest
        args = parser.parse_args(argv)
    try:
        if args.shots < 2:
            raise InvalidParameter("--shots must be >= 2")
        if args.repeats < 1:
            raise InvalidParameter("--repeats must be >= 1")
        spec = spec_from_args(args)
        args.out_dir.mkdir(parents=True, exist_ok=True)
        handler = cmd_bounds if args.scenario == "bounds" else cmd_scan
        files = handler(args, spec, argv)
    except (InvalidParameter, InvalidState, InvalidRegime, OSError) as exc:
        print(f"cvtradeoff: error: {exc}", file=sys.stderr)
        return 1
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
