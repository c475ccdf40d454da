"""Command line front end.

Subcommands:
    respond   amplitudes + waveforms at one pulse duration
    sweep     duration sweep -> CSV table
    peak      refine the photon-transfer maximum -> JSON record
    modes     export the two output mode waveforms -> CSV

Exit codes: 0 success, 2 configuration error, 3 solver error, 4 no peak
in bracket. All files are written atomically (temp file + rename) and
with 17 significant digits, so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterable, Optional

from .errors import ConfigError, NoPeakError, PulseGateError, SolverError
from .pulses import DEFAULT_POLICY, GridPolicy, PulseShape, PulseSpec
from .signal import ComplexSignal
from .sweep import (DEFAULT_SWEEP_POINTS, DEFAULT_SWEEP_RANGE, PointSolution,
                    SweepRow, find_peak_c12, solve_spec, solve_point, sweep)

SWEEP_HEADER = "gamma_t,c11_re,c11_im,c11_sq,c12_sq,cr_sq,overlap_re,overlap_im"

BUILTIN_SHAPES = [s.value for s in PulseShape if s is not PulseShape.CUSTOM]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header: str, rows: Iterable[Iterable[float]]) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _signal_columns(sig: Optional[ComplexSignal], n: int, stride: int):
    if sig is None:
        import numpy as np
        z = np.zeros(n)[::stride]
        return z, z
    v = sig.values[::stride]
    return v.real, v.imag


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--points-per-unit", type=int, default=DEFAULT_POLICY.samples_per_unit,
                   help="samples per min(T, 3/Gamma) of pulse duration "
                        f"(default {DEFAULT_POLICY.samples_per_unit})")
    p.add_argument("--tail", type=float, default=DEFAULT_POLICY.tail,
                   help=f"grid extent past the pulse, units 1/Gamma (default {DEFAULT_POLICY.tail})")
    p.add_argument("--lead-pad", type=float, default=DEFAULT_POLICY.lead_pad,
                   help=f"grid extent before the pulse (default {DEFAULT_POLICY.lead_pad})")


def _add_shape_flags(p: argparse.ArgumentParser, with_gamma_t: bool) -> None:
    p.add_argument("--shape", required=True, choices=BUILTIN_SHAPES + ["custom"],
                   help="input pulse family")
    p.add_argument("--pulse-file", type=Path, default=None,
                   help="sampled waveform for --shape custom: one sample per line, "
                        "columns t,value or t,re,im, ascending t")
    if with_gamma_t:
        p.add_argument("--gamma-t", type=float, default=None,
                       help="pulse duration in units 1/Gamma (built-in shapes)")


def _policy_from(args) -> GridPolicy:
    return GridPolicy(samples_per_unit=args.points_per_unit,
                      tail=args.tail, lead_pad=args.lead_pad)


def _solution_from(args) -> PointSolution:
    policy = _policy_from(args)
    if args.shape == "custom":
        if args.pulse_file is None:
            raise ConfigError("--shape custom requires --pulse-file")
        if getattr(args, "gamma_t", None) is not None:
            raise ConfigError("--gamma-t does not apply to custom pulses; "
                              "the file carries its own time axis")
        return solve_spec(PulseSpec.from_file(args.pulse_file), policy)
    if args.pulse_file is not None:
        raise ConfigError("--pulse-file only applies to --shape custom")
    if getattr(args, "gamma_t", None) is None:
        raise ConfigError(f"--gamma-t is required for --shape {args.shape}")
    return solve_point(args.shape, args.gamma_t, policy)


def _summary_dict(sol: PointSolution) -> dict:
    d = sol.decomposition
    lim = sol.limit
    return {
        "shape": sol.spec.shape.value,
        "gamma_t": sol.gamma_t,
        "c11_re": d.c11.real, "c11_im": d.c11.imag,
        "c11_sq": d.c11_sq, "c12_sq": d.c12_sq, "cr_sq": d.cr_sq,
        "overlap_re": d.overlap.real, "overlap_im": d.overlap.imag,
        "circle_margin": lim.circle_margin,
        "reduction_margin": lim.reduction_margin,
        "circle_ok": lim.circle_ok, "reduction_ok": lim.reduction_ok,
    }


def _json_text(record: dict) -> str:
    def enc(x):
        return _fmt(x) if isinstance(x, float) else x
    return json.dumps({k: enc(v) for k, v in record.items()}, indent=2) + "\n"


def cmd_respond(args) -> int:
    sol = _solution_from(args)
    out = Path(args.out) if args.out else Path(f"respond_{args.shape}")
    stride = max(1, args.stride)
    cols = [sol.grid.times()[::stride]]
    for sig in (sol.b_in, sol.pair.linear, sol.pair.cubic,
                sol.decomposition.psi1, sol.decomposition.psi2):
        cols.extend(_signal_columns(sig, sol.grid.n, stride))
    header = ("t,b_in_re,b_in_im,b1_re,b1_im,b3_re,b3_im,"
              "psi1_re,psi1_im,psi2_re,psi2_im")
    _write_atomic(out.with_suffix(".signals.csv"), _csv(header, zip(*cols)))
    record = _summary_dict(sol)
    if args.format == "json":
        _write_atomic(out.with_suffix(".summary.json"), _json_text(record))
    else:
        row = ",".join(str(v) if isinstance(v, (str, bool)) else _fmt(v)
                       for v in record.values())
        _write_atomic(out.with_suffix(".summary.csv"),
                      ",".join(record) + "\n" + row + "\n")
    print(_json_text(record), end="")
    return 0


def cmd_sweep(args) -> int:
    rows = sweep(args.shape, args.gt_min, args.gt_max, args.num,
                 log_spaced=not args.linear, policy=_policy_from(args),
                 workers=max(1, args.workers))
    out = Path(args.out) if args.out else Path(f"sweep_{args.shape}.csv")
    _write_atomic(out, _csv(SWEEP_HEADER, (
        (r.gamma_t, r.c11_re, r.c11_im, r.c11_sq, r.c12_sq, r.cr_sq,
         r.overlap_re, r.overlap_im) for r in rows)))
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_peak(args) -> int:
    res = find_peak_c12(args.shape, (args.gt_min, args.gt_max),
                        policy=_policy_from(args))
    record = {"shape": res.shape.value,
              "gamma_t_star": res.gamma_t_star,
              "c12_sq_star": res.c12_sq_star,
              "c11_at_peak_re": res.c11_at_peak.real,
              "c11_at_peak_im": res.c11_at_peak.imag}
    text = _json_text(record)
    if args.out:
        _write_atomic(Path(args.out), text)
    print(text, end="")
    return 0


def cmd_modes(args) -> int:
    sol = _solution_from(args)
    dec = sol.decomposition
    if dec.psi2 is None:
        raise SolverError(f"photon transfer negligible at gamma_t={sol.gamma_t:g}; "
                          "no orthogonal mode to export")
    out = Path(args.out) if args.out else Path(f"modes_{args.shape}.csv")
    stride = max(1, args.stride)
    t = sol.grid.times()[::stride]
    p1, p2 = dec.psi1.values[::stride], dec.psi2.values[::stride]
    _write_atomic(out, _csv("t,psi1_re,psi1_im,psi2_re,psi2_im",
                            zip(t, p1.real, p1.imag, p2.real, p2.imag)))
    print(f"wrote {len(t)} rows to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsegate",
        description="Two-photon gate amplitudes of a resonantly driven "
                    "two-level nonlinearity, from semiclassical pulse response.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("respond", help="single-duration response and summary")
    _add_shape_flags(p, with_gamma_t=True)
    _add_grid_flags(p)
    p.add_argument("--out", help="output prefix (writes <out>.signals.csv and summary)")
    p.add_argument("--format", choices=["json", "csv"], default="json",
                   help="summary file format (default json)")
    p.add_argument("--stride", type=int, default=1,
                   help="write every N-th sample of the waveforms")
    p.set_defaults(func=cmd_respond)

    p = sub.add_parser("sweep", help="duration sweep to CSV")
    p.add_argument("--shape", required=True, choices=BUILTIN_SHAPES)
    p.add_argument("--from", dest="gt_min", type=float, default=DEFAULT_SWEEP_RANGE[0],
                   help=f"smallest gamma_t (default {DEFAULT_SWEEP_RANGE[0]})")
    p.add_argument("--to", dest="gt_max", type=float, default=DEFAULT_SWEEP_RANGE[1],
                   help=f"largest gamma_t (default {DEFAULT_SWEEP_RANGE[1]})")
    p.add_argument("--num", type=int, default=DEFAULT_SWEEP_POINTS,
                   help=f"number of points (default {DEFAULT_SWEEP_POINTS})")
    p.add_argument("--linear", action="store_true", help="linear instead of log spacing")
    p.add_argument("--workers", type=int, default=1,
                   help="evaluate sweep points in this many processes; "
                        "output is identical regardless (default 1)")
    _add_grid_flags(p)
    p.add_argument("--out", help="CSV path (default sweep_<shape>.csv)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("peak", help="refine the c12_sq maximum")
    p.add_argument("--shape", required=True, choices=BUILTIN_SHAPES)
    p.add_argument("--from", dest="gt_min", type=float, default=0.1,
                   help="bracket lower edge (default 0.1)")
    p.add_argument("--to", dest="gt_max", type=float, default=20.0,
                   help="bracket upper edge (default 20)")
    _add_grid_flags(p)
    p.add_argument("--out", help="optional JSON output path")
    p.set_defaults(func=cmd_peak)

    p = sub.add_parser("modes", help="export psi1/psi2 waveforms")
    _add_shape_flags(p, with_gamma_t=True)
    _add_grid_flags(p)
    p.add_argument("--out", help="CSV path (default modes_<shape>.csv)")
    p.add_argument("--stride", type=int, default=1,
                   help="write every N-th sample")
    p.set_defaults(func=cmd_modes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoPeakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PulseGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
