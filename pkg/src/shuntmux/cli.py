"""Command-line entry point: ``shuntmux design|verify|decode|table|sweep``.

Exit codes: 0 ok/pass, 1 internal error, 2 infeasible design or failed
verification, 3 input error, 4 decode failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import designfile, tables
from .classes import ApplicationMode, ModeKind
from .designer import DesignRequest, design
from .designfile import DesignFile, InputError, ParamSpec
from .errors import DecodeError, EnumerationBoundError, Infeasible, NotSupported
from .units import format_number, parse_quantity
from .verifier import verify

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3
EXIT_DECODE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _quantity(unit, allow_inf=False):
    def convert(text):
        try:
            return parse_quantity(text, unit, allow_inf=allow_inf)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    convert.__name__ = unit
    return convert


def _add_params(p, ib_default=None):
    g = p.add_argument_group("circuit parameters")
    g.add_argument("--delta-r", type=_quantity("ohm"), help="resistance resolution (ohm)")
    g.add_argument("--delta-v", type=_quantity("volt"), help="voltage resolution (V)")
    g.add_argument("--ib", type=_quantity("ampere"), default=ib_default, help="bias current (A)")
    g.add_argument("--zo1", type=_quantity("ohm"), help="output impedance 1 (ohm)")
    g.add_argument("--zo2", type=_quantity("ohm", allow_inf=True), help="output impedance 2 (ohm, or inf)")
    g.add_argument("--y", type=_quantity("siemens"), help="effective bias/readout admittance (S)")
    g.add_argument("--yb", type=_quantity("siemens"), help="bias-source admittance (S)")


def _param_spec(args) -> ParamSpec | None:
    values = dict(
        delta_r_ohm=args.delta_r,
        delta_v_volt=args.delta_v,
        i_b_ampere=args.ib,
        z_o1_ohm=args.zo1,
        z_o2_ohm=args.zo2,
        y_siemens=args.y,
        y_b_siemens=args.yb,
    )
    if all(v is None for k, v in values.items() if k != "i_b_ampere"):
        return None
    if args.delta_v is not None and args.ib is None:
        raise InputError("--delta-v needs --ib to fix the resistance resolution")
    return ParamSpec(**values)


def _mode(args) -> ApplicationMode:
    if args.nc is not None and args.mode != "coincidence":
        raise InputError("--nc only applies to --mode coincidence")
    return ApplicationMode.parse(args.mode, args.nc)


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _read_design(path) -> DesignFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read design file: {exc}") from exc
    return designfile.parse(text)


def cmd_design(args) -> int:
    mode = _mode(args)
    spec = _param_spec(args)
    if spec is None:
        raise InputError("a resolution is required (--delta-r, or --delta-v with --ib)")
    delta_r, y = spec.design_inputs()
    if args.strict and mode.kind is ModeKind.PNR:
        print(
            "error: --strict is not available for pnr: the closed-form common shunt is "
            "not guaranteed to separate every count under loading; design without "
            "--strict and check it with `verify`",
            file=sys.stderr,
        )
        return EXIT_INPUT
    try:
        req = DesignRequest(mode, args.n, delta_r, y, args.rn)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = design(req)
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)

    doc = DesignFile(
        mode=mode.kind.value,
        n=args.n,
        n_c=mode.n_c,
        params=spec,
        r_n_ohm=args.rn,
        shunts_ohm=result.shunts,
    )
    if args.strict:
        report = verify(result.to_array(), spec.circuit(), mode)
        if not report.passed:
            print(
                f"error: design fails verification (min gap {report.min_inter_class_gap:.6g} V "
                f"< dV {report.delta_v:.6g} V)",
                file=sys.stderr,
            )
            return EXIT_INFEASIBLE
    if args.out:
        Path(args.out).write_text(designfile.render(doc), encoding="utf-8", newline="\n")

    if args.emit == "json":
        sys.stdout.write(designfile.render(doc))
    elif args.emit == "csv":
        lines = ["k,shunt_ohm,parallel_ohm"]
        lines += [f"{k},{format_number(r)},{format_number(p)}"
                  for k, (r, p) in enumerate(zip(result.shunts, result.parallels), start=1)]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        limit = "inf" if math.isinf(result.feasible_limit) else f"{result.feasible_limit:g}"
        rn = "inf" if math.isinf(args.rn) else f"{args.rn:g}"
        print(f"mode: {mode}  n: {args.n}  dR: {delta_r:g} ohm  Y: {y:g} S  R_N: {rn} ohm  m_L: {limit}")
        if mode.kind is ModeKind.PNR:
            print(f"common shunt r = {result.shunts[0]:.2f} ohm on all {args.n} detectors "
                  f"(parallel r_p = {result.parallels[0]:.2f} ohm)")
        else:
            print("k\tr_k (ohm)\tr_p,k (ohm)")
            for k, (r, p) in enumerate(zip(result.shunts, result.parallels), start=1):
                print(f"{k}\t{r:.2f}\t{p:.2f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _read_design(args.file)
    if args.n is not None and args.n != doc.n:
        raise InputError(f"--n {args.n} does not match the design file's n = {doc.n}")
    mode = doc.application_mode()
    if args.mode is not None and ApplicationMode.parse(args.mode, args.nc) != mode:
        raise InputError(f"--mode {args.mode} does not match the design file's mode {mode}")
    spec = _param_spec(args) or doc.params
    report = verify(doc.array(), spec.circuit(args.ib), mode)
    if args.emit == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    elif args.emit == "csv":
        lines = ["label,v_min_volt,v_max_volt,states"]
        lines += [f"{b.label},{format_number(b.v_min)},{format_number(b.v_max)},{b.size}" for b in report.bands]
        text = "\n".join(lines) + "\n"
    else:
        text = "\n".join(report.summary_lines()) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_INFEASIBLE


def cmd_decode(args) -> int:
    doc = _read_design(args.file)
    spec = _param_spec(args) or doc.params
    report = verify(doc.array(), spec.circuit(args.ib), doc.application_mode())
    try:
        result = report.decode(args.v)
    except DecodeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DECODE
    if args.emit == "json":
        text = json.dumps({"label": str(result.label), "margin_volt": result.margin}) + "\n"
    else:
        text = f"{result.label}\nmargin: {result.margin:.6g} V\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    which = args.which
    scenarios = tuple(args.scenario) if args.scenario else ("A", "B", "C")
    if args.emit == "json":
        text = json.dumps(tables.table_json(which, scenarios), indent=2) + "\n"
    elif args.emit == "csv":
        text = tables.render_table_csv(which, scenarios)
    else:
        text = tables.render_table_text(which, scenarios, all_rows=args.all_rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.k_min < 1 or args.k_max < args.k_min:
        raise InputError(f"invalid k range {args.k_min}..{args.k_max}")
    families = (args.mode,) if args.mode else tables.SWEEP_FAMILIES
    scenarios = ("ideal", "nonideal") if args.scenario == "both" else (args.scenario,)
    text = tables.render_sweep_csv(
        args.k_min, args.k_max,
        delta_r=args.delta_r, y=args.y, r_n=args.rn, n_c=args.nc,
        families=families, scenarios=scenarios,
    )
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shuntmux", description="Shunt-resistance design for series-multiplexed switching detectors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="compute an optimal shunt set")
    p.add_argument("--mode", required=True, choices=[m.value for m in ModeKind])
    p.add_argument("--n", type=int, required=True, help="number of detectors")
    p.add_argument("--nc", type=int, help="coincidence budget (coincidence mode, default 2)")
    _add_params(p)
    p.add_argument("--rn", type=_quantity("ohm", allow_inf=True), default=math.inf, help="normal resistance (ohm, or inf)")
    p.add_argument("--strict", action="store_true", help="fail unless the design verifies")
    p.add_argument("--emit", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out", help="write the design file (JSON) here")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("verify", help="exhaustively check a design file")
    p.add_argument("file")
    p.add_argument("--mode", choices=[m.value for m in ModeKind])
    p.add_argument("--n", type=int)
    p.add_argument("--nc", type=int)
    _add_params(p)
    p.add_argument("--emit", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="map a measured voltage to its class")
    p.add_argument("file")
    p.add_argument("--v", type=_quantity("volt"), required=True, help="measured output voltage")
    _add_params(p)
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("table", help="reference tables (1: pixel, 2: two-photon, 3: summary)")
    p.add_argument("which", type=int, choices=[1, 2, 3])
    p.add_argument("--scenario", action="append", choices=["A", "B", "C"],
                   help="A: y=0, R_N=inf; B: y=1/50 S, R_N=inf; C: y=1/50 S, R_N=1k (repeatable)")
    p.add_argument("--all-rows", action="store_true", help="print every row instead of the reference selection")
    p.add_argument("--emit", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="CSV of r_k against k for each design family")
    p.add_argument("--mode", choices=list(tables.SWEEP_FAMILIES))
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=24)
    p.add_argument("--nc", type=int, default=2)
    p.add_argument("--delta-r", type=_quantity("ohm"), default=tables.REFERENCE_DELTA_R)
    p.add_argument("--y", type=_quantity("siemens"), default=tables.REFERENCE_Y)
    p.add_argument("--rn", type=_quantity("ohm", allow_inf=True), default=tables.REFERENCE_RN)
    p.add_argument("--scenario", choices=["ideal", "nonideal", "both"], default="both")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Infeasible, NotSupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InputError, EnumerationBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
