"""Command-line front end.

Subcommands:

* ``qcc``         - the single-photon Cheshire cat weak values, with a
                    PASS/FAIL check against the exact 0/1 pattern.
* ``weakvalues``  - the eight two-photon arm/attribute weak values plus the
                    two per-photon complementarity sums.
* ``sweep``       - CSV/JSON table of the headline weak values and the D5
                    click probability over a grid of mixing angles.
* ``postselect``  - all six detector probabilities and the norm trace of
                    the verification network (built in, or from a circuit
                    file).
* ``parse``       - syntax-check a ``.circuit`` file.

Angles are radians and accept ``pi`` literals (``pi/4``); ``--degrees``
converts the numeric inputs instead.  Floats print with ten significant
digits, so identical invocations produce identical bytes.

Exit codes: 0 all checks pass, 1 numeric check or IO failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .angles import fmt, fmt_complex, parse_angle
from .cheshire_single import QCC_EXPECTED, qcc_weak_values
from .circuit_parser import ParseError, parse_circuit
from .optical_network import build_verification_circuit, simulate
from .qstate import ShapeError
from .weakvalue import WeakValueReport
from .wp_states import (
    DomainError,
    WpParams,
    make_preselected,
    observable_name,
    separation_weak_values,
)

CHECK_TOL = 1e-10

#: Detector probabilities below this are floating-point dust; print them as 0.
DISPLAY_FLOOR = 1e-12


def _clamp(p: float) -> float:
    return 0.0 if abs(p) < DISPLAY_FLOOR else p


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _params(args) -> WpParams:
    scale = math.pi / 180.0 if getattr(args, "degrees", False) else 1.0
    return WpParams(
        alpha=args.alpha * scale,
        phi1=getattr(args, "phi1", 0.0) * scale,
        phi1p=getattr(args, "phi1p", 0.0) * scale,
    )


# ---------------------------------------------------------------------------
# qcc


def cmd_qcc(args) -> int:
    reports = qcc_weak_values()
    ok = all(
        abs(r.value - QCC_EXPECTED[r.observable_name]) <= CHECK_TOL for r in reports
    )
    if args.format == "json":
        payload = {
            "values": {
                r.observable_name: [r.value.real, r.value.imag] for r in reports
            },
            "pass": ok,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["observable   weak_value                 expected"]
        for r in reports:
            lines.append(
                f"{r.observable_name:<12} {fmt_complex(r.value):<26} "
                f"{fmt(QCC_EXPECTED[r.observable_name])}"
            )
        lines.append("PASS" if ok else "FAIL")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# weakvalues


def _sums(reports: list[WeakValueReport]) -> tuple[complex, complex]:
    by_name = {r.observable_name: r.value for r in reports}
    sum1 = by_name[observable_name("P", "L1")] + by_name[observable_name("W", "R1")]
    sum2 = by_name[observable_name("Pp", "R2")] + by_name[observable_name("Wp", "L2")]
    return sum1, sum2


def cmd_weakvalues(args) -> int:
    try:
        params = _params(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports = separation_weak_values(params)
    sum1, sum2 = _sums(reports)
    ok = abs(sum1 - 1.0) <= CHECK_TOL and abs(sum2 - 1.0) <= CHECK_TOL
    if args.format == "json":
        payload = {
            "alpha": params.alpha,
            "values": {
                r.observable_name: [r.value.real, r.value.imag] for r in reports
            },
            "sum_photon1": [sum1.real, sum1.imag],
            "sum_photon2": [sum2.real, sum2.imag],
            "pass": ok,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"alpha = {fmt(params.alpha)}"]
        for r in reports:
            lines.append(f"{r.observable_name:<10} {fmt_complex(r.value)}")
        lines.append(f"sum_photon1 = {fmt(sum1.real)}")
        lines.append(f"sum_photon2 = {fmt(sum2.real)}")
        lines.append("PASS" if ok else "FAIL")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# sweep

SWEEP_HEADER = "alpha,wv_W_R1,wv_P_L1,wv_Wp_L2,wv_Pp_R2,sum_photon1,sum_photon2,p_D5"


def _sweep_rows(args):
    scale = math.pi / 180.0 if args.degrees else 1.0
    start, end = args.alpha_start * scale, args.alpha_end * scale
    for k in range(args.steps):
        alpha = start + (end - start) * k / (args.steps - 1)
        params = WpParams(alpha, args.phi1 * scale, args.phi1p * scale)
        reports = separation_weak_values(params)
        values = {r.observable_name: r.value for r in reports}
        sum1, sum2 = _sums(reports)
        result = simulate(
            build_verification_circuit(params), make_preselected(params, "mode")
        )
        yield {
            "alpha": alpha,
            "wv_W_R1": values[observable_name("W", "R1")].real,
            "wv_P_L1": values[observable_name("P", "L1")].real,
            "wv_Wp_L2": values[observable_name("Wp", "L2")].real,
            "wv_Pp_R2": values[observable_name("Pp", "R2")].real,
            "sum_photon1": sum1.real,
            "sum_photon2": sum2.real,
            "p_D5": result.detector_probs["D5"],
        }


def cmd_sweep(args) -> int:
    try:
        rows = list(_sweep_rows(args))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = [SWEEP_HEADER]
        keys = SWEEP_HEADER.split(",")
        for row in rows:
            lines.append(",".join(fmt(row[k]) for k in keys))
        text = "\n".join(lines) + "\n"
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# postselect


def cmd_postselect(args) -> int:
    try:
        params = _params(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.circuit:
        try:
            with open(args.circuit, "r", encoding="utf-8") as fh:
                doc = parse_circuit(fh.read(), source_name=args.circuit)
        except OSError as exc:
            print(f"error: cannot read {args.circuit!r}: {exc}", file=sys.stderr)
            return 1
        except ParseError as exc:
            print(f"{args.circuit}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
            return 2
        circuit = doc.to_circuit()
    else:
        circuit = build_verification_circuit(params)
    try:
        result = simulate(circuit, make_preselected(params, "mode"))
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        payload = {
            "detectors": {
                name: _clamp(p) for name, p in sorted(result.detector_probs.items())
            },
            "trace": [
                {"element": t.element, "norm_after": t.norm_after} for t in result.trace
            ],
            "surviving_state": result.surviving_state.to_json_dict(),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"{name} = {fmt(_clamp(p))}"
            for name, p in sorted(result.detector_probs.items())
        ]
        lines.append("trace:")
        lines.extend(
            f"  {t.element:<32} norm={fmt(t.norm_after)}" for t in result.trace
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# parse


def cmd_parse(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file!r}: {exc}", file=sys.stderr)
        return 1
    try:
        doc = parse_circuit(text, source_name=args.file)
    except ParseError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 2
    print(f"OK {args.file}: {len(doc.declarations)} spaces, {len(doc.element_lines)} elements")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheshire",
        description="Weak-value simulations of quantum Cheshire cat optics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, angles=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if angles:
            p.add_argument("--degrees", action="store_true",
                           help="interpret the numeric angle inputs as degrees")

    p = sub.add_parser("qcc", help="single-photon Cheshire cat check")
    add_common(p, angles=False)
    p.set_defaults(func=cmd_qcc)

    p = sub.add_parser("weakvalues", help="two-photon arm/attribute weak values")
    p.add_argument("--alpha", type=_angle, required=True, help="mixing angle in radians")
    p.add_argument("--phi1", type=_angle, default=0.0, help="photon-1 toolbox phase")
    p.add_argument("--phi1p", type=_angle, default=0.0, help="photon-2 toolbox phase")
    add_common(p)
    p.set_defaults(func=cmd_weakvalues)

    p = sub.add_parser("sweep", help="grid sweep over the mixing angle")
    p.add_argument("--alpha-start", type=_angle, default=0.0)
    p.add_argument("--alpha-end", type=_angle, default=math.pi / 2)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--phi1", type=_angle, default=0.0)
    p.add_argument("--phi1p", type=_angle, default=0.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("postselect", help="run the verification network")
    p.add_argument("--alpha", type=_angle, required=True)
    p.add_argument("--phi1", type=_angle, default=0.0)
    p.add_argument("--phi1p", type=_angle, default=0.0)
    p.add_argument("--circuit", default=None, help="optional .circuit file")
    add_common(p)
    p.set_defaults(func=cmd_postselect)

    p = sub.add_parser("parse", help="syntax-check a .circuit file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 2) < 2:
        parser.error("--steps must be at least 2")
    if getattr(args, "alpha_start", 0.0) >= getattr(args, "alpha_end", 1.0):
        parser.error("--alpha-start must be below --alpha-end")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
