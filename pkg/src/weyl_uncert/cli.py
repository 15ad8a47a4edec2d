"""Command-line front end: verification suites, scans, extrema, figure
datasets and qubit reports, emitting CSV or a versioned JSON envelope.

Exit codes: 0 success, 1 violated invariant (verify), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import analysis, families, fock, spin, verify
from .analysis import ExtremumResult, ScanTable

CSV_HEADER = "param,U,Uprime,Udoubleprime,V,absPhi,absPhiTilde,absOmega,Pik,nbar"

_QUBIT_CROSS_NOTE = (
    "cross_char follows the operator definition tr(rho clock^-ell shift^k), which is "
    "i*s_y at k=ell=1; the product form i*s_x*s_y*s_z sometimes quoted for this "
    "quantity differs for generic Bloch vectors and is reported only for reference."
)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".weyl-uncert-")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _envelope(command: str, parameters: dict, payload: dict, notes: list[str] | None = None) -> str:
    doc = {"schema_version": "1", "command": command, "parameters": parameters}
    doc.update(payload)
    doc["notes"] = notes or []
    return json.dumps(doc, indent=2) + "\n"


def _row_values(row: analysis.ScanRow) -> tuple[float, ...]:
    return (
        row.param,
        row.u,
        row.u_prime,
        row.u_double_prime,
        row.v,
        row.abs_number_char,
        row.abs_phase_char,
        row.abs_cross_char,
        row.pi_k,
        row.nbar,
    )


def _table_csv(table: ScanTable) -> str:
    lines = [CSV_HEADER]
    lines.extend(",".join(_fmt(v) for v in _row_values(r)) for r in table.rows)
    return "\n".join(lines) + "\n"


def _table_rows(table: ScanTable) -> list[dict]:
    names = CSV_HEADER.split(",")
    return [dict(zip(names, _row_values(r))) for r in table.rows]


def _emit_table(args, command: str, parameters: dict, table: ScanTable) -> None:
    if args.format == "csv":
        _write_text(args.out, _table_csv(table))
    else:
        parameters = dict(parameters)
        parameters["swept_parameter"] = table.swept_parameter
        _write_text(args.out, _envelope(command, parameters, {"rows": _table_rows(table)}))


def _resolve_phi(phi_over_pi: float | None, k: int) -> tuple[float, float]:
    x = phi_over_pi if phi_over_pi is not None else 1.0 / k
    return x, x * math.pi


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify(args) -> int:
    results = verify.run(args.suite, args.samples, args.seed)
    failed = False
    for res in results:
        status = "ok" if res.passed else "FAILED"
        print(f"{res.name}: {res.checks} checks, {len(res.failures)} failures [{status}]")
        for key, value in sorted(res.stats.items()):
            print(f"  {key} = {_fmt(value)}")
        for message in res.failures:
            failed = True
            print(f"  FAIL: {message}")
    return 1 if failed else 0


def _cmd_scan(args) -> int:
    spec = families.parse_spec(args.family)
    x, phi = _resolve_phi(args.phi_over_pi, args.k)
    table = analysis.scan(
        spec, args.param, args.lo, args.hi, args.steps, args.k, phi, log_spaced=args.log_spaced
    )
    parameters = {
        "family": args.family,
        "param": args.param,
        "from": args.lo,
        "to": args.hi,
        "steps": args.steps,
        "k": args.k,
        "phi_over_pi": x,
        "log_spaced": args.log_spaced,
    }
    _emit_table(args, "scan", parameters, table)
    return 0


def _cmd_figure(args) -> int:
    table = analysis.figure_dataset(args.id)
    _emit_table(args, "figure", {"id": args.id}, table)
    return 0


def _cmd_extremum(args) -> int:
    spec = families.parse_spec(args.family)
    x, phi = _resolve_phi(args.phi_over_pi, args.k)
    res: ExtremumResult = analysis.find_extremum(
        spec, args.param, args.functional, args.kind, args.lo, args.hi, args.k, phi
    )
    parameters = {
        "family": args.family,
        "param": args.param,
        "functional": args.functional,
        "kind": args.kind,
        "from": args.lo,
        "to": args.hi,
        "k": args.k,
        "phi_over_pi": x,
    }
    payload = {
        "result": {
            "param": res.param,
            "value": res.value,
            "kind": res.kind,
            "functional": res.functional,
            "bracket": list(res.bracket),
            "iterations": res.iterations,
            "boundary": res.boundary,
        }
    }
    _write_text(args.out, _envelope("extremum", parameters, payload))
    return 0


def _cmd_qubit(args) -> int:
    s = np.array([args.sx, args.sy, args.sz], dtype=float)
    if float(np.linalg.norm(s)) > 1.0 + 1e-12:
        print(f"error: Bloch vector must satisfy |s| <= 1, got |s| = {np.linalg.norm(s)!r}",
              file=sys.stderr)
        return 2
    cs = spin.qubit_char(s, args.k, args.ell)
    gamma = spin.weyl_angle(spin.SpinSystem(2), args.k, args.ell)
    bound = spin.certainty_bound(gamma)
    ap, pp, cp = abs(cs.number_char), abs(cs.phase_char), abs(cs.cross_char)
    u = ap * ap + pp * pp
    product_form = 1j * args.sx * args.sy * args.sz
    payload = {
        "report": {
            "number_char": [cs.number_char.real, cs.number_char.imag],
            "phase_char": [cs.phase_char.real, cs.phase_char.imag],
            "cross_char": [cs.cross_char.real, cs.cross_char.imag],
            "cross_char_product_form": [product_form.real, product_form.imag],
            "gamma": gamma,
            "bound": bound,
            "U": u,
            "Uprime": u + cp * cp,
            "V": ap * pp,
            "sum_relation_product_form": u + abs(product_form) ** 2,
        }
    }
    parameters = {"sx": args.sx, "sy": args.sy, "sz": args.sz, "k": args.k, "ell": args.ell}
    _write_text(args.out, _envelope("qubit", parameters, payload, notes=[_QUBIT_CROSS_NOTE]))
    return 0


# ---------------------------------------------------------------------------
# parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_range_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, help="family spec, e.g. phase-coherent:xi=0.49")
    p.add_argument("--param", required=True, help="swept parameter name")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--phi-over-pi", type=float, default=None,
                   help="phase in units of pi (default 1/k, so k*phi = pi)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weyl-uncert",
        description="Certainty relations for phase-number variables from Weyl "
        "commutation relations.",
        epilog="Family specs are 'tag:key=value,...' with no spaces; tags: "
        "number (n), phase-coherent (xi), gaussian (nbar, a, b), bessel (lambda), "
        "intermediate (alpha2, n, xi).  The truncation cap (default "
        f"{families.DEFAULT_TRUNCATION_CAP}) can be overridden via "
        f"{families.TRUNCATION_CAP_ENV}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run randomized property suites")
    p.add_argument("--suite", choices=("spin", "fock", "families", "all"), required=True)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="sweep a family parameter and tabulate functionals")
    _add_range_args(p)
    p.add_argument("--steps", type=_positive_int, required=True)
    p.add_argument("--log-spaced", action="store_true")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("figure", help="write one of the standard figure datasets")
    p.add_argument("--id", type=int, choices=analysis.FIGURE_IDS, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("extremum", help="locate a functional extremum over a parameter range")
    _add_range_args(p)
    p.add_argument("--functional", choices=analysis.FUNCTIONALS, required=True)
    p.add_argument("--kind", choices=("min", "max"), required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_extremum)

    p = sub.add_parser("qubit", help="report the qubit characteristic set and relations")
    p.add_argument("--sx", type=float, default=0.0)
    p.add_argument("--sy", type=float, default=0.0)
    p.add_argument("--sz", type=float, default=0.0)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--ell", type=_positive_int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_qubit)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except families.FamilySpecError as err:
        print(f"error: invalid family spec: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
