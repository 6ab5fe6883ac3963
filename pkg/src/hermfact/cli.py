"""Command-line surface.

Exit codes are uniform across subcommands:
    0  the requested property holds (check passed, factor found, ...)
    1  a certified mathematical negative (witness emitted)
    2  input or usage error
    3  inconclusive up to the requested search bound

Reports are JSON on stdout, deterministic up to the "timings" field; sweep
additionally emits CSV.  Certificates can be mirrored to separate files with
--cert-dir, and `verify` re-checks any emitted artifact from its file alone.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import serialize
from .certify import ldl_signature
from .factor import difference_of_squares, holomorphic_factor, numeric_factor
from .hermform import coefficient_matrix
from .parsing import ParseError, parse_expression, parse_real_symbol, uses_real_variables
from .stabilize import find_minimal_d, multiplier_power, stabilization_sweep
from .symbols import certify_elliptic, certify_elliptic_form, format_diff_operator_row

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


class InputProblem(Exception):
    pass


def _read_input(args) -> str:
    if getattr(args, "expr", None):
        return args.expr
    if getattr(args, "input", None):
        path = Path(args.input)
        if not path.exists():
            raise InputProblem(f"input file not found: {path}")
        return path.read_text()
    raise InputProblem("provide an input file or --expr")


def _load_form(args):
    text = _read_input(args)
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            return serialize.obj_to_form(json.loads(text)), text
        return parse_expression(text, n=getattr(args, "n", None)), text
    except (ParseError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise InputProblem(str(exc)) from exc


def _emit(args, report: dict) -> None:
    body = serialize.pretty_json(report)
    sys.stdout.write(body)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(body)


def _mirror_certificates(args, report: dict) -> None:
    cert_dir = getattr(args, "cert_dir", None)
    if not cert_dir:
        return
    directory = Path(cert_dir)
    directory.mkdir(parents=True, exist_ok=True)
    count = 0
    stack = [report.get("result")]
    while stack:
        item = stack.pop()
        if isinstance(item, dict):
            if item.get("kind") in {
                "signature_certificate",
                "weighted_gram_factor",
                "stabilization_report",
                "ellipticity_report",
            }:
                digest = serialize.digest_of_obj(item)[7:19]
                name = f"{report['command'][0]}-{count:03d}-{digest}.json"
                (directory / name).write_text(serialize.pretty_json(item))
                count += 1
            if item.get("kind") != "stabilization_report":
                stack.extend(item.values())
        elif isinstance(item, list):
            stack.extend(item)


def _finish(args, command: list[str], input_text: str, verdicts: dict, result: dict,
            started: float) -> dict:
    report = {
        "kind": "run_report",
        "command": command,
        "input_digest": serialize.digest_of_text(input_text),
        "verdicts": verdicts,
        "result": result,
    }
    report["digest"] = serialize.digest_of_obj(report)
    report["timings"] = {"total_seconds": time.perf_counter() - started}
    _mirror_certificates(args, report)
    _emit(args, report)
    return report


def cmd_check(args) -> int:
    started = time.perf_counter()
    form, text = _load_form(args)
    try:
        matrix, basis = coefficient_matrix(form)
    except ValueError as exc:
        raise InputProblem(str(exc)) from exc
    cert = ldl_signature(matrix)
    passes = cert.is_positive_definite() if args.mode == "strict" else cert.is_positive_semidefinite()
    verdicts = {
        "mode": args.mode,
        "passes": passes,
        "inertia": {"pos": cert.n_pos, "neg": cert.n_neg, "zero": cert.n_zero},
        "matrix_size": matrix.size,
        "bidegree": basis.bidegree,
    }
    _finish(args, ["check", "--mode", args.mode], text, verdicts,
            {"certificate": serialize.certificate_to_obj(cert)}, started)
    return EXIT_PASS if passes else EXIT_FAIL


def cmd_stabilize(args) -> int:
    started = time.perf_counter()
    form, text = _load_form(args)
    try:
        report = find_minimal_d(form, args.mode, args.dmax)
    except ValueError as exc:
        raise InputProblem(str(exc)) from exc
    verdicts = {
        "mode": args.mode,
        "d_max": args.dmax,
        "d_min": report.d_min,
        "found": report.found(),
    }
    _finish(args, ["stabilize", "--mode", args.mode, "--dmax", str(args.dmax)], text,
            verdicts, {"stabilization": serialize.stabilization_to_obj(report)}, started)
    return EXIT_PASS if report.found() else EXIT_INCONCLUSIVE


def cmd_factor(args) -> int:
    started = time.perf_counter()
    form, text = _load_form(args)
    try:
        shifted = multiplier_power(form, args.d)
        matrix, _ = coefficient_matrix(shifted, mode="bidegree")
    except ValueError as exc:
        raise InputProblem(str(exc)) from exc
    cert = ldl_signature(matrix)
    factor = holomorphic_factor(shifted) if cert.is_positive_semidefinite() else None
    result: dict = {"certificate": serialize.certificate_to_obj(cert)}
    verdicts = {
        "d": args.d,
        "factorable": factor is not None,
        "rows": len(factor.matrix.rows) if factor is not None else 0,
    }
    if factor is not None:
        result["factor"] = serialize.factor_to_obj(factor)
        if args.numeric:
            numeric = numeric_factor(factor, args.float_digits)
            result["numeric_factor"] = {
                "kind": "numeric_factor",
                "float_digits": args.float_digits,
                "rows": [
                    [
                        {
                            "alpha": list(alpha),
                            "value": [coeff.real, coeff.imag],
                        }
                        for poly in row
                        for alpha, coeff in sorted(poly.items())
                    ]
                    for row in numeric.rows
                ],
            }
    _finish(args, ["factor", "--d", str(args.d)], text, verdicts, result, started)
    return EXIT_PASS if factor is not None else EXIT_FAIL


def _load_family(args) -> tuple[list[tuple[str, object]], str]:
    text = _read_input(args)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputProblem(f"family file is not valid JSON: {exc}") from exc
    members = data["members"] if isinstance(data, dict) else data
    if not isinstance(members, list):
        raise InputProblem("family file must be a list or a {'members': [...]} object")
    family = []
    for entry in members:
        label = entry.get("label")
        if label is None:
            raise InputProblem("each family member needs a label")
        try:
            if "expr" in entry:
                form = parse_expression(entry["expr"], n=entry.get("n") or getattr(args, "n", None))
            elif "form" in entry:
                form = serialize.obj_to_form(entry["form"])
            else:
                raise InputProblem(f"member {label!r} has neither 'expr' nor 'form'")
        except (ParseError, ValueError) as exc:
            raise InputProblem(f"member {label!r}: {exc}") from exc
        family.append((str(label), form))
    return family, text


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    family, text = _load_family(args)
    rows = stabilization_sweep(family, args.mode, args.dmax, workers=args.parallel)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["label", "d_min", "matrix_size_at_d_min", "elapsed_seconds"])
    table = []
    for row in rows:
        if row.error is not None:
            writer.writerow([row.label, "error", "", f"{row.elapsed:.6f}"])
            table.append({"label": row.label, "error": row.error})
        elif row.report.found():
            size = row.report.steps[-1].size
            writer.writerow([row.label, row.report.d_min, size, f"{row.elapsed:.6f}"])
            table.append(
                {
                    "label": row.label,
                    "d_min": row.report.d_min,
                    "stabilization": serialize.stabilization_to_obj(row.report),
                }
            )
        else:
            writer.writerow([row.label, "absent", "", f"{row.elapsed:.6f}"])
            table.append(
                {
                    "label": row.label,
                    "d_min": None,
                    "stabilization": serialize.stabilization_to_obj(row.report),
                }
            )
    csv_text = buffer.getvalue()
    sys.stdout.write(csv_text)
    if args.csv:
        Path(args.csv).write_text(csv_text)
    verdicts = {
        "mode": args.mode,
        "d_max": args.dmax,
        "rows": [
            {"label": r["label"], "d_min": r.get("d_min"), "error": r.get("error")}
            for r in table
        ],
    }
    report = {
        "kind": "run_report",
        "command": ["sweep", "--mode", args.mode, "--dmax", str(args.dmax)],
        "input_digest": serialize.digest_of_text(text),
        "verdicts": verdicts,
        "result": {"rows": table},
    }
    report["digest"] = serialize.digest_of_obj(report)
    report["timings"] = {"total_seconds": time.perf_counter() - started}
    _mirror_certificates(args, report)
    if args.out:
        Path(args.out).write_text(serialize.pretty_json(report))
    return EXIT_PASS


def cmd_symbol(args) -> int:
    started = time.perf_counter()
    text = _read_input(args)
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            form = serialize.obj_to_form(json.loads(text))
            report = certify_elliptic_form(form, args.dmax)
        elif uses_real_variables(text):
            symbol = parse_real_symbol(text, nvars=args.n)
            report = certify_elliptic(symbol, args.dmax)
        else:
            form = parse_expression(text, n=args.n)
            report = certify_elliptic_form(form, args.dmax)
    except (ParseError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise InputProblem(str(exc)) from exc
    if report.verdict == "certified":
        rows = len(report.factor.matrix.rows)
        summary = (
            f"elliptic: certified at exponent d={report.d}; the lifted symbol is a "
            f"squared norm of {rows} holomorphic differential operator rows"
        )
    elif report.verdict == "not_elliptic":
        reason = "exact zero" if report.witness_point is not None else "sign change"
        summary = f"not elliptic: {reason} of the symbol on the unit sphere"
    else:
        summary = f"not certified up to d={args.dmax}"
    verdicts = {
        "verdict": report.verdict,
        "d": report.d,
        "order": report.order,
        "complex_dim": report.complex_dim,
        "variety_condition": report.variety_condition,
        "summary": summary,
    }
    result = {"ellipticity": serialize.ellipticity_to_obj(report)}
    if report.factor is not None:
        result["operator_rows"] = [
            format_diff_operator_row(row, weight) for weight, row in report.factor.rows
        ]
    _finish(args, ["symbol", "--dmax", str(args.dmax)], text, verdicts, result, started)
    if report.verdict == "certified":
        return EXIT_PASS
    if report.verdict == "not_elliptic":
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def cmd_decompose(args) -> int:
    started = time.perf_counter()
    form, text = _load_form(args)
    try:
        positive, negative = difference_of_squares(form)
    except ValueError as exc:
        raise InputProblem(str(exc)) from exc
    verdicts = {
        "positive_rank": len(positive.matrix.rows),
        "negative_rank": len(negative.matrix.rows),
        "sum_of_squares": len(negative.matrix.rows) == 0,
    }
    result = {
        "positive": serialize.factor_to_obj(positive),
        "negative": serialize.factor_to_obj(negative),
    }
    _finish(args, ["decompose"], text, verdicts, result, started)
    return EXIT_PASS


def cmd_verify(args) -> int:
    path = Path(args.certificate)
    if not path.exists():
        sys.stderr.write(f"error: no such file: {path}\n")
        return EXIT_INPUT
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError:
        sys.stderr.write("error: not a JSON artifact\n")
        return EXIT_INPUT
    try:
        ok, reason = serialize.verify_obj(obj)
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    sys.stdout.write(json.dumps({"valid": ok, "reason": reason}) + "\n")
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermfact",
        description="Exact positivity certificates and holomorphic factorizations "
        "for Hermitian polynomial kernels.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_form=True):
        if with_form:
            p.add_argument("input", nargs="?", help="input file (expression text or JSON)")
            p.add_argument("-e", "--expr", help="inline expression")
            p.add_argument("--n", type=int, default=None, help="ambient dimension floor")
        p.add_argument("--out", help="also write the JSON report to this file")
        p.add_argument("--cert-dir", help="mirror emitted certificates into this directory")

    p = sub.add_parser("check", help="certify positive (semi)definiteness of a kernel")
    common(p)
    p.add_argument("--mode", choices=["strict", "semi"], default="semi")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stabilize", help="search the minimal norm-power exponent")
    common(p)
    p.add_argument("--mode", choices=["strict", "semi"], default="strict")
    p.add_argument("--dmax", type=int, default=16)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("factor", help="extract an exact weighted holomorphic factor")
    common(p)
    p.add_argument("--d", type=int, default=0, help="norm-power exponent applied first")
    p.add_argument("--numeric", action="store_true", help="also emit a floating factor")
    p.add_argument("--float-digits", type=int, default=12)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("sweep", help="run the exponent search over a family file")
    common(p)
    p.add_argument("--mode", choices=["strict", "semi"], default="strict")
    p.add_argument("--dmax", type=int, default=16)
    p.add_argument("--csv", help="also write the CSV table to this file")
    p.add_argument("--parallel", type=int, default=1, help="concurrent family entries")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("symbol", help="certify ellipticity of a constant-coefficient symbol")
    common(p)
    p.add_argument("--dmax", type=int, default=16)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("decompose", help="difference-of-squares decomposition")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-check a serialized certificate or report")
    p.add_argument("certificate", help="artifact JSON file")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputProblem as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
