"""Batch front end: JSON in, JSON/SVG out.

Symbol documents are plain JSON with complex numbers as [re, im] pairs::

    {"kind": "rational", "num": [[0,0],[0.5,0]], "den": [[1,0]]}

    {"kind": "boundary-data",
     "points": [{"zeta": [1,0], "value": [1,0], "d1": [0.5,0], "d2": [0,0]}],
     "denjoy_wolff": {"omega": [1,0], "derivative": [0.5,0],
                      "location": "boundary"}}

Exit codes: 0 success, 1 hard error (nothing written), 2 out-of-scope
rejection (a report with the rejection certificate is still emitted),
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra_lab import eigenvalues, run_checker, truncation_from_coeffs
from .config import Tolerances
from .errors import CompspecError, NotCertifiedError, NotInScopeError
from .mobius import SecondOrderData
from .render import region_svg
from .spectrum import (Disk, GeometricTail, Points, Spiral, SpectralRegion,
                       contains, probe_points, region, synthesize)
from .symbol import (BoundaryDataSymbol, DenjoyWolffRecord, Location,
                     RationalSymbol, certify_s2, classify_type,
                     contact_points, denjoy_wolff, essential_norm_sq,
                     second_order_data)

SCHEMA = "compspec/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2
EXIT_USAGE = 64


# ----------------------------------------------------------------------
# JSON plumbing
# ----------------------------------------------------------------------

def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _parse_c(v, path: str) -> complex:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or not all(isinstance(x, (int, float)) for x in v)):
        raise CompspecError(f"{path}: expected an [re, im] pair, got {v!r}")
    return complex(v[0], v[1])


def _parse_symbol(doc: dict, tol: Tolerances):
    if not isinstance(doc, dict):
        raise CompspecError("document root must be a JSON object")
    kind = doc.get("kind")
    if kind == "rational":
        for key in ("num", "den"):
            if not isinstance(doc.get(key), list):
                raise CompspecError(f"{key}: expected a list of [re, im] pairs")
        num = tuple(_parse_c(v, f"num[{i}]") for i, v in enumerate(doc["num"]))
        den = tuple(_parse_c(v, f"den[{i}]") for i, v in enumerate(doc["den"]))
        return RationalSymbol(num, den, tol=tol)
    if kind == "boundary-data":
        raw_pts = doc.get("points")
        if not isinstance(raw_pts, list) or not raw_pts:
            raise CompspecError("points: expected a nonempty list")
        pts = []
        for i, p in enumerate(raw_pts):
            pts.append(SecondOrderData(
                _parse_c(p.get("zeta"), f"points[{i}].zeta"),
                _parse_c(p.get("value"), f"points[{i}].value"),
                _parse_c(p.get("d1"), f"points[{i}].d1"),
                _parse_c(p.get("d2"), f"points[{i}].d2"),
                tol=tol))
        raw_dw = doc.get("denjoy_wolff")
        if not isinstance(raw_dw, dict):
            raise CompspecError("denjoy_wolff: expected an object")
        dw = DenjoyWolffRecord(
            _parse_c(raw_dw.get("omega"), "denjoy_wolff.omega"),
            _parse_c(raw_dw.get("derivative"), "denjoy_wolff.derivative"),
            Location(raw_dw.get("location", "boundary")),
            tol=tol)
        return BoundaryDataSymbol(tuple(pts), dw, tol=tol)
    raise CompspecError(
        f'kind: expected "rational" or "boundary-data", got {kind!r}')


def _primitive_json(p) -> dict:
    if isinstance(p, Disk):
        return {"disk": p.radius}
    if isinstance(p, Spiral):
        return {"spiral": _c(p.a)}
    if isinstance(p, Points):
        return {"points": [_c(v) for v in p.values]}
    if isinstance(p, GeometricTail):
        return {"tail": _c(p.base)}
    raise CompspecError(f"unknown primitive {p!r}")


def _region_json(r: SpectralRegion) -> list:
    return [_primitive_json(p) for p in r.primitives]


def _region_from_json(prims: list, tol: Tolerances) -> SpectralRegion:
    out = []
    for i, p in enumerate(prims):
        if not isinstance(p, dict) or len(p) != 1:
            raise CompspecError(f"primitives[{i}]: expected a one-key object")
        key, val = next(iter(p.items()))
        if key == "disk":
            out.append(Disk(float(val)))
        elif key == "spiral":
            out.append(Spiral(_parse_c(val, f"primitives[{i}].spiral")))
        elif key == "points":
            out.append(Points(tuple(_parse_c(v, f"primitives[{i}].points[{j}]")
                                    for j, v in enumerate(val))))
        elif key == "tail":
            out.append(GeometricTail(_parse_c(val, f"primitives[{i}].tail")))
        else:
            raise CompspecError(f"primitives[{i}]: unknown primitive {key!r}")
    return region(*out, tol=tol)


def _cert_json(cert) -> dict:
    return {
        "accepted": cert.accepted,
        "checks": [{"zeta": _c(c.zeta), "margin": c.margin,
                    "order_two": c.order_two,
                    "multiplicity": c.multiplicity,
                    "ok": c.ok, "note": c.note} for c in cert.checks],
        "notes": list(cert.notes),
    }


def _partition_json(part) -> dict:
    return {
        "iterate_out": [_c(p) for p in part.iterate_out],
        "cycles": [{"points": [_c(p) for p in c.points],
                    "multiplier": c.multiplier} for c in part.cycles],
        "lead_ins": {str(k): [_c(p) for p in v]
                     for k, v in sorted(part.lead_ins.items())},
    }


def _dw_json(dw: DenjoyWolffRecord) -> dict:
    return {"omega": _c(dw.omega), "derivative": _c(dw.derivative),
            "location": dw.location.value}


def _emit(doc: dict, out_path: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _region_distance(r: SpectralRegion, lam: complex) -> float:
    if contains(r, lam):
        return 0.0
    best = float("inf")
    for p in r.primitives:
        if isinstance(p, Disk):
            best = min(best, max(0.0, abs(lam) - p.radius))
    probes = probe_points(r)
    if probes.size:
        best = min(best, float(np.min(np.abs(probes - lam))))
    return best


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _load_doc(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CompspecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CompspecError(f"{path} is not valid JSON: {exc}") from exc


def _tolerances(args) -> Tolerances:
    return Tolerances(eps=args.tol, match_tol=args.match_tol)


def _rejection_doc(doc, reason: str, cert=None) -> dict:
    out = {"schema": SCHEMA, "input": doc, "accepted": False,
           "reason": reason}
    if cert is not None:
        out["certification"] = _cert_json(cert)
    return out


def _full_report(doc, s) -> dict:
    cert = certify_s2(s)
    if not cert.accepted:
        raise NotCertifiedError("order-2 certification failed")
    report = synthesize(s)
    return {
        "schema": SCHEMA,
        "input": doc,
        "accepted": True,
        "certification": _cert_json(cert),
        "denjoy_wolff": _dw_json(report.dw),
        "type_class": report.type_class.value,
        "partition": _partition_json(report.partition),
        "rho": report.rho,
        "essential": _region_json(report.essential),
        "full": _region_json(report.full),
        "essential_norm_sq": essential_norm_sq(s),
        "diagnostics": {"notes": list(report.notes)},
    }


def cmd_analyze(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    try:
        s = _parse_symbol(doc, tol)
    except NotInScopeError as exc:
        _emit(_rejection_doc(doc, str(exc)), args.out)
        return EXIT_REJECTED
    try:
        out = _full_report(doc, s)
    except (NotInScopeError, NotCertifiedError) as exc:
        cert = None
        try:
            cert = certify_s2(s)
        except CompspecError:
            pass
        _emit(_rejection_doc(doc, str(exc), cert), args.out)
        return EXIT_REJECTED
    _emit(out, args.out)
    if args.svg:
        r = _region_from_json(out["full"], tol)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(region_svg(r, title="spectrum"))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    try:
        s = _parse_symbol(doc, tol)
        report = synthesize(s)
    except (NotInScopeError, NotCertifiedError) as exc:
        _emit(_rejection_doc(doc, str(exc)), args.out)
        return EXIT_REJECTED
    out = {"schema": SCHEMA, "accepted": True, "rho": report.rho,
           "essential": _region_json(report.essential),
           "full": _region_json(report.full)}
    _emit(out, args.out)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(region_svg(report.full, title="spectrum"))
    return EXIT_OK


def cmd_classify(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    try:
        s = _parse_symbol(doc, tol)
    except NotInScopeError as exc:
        _emit(_rejection_doc(doc, str(exc)), args.out)
        return EXIT_REJECTED
    dw = denjoy_wolff(s)
    if dw.location is Location.BOUNDARY and abs(dw.derivative.real - 1.0) <= tol.eps:
        tclass = classify_type(dw, second_order_data(s, dw.omega))
    else:
        tclass = classify_type(dw)
    _emit({"schema": SCHEMA, "denjoy_wolff": _dw_json(dw),
           "type_class": tclass.value}, args.out)
    return EXIT_OK


def cmd_boundary(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    try:
        s = _parse_symbol(doc, tol)
    except NotInScopeError as exc:
        _emit(_rejection_doc(doc, str(exc)), args.out)
        return EXIT_REJECTED
    pts = []
    for cp in contact_points(s):
        data = second_order_data(s, cp.zeta)
        pts.append({"zeta": _c(data.zeta), "value": _c(data.value),
                    "d1": _c(data.d1), "d2": _c(data.d2),
                    "multiplicity": cp.multiplicity,
                    "contact_margin": data.contact_margin()})
    _emit({"schema": SCHEMA, "contact_set": pts,
           "certification": _cert_json(certify_s2(s))}, args.out)
    return EXIT_OK


def cmd_lemma_check(args) -> int:
    ok, failing = run_checker(args.lemma, args.n, args.order, args.trials,
                              args.seed)
    out = {"schema": SCHEMA, "lemma": args.lemma, "n": args.n,
           "order": args.order, "trials": args.trials, "seed": args.seed,
           "passed": ok, "failing_seeds": failing}
    _emit(out, args.out)
    return EXIT_OK if ok else EXIT_ERROR


def cmd_truncate(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    if doc.get("kind") != "rational":
        raise CompspecError("truncate needs a rational symbol document")
    num = [_parse_c(v, f"num[{i}]") for i, v in enumerate(doc["num"])]
    den = [_parse_c(v, f"den[{i}]") for i, v in enumerate(doc["den"])]
    mat = truncation_from_coeffs(num, den, args.order)
    vals = sorted(eigenvalues(mat), key=lambda z: (-abs(z), z.real, z.imag))
    out = {"schema": SCHEMA, "order": args.order,
           "eigenvalues": [_c(v) for v in vals]}
    try:
        s = RationalSymbol(tuple(num), tuple(den), tol=tol)
        report = synthesize(s)
        out["predicted_full"] = _region_json(report.full)
        out["distances"] = [_region_distance(report.full, v) for v in vals]
    except CompspecError as exc:
        out["diagnostics"] = {"no_prediction": str(exc)}
    _emit(out, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _load_doc(args.input)
    tol = _tolerances(args)
    prims = doc.get("full", doc.get("essential"))
    if prims is None:
        raise CompspecError(
            "report document has neither a 'full' nor an 'essential' region")
    r = _region_from_json(prims, tol)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(region_svg(r, title="spectrum"))
    return EXIT_OK


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_common(p, svg=False):
    p.add_argument("--tol", type=float, default=1e-9,
                   help="numerical tolerance (default 1e-9)")
    p.add_argument("--match-tol", type=float, default=1e-7,
                   help="point-matching tolerance (default 1e-7)")
    p.add_argument("--out", default=None, help="write JSON here, not stdout")
    if svg:
        p.add_argument("--svg", default=None, help="also write an SVG plot")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compspec",
                     description="spectra of composition operators with "
                                 "order-2 boundary contact symbols")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full pipeline report")
    p.add_argument("input", help="symbol document (JSON)")
    _add_common(p, svg=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("spectrum", help="spectral regions only")
    p.add_argument("input")
    _add_common(p, svg=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("classify", help="Denjoy-Wolff point and type class")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("boundary", help="contact set and second-order data")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("lemma-check", help="run a seeded lemma suite")
    p.add_argument("--lemma", required=True,
                   choices=["fl", "flc", "ta", "cta", "lip", "n2c", "rsm"])
    p.add_argument("--n", type=int, default=3,
                   help="family size (patterns with a fixed size ignore it)")
    p.add_argument("--order", type=int, default=12, help="matrix order")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("truncate",
                       help="eigenvalues of the N x N truncation")
    p.add_argument("input")
    p.add_argument("--order", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("render", help="SVG plot from a report document")
    p.add_argument("input", help="report document (JSON)")
    p.add_argument("--svg", required=True, help="output SVG path")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--match-tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "lemma-check":
            bad = (args.n < 2 or args.order < 1 or args.trials < 1
                   or args.seed < 0)
            if bad:
                sys.stderr.write("error: invalid lemma-check flag ranges\n")
                return EXIT_USAGE
        return args.func(args)
    except CompspecError as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
