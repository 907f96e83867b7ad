"""Command-line front end with machine-readable JSON output.

Exit codes: 0 for CERTIFIED_YES/true, 1 for CERTIFIED_NO/false, 2 for
UNKNOWN, 3 for usage or input errors.  Identical invocations with the same
seed produce byte-identical JSON when --no-timings is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from . import corpus, detrep, soscert
from .hypercone import (
    HyperbolicityInstance,
    SampleConfig,
    check_hyperbolic,
    cone_membership,
    interlaces,
    wronskian_delta,
)
from .polycore import Polynomial, PolyParseError, default_names, format_poly, parse_poly
from .verdicts import Status, Verdict, to_jsonable


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read_poly_text(source: str) -> str:
    if source.startswith("@"):
        with open(source[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return source


def _parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise _UsageError(f"bad vector {text!r}: {exc}") from exc


def _load_poly(args) -> tuple[Polynomial, list[str]]:
    if args.poly is None:
        raise _UsageError("--poly is required")
    if args.vars is None:
        raise _UsageError("--vars is required")
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    poly = parse_poly(_read_poly_text(args.poly), names)
    return poly, names


def _sample_config(args) -> SampleConfig:
    return SampleConfig(trials=args.trials, seed=args.seed, coordinate_bound=args.bound)


def _sdp_settings(args) -> soscert.SdpSettings:
    return soscert.SdpSettings(feasibility_tolerance=args.tolerance, random_seed=args.seed)


def _verdict_exit(v: Verdict) -> int:
    return {Status.CERTIFIED_YES: 0, Status.CERTIFIED_NO: 1, Status.UNKNOWN: 2}[v.status]


def _emit(payload: dict, args, started: float) -> None:
    if not args.no_timings:
        payload["timings"] = {"seconds": round(time.time() - started, 6)}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        _emit_text(payload)


def _emit_text(payload: dict, indent: str = "") -> None:
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _emit_text(value, indent + "  ")
        else:
            print(f"{indent}{key}: {value}")


def _add_common(p: argparse.ArgumentParser, poly: bool = True) -> None:
    if poly:
        p.add_argument("--poly", help="polynomial text, or @file")
        p.add_argument("--vars", help="comma-separated variable names, e.g. x,y,z")
    p.add_argument("--e", dest="e", help="distinguished direction, e.g. 1,0,0")
    p.add_argument("--a", dest="a", help="query point/direction, e.g. 2,1,0")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--bound", type=int, default=10, help="sampling coordinate bound")
    p.add_argument("--sos-budget", type=int, default=2, help="max denominator power N")
    p.add_argument("--tolerance", type=float, default=1e-9, help="SDP feasibility tolerance")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--no-timings", action="store_true")
    p.add_argument("--cert-out", help="write the certificate/report JSON to this file")


def build_parser() -> _Parser:
    ap = _Parser(prog="hypersos", description="exact certificates for hyperbolic polynomials")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-hyperbolic", help="sampled hyperbolicity test")
    _add_common(p)

    p = sub.add_parser("cone-member", help="exact hyperbolicity-cone membership")
    _add_common(p)
    p.add_argument("--closure", action="store_true", help="test the closed cone")

    p = sub.add_parser("interlaces", help="does g interlace f with respect to e")
    _add_common(p)
    p.add_argument("--g", dest="g", help="candidate interlacer polynomial")
    p.add_argument("--strict", action="store_true", help="also sample strict interlacing")

    p = sub.add_parser("delta", help="mixed Wronskian of f at directions e, a")
    _add_common(p)

    p = sub.add_parser("sos-certify", help="exact SOS certificate for a form")
    _add_common(p)

    p = sub.add_parser("sos-cone-member", help="SOS inner relaxation of cone membership")
    _add_common(p)

    p = sub.add_parser("detrep-build", help="definite determinantal representation builder")
    _add_common(p)
    p.add_argument("--dvars", help="comma-separated names of the affine variables")

    p = sub.add_parser("detrep-verify", help="verify a representation against f")
    _add_common(p)
    p.add_argument("--rep", help="representation JSON, or @file")

    p = sub.add_parser("stable-check", help="multiaffine stability test")
    _add_common(p)

    p = sub.add_parser("vamos-repro", help="reproduce the Vamos non-SOS certificate")
    _add_common(p, poly=False)

    p = sub.add_parser("gen", help="emit a named polynomial family")
    p.add_argument("family", choices=(
        "product", "lorentz", "elementary-symmetric", "sym-det", "cubic-example", "vamos",
    ))
    p.add_argument("--n", type=int, help="number of variables")
    p.add_argument("--d", type=int, help="degree parameter")
    _add_common(p, poly=False)

    return ap


def _require(args, *names) -> list:
    out = []
    for name in names:
        val = getattr(args, name, None)
        if val is None:
            raise _UsageError(f"--{name} is required for this command")
        out.append(val)
    return out


def _cmd_check_hyperbolic(args):
    f, names = _load_poly(args)
    (e_text,) = _require(args, "e")
    inst = HyperbolicityInstance(f, _parse_vector(e_text))
    v = check_hyperbolic(inst, _sample_config(args))
    return {"verdict": to_jsonable(v)}, _verdict_exit(v)


def _cmd_cone_member(args):
    f, names = _load_poly(args)
    e_text, a_text = _require(args, "e", "a")
    inst = HyperbolicityInstance(f, _parse_vector(e_text))
    v = cone_membership(inst, _parse_vector(a_text), closure=args.closure)
    return {"verdict": to_jsonable(v)}, _verdict_exit(v)


def _cmd_interlaces(args):
    f, names = _load_poly(args)
    e_text, g_text = _require(args, "e", "g")
    inst = HyperbolicityInstance(f, _parse_vector(e_text))
    g = parse_poly(_read_poly_text(g_text), names)
    v = interlaces(inst, g, _sample_config(args), args.sos_budget, _sdp_settings(args), strict=args.strict)
    payload = {"verdict": to_jsonable(v)}
    _attach_certificate(payload, v, args, names)
    return payload, _verdict_exit(v)


def _cmd_delta(args):
    f, names = _load_poly(args)
    e_text, a_text = _require(args, "e", "a")
    d = wronskian_delta(f, _parse_vector(e_text), _parse_vector(a_text))
    return {"delta": format_poly(d, names), "vars": names}, 0


def _cmd_sos_certify(args):
    f, names = _load_poly(args)
    v = soscert.certify_sos(f, args.sos_budget, _sdp_settings(args))
    payload = {"verdict": to_jsonable(v)}
    _attach_certificate(payload, v, args, names)
    return payload, _verdict_exit(v)


def _cmd_sos_cone_member(args):
    f, names = _load_poly(args)
    e_text, a_text = _require(args, "e", "a")
    inst = HyperbolicityInstance(f, _parse_vector(e_text))
    v = soscert.sos_cone_membership(inst, _parse_vector(a_text), args.sos_budget, _sdp_settings(args))
    payload = {"verdict": to_jsonable(v)}
    _attach_certificate(payload, v, args, names)
    return payload, _verdict_exit(v)


def _cmd_detrep_build(args):
    f, names = _load_poly(args)
    e_text, dvars_text = _require(args, "e", "dvars")
    name_index = {n: i for i, n in enumerate(names)}
    dvars = []
    for token in dvars_text.split(","):
        token = token.strip()
        if token not in name_index:
            raise _UsageError(f"unknown dvar name {token!r}")
        dvars.append(name_index[token])
    result = detrep.build_detrep_multiaffine(f, dvars, _parse_vector(e_text))
    if isinstance(result, detrep.NoRep):
        payload = {
            "verdict": {
                "status": "CERTIFIED_NO",
                "witness": {
                    "pair": [names[result.pair[0]], names[result.pair[1]]],
                    "delta": format_poly(result.delta, names),
                },
                "detail": "coordinate Wronskian of the witness pair is not a perfect square",
            }
        }
        return payload, 1
    rep_json = result.to_jsonable()
    payload = {"verdict": {"status": "CERTIFIED_YES", "detail": "representation built and verified"},
               "representation": rep_json}
    if args.cert_out:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            json.dump(rep_json, fh, sort_keys=True)
        payload["certificate_path"] = args.cert_out
    return payload, 0


def _cmd_detrep_verify(args):
    f, names = _load_poly(args)
    (rep_text,) = _require(args, "rep")
    rep = detrep.DeterminantalRep.from_json(_read_poly_text(rep_text))
    res = detrep.verify_detrep(rep, f)
    payload = {"ok": bool(res), "reason": res.reason}
    return payload, 0 if res else 1


def _cmd_stable_check(args):
    f, names = _load_poly(args)
    v = detrep.check_multiaffine_stable(f, _sample_config(args), args.sos_budget, _sdp_settings(args))
    return {"verdict": to_jsonable(v)}, _verdict_exit(v)


def _cmd_vamos_repro(args):
    report = corpus.vamos_reproduction()
    payload = dict(report.to_jsonable())
    if args.cert_out:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        payload["certificate_path"] = args.cert_out
    return payload, _verdict_exit(report.conclusion)


def _cmd_gen(args):
    family = args.family
    if family == "product":
        (n,) = _require(args, "n")
        poly, names = corpus.gen_product(n), default_names(n)
    elif family == "lorentz":
        (n,) = _require(args, "n")
        poly, names = corpus.gen_lorentz(n), default_names(n)
    elif family == "elementary-symmetric":
        n, d = _require(args, "n", "d")
        poly, names = corpus.gen_elementary_symmetric(n, d), default_names(n)
    elif family == "sym-det":
        (d,) = _require(args, "d")
        poly, names = corpus.gen_sym_det(d), corpus.sym_det_variable_names(d)
    elif family == "cubic-example":
        poly, names = corpus.gen_cubic_example(), ["x", "y", "z"]
    else:
        poly, names = corpus.gen_vamos(), [f"x{i+1}" for i in range(8)]
    return {"family": family, "vars": names, "poly": format_poly(poly, names)}, 0


def _attach_certificate(payload: dict, v: Verdict, args, names: list[str]) -> None:
    cert = v.witness if isinstance(v.witness, soscert.SosCertificate) else None
    if cert is None:
        return
    payload["verdict"]["witness"] = "sos-certificate"
    cert_json = cert.to_jsonable(names)
    if args.cert_out:
        with open(args.cert_out, "w", encoding="utf-8") as fh:
            json.dump(cert_json, fh, sort_keys=True)
        payload["certificate_path"] = args.cert_out
    else:
        payload["certificate"] = cert_json


_HANDLERS = {
    "check-hyperbolic": _cmd_check_hyperbolic,
    "cone-member": _cmd_cone_member,
    "interlaces": _cmd_interlaces,
    "delta": _cmd_delta,
    "sos-certify": _cmd_sos_certify,
    "sos-cone-member": _cmd_sos_cone_member,
    "detrep-build": _cmd_detrep_build,
    "detrep-verify": _cmd_detrep_verify,
    "stable-check": _cmd_stable_check,
    "vamos-repro": _cmd_vamos_repro,
    "gen": _cmd_gen,
}


def main(argv: Optional[list[str]] = None) -> int:
    started = time.time()
    try:
        args = build_parser().parse_args(argv)
        payload, code = _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3
    except PolyParseError as exc:
        print(json.dumps({"error": str(exc), "position": exc.pos}), file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3
    _emit(payload, args, started)
    return code


if __name__ == "__main__":
    sys.exit(main())
