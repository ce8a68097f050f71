"""Command-line interface.

Exit codes: 0 = pass, 1 = assertion failure, 2 = invalid input or
certificate.  All output is deterministic JSON (sorted keys) so reruns
with the same arguments are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .analytic import analytic_rank, bias_via_characters
from .certificates import (
    RankDecomposition,
    RestrictionCertificate,
    verify_decomposition,
    verify_restriction,
)
from .errors import CertificateInvalid, HypothesisViolated, TensorCertError
from .fields import extend, field_of_order
from .harness import (
    check_interval_fact,
    prop_q_witness,
    prop_r_witness,
    report_to_csv_rows,
    run_suite,
    stability_experiment,
    theorem_chain,
)
from .multtensor import MultSpec, mult_tensor, verify_qmon
from .rankbounds import (
    chudnovsky_rank,
    chudnovsky_subrank,
    count_places_rational,
    schoolbook_rank,
)
from .tensors import Tensor


def _dump(obj, path=None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_tensor(path: str) -> Tensor:
    with open(path, "r", encoding="utf-8") as handle:
        return Tensor.from_json(json.load(handle))


def _parse_format(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.lower().replace("x", ",").split(",") if part)


def _cmd_tensor(args) -> int:
    tensor = _load_tensor(args.tensor)
    payload = tensor.to_json()
    if args.action == "print":
        _dump(payload)
    else:
        _dump(payload, args.out)
    return 0


def _cmd_mult(args) -> int:
    base = field_of_order(args.q)
    spec = MultSpec(base, extend(base, args.n), args.d)
    _dump(mult_tensor(spec).to_json(), args.json)
    return 0


def _cmd_qmon(args) -> int:
    cert = verify_qmon(args.q, args.m, args.n, args.d)
    payload = cert.to_json()
    payload["verified"] = verify_restriction(cert)
    _dump(payload, args.json)
    return 0 if payload["verified"] else 1


def _cmd_ar(args) -> int:
    tensor = _load_tensor(args.tensor)
    value = analytic_rank(tensor)
    payload = {
        "count": value.exact.count,
        "exponent": value.exact.exponent,
        "q": value.exact.q,
        "ar_float": value.value,
    }
    if args.method in ("char", "both"):
        payload["bias_char"] = bias_via_characters(tensor)
    _dump(payload)
    return 0


def _cmd_rank_decomp(args) -> int:
    base = field_of_order(args.q)
    if args.method == "schoolbook":
        deco = schoolbook_rank(args.d, args.n, base)
    elif args.method == "chudnovsky":
        deco = chudnovsky_rank(args.d, args.n, base)
    else:
        from .harness import best_rank_certificate

        deco, _ = best_rank_certificate(args.d, args.n, base)
    _dump(deco.to_json(), args.json)
    return 0


def _cmd_subrank_cert(args) -> int:
    base = field_of_order(args.q)
    cert = chudnovsky_subrank(args.d, args.n, base, args.N)
    _dump(cert.to_json(), args.json)
    return 0


def _cmd_verify_cert(args) -> int:
    with open(args.cert, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    kind = payload.get("kind")
    if kind == "rank-decomposition":
        deco = RankDecomposition.from_json(payload)
        if deco.spec is None:
            raise CertificateInvalid("decomposition carries no target spec")
        ok = verify_decomposition(mult_tensor(deco.spec), deco)
    elif kind == "restriction-certificate":
        ok = verify_restriction(RestrictionCertificate.from_json(payload))
    else:
        raise CertificateInvalid(f"unknown certificate kind {kind!r}")
    if not ok:
        raise CertificateInvalid("exact verification failed")
    _dump({"certificate": args.cert, "verified": True})
    return 0


def _cmd_places(args) -> int:
    _dump({"q": args.q, "n": args.n, "places": count_places_rational(args.q, args.n)})
    return 0


def _cmd_verify(args) -> int:
    if args.check == "fact":
        result = check_interval_fact(args.a, args.b, Fraction(args.x), Fraction(args.y))
        _dump(result.to_json(), args.json)
        return 0 if (not result.hypotheses_hold or result.witness is not None) else 1
    if args.check == "prop-r":
        witness = prop_r_witness(args.d, args.l, args.n)
        _dump(witness.to_json(), args.json)
        return 0 if witness.all_hold else 1
    if args.check == "prop-q":
        witness = prop_q_witness(args.d, args.l, args.n)
        _dump(witness.to_json(), args.json)
        return 0 if witness.all_hold else 1
    if args.check == "constants":
        report = theorem_chain(args.d, args.q, args.n)
        _dump(report.to_json(), args.json)
        return 0 if report.all_hold else 1
    if args.check == "stability":
        report = stability_experiment(
            q=args.q,
            n=args.n,
            d=args.d,
            dims=_parse_format(args.format),
            samples=args.samples,
            seed=args.seed,
        )
        _dump(report.to_json(), args.json)
        return 0 if report.all_hold else 1
    if args.check == "suite":
        config = None
        if args.config:
            try:
                import tomllib  # Python 3.11+
            except ModuleNotFoundError:
                import tomli as tomllib
            with open(args.config, "rb") as handle:
                config = tomllib.load(handle)
        report, exit_code = run_suite(config)
        _dump(report, args.json)
        if args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="") as handle:
                csv.writer(handle).writerows(report_to_csv_rows(report))
        return exit_code
    raise CertificateInvalid(f"unknown verify target {args.check!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensorcert",
        description="Exact rank/subrank/analytic-rank certificates over finite field towers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", help="round-trip a tensor JSON file")
    p.add_argument("action", choices=["print", "convert"])
    p.add_argument("--tensor", required=True)
    p.add_argument("--out", help="output path (convert)")
    p.set_defaults(func=_cmd_tensor)

    p = sub.add_parser("mult", help="print a multiplication structure tensor")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--json", help="write to file instead of stdout")
    p.set_defaults(func=_cmd_mult)

    p = sub.add_parser("qmon", help="emit a degree-shift restriction certificate")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=_cmd_qmon)

    p = sub.add_parser("ar", help="analytic rank of a tensor file")
    p.add_argument("--tensor", required=True)
    p.add_argument("--method", choices=["exact", "char", "both"], default="exact")
    p.set_defaults(func=_cmd_ar)

    p = sub.add_parser("rank-decomp", help="rank decomposition of a Mult tensor")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=["auto", "chudnovsky", "schoolbook"], default="auto")
    p.add_argument("--json")
    p.set_defaults(func=_cmd_rank_decomp)

    p = sub.add_parser("subrank-cert", help="diagonal restriction certificate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=_cmd_subrank_cert)

    p = sub.add_parser("verify-cert", help="verify a certificate file exactly")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=_cmd_verify_cert)

    p = sub.add_parser("places", help="degree-n places of the rational function field")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_places)

    p = sub.add_parser("verify", help="proof-arithmetic checks and experiment harness")
    p.add_argument("check", choices=["fact", "prop-r", "prop-q", "constants", "stability", "suite"])
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--d", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--format", default="2x2x2")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="write the JSON report to a file")
    p.add_argument("--csv", help="write a CSV report (suite only)")
    p.add_argument("--config", help="suite config in TOML")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisViolated, CertificateInvalid) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    except (TensorCertError, OSError, ValueError, KeyError, TypeError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
