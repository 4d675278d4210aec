"""Command-line front end: ``neglab <subcommand> [flags]``.

Exit codes: 0 success, 1 a certificate or invariant failed, 2 usage error.
"""

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from neglab import constructions, interpolation, pell, shgh, zariski
from neglab.certificates import ConstructionCertificate
from neglab.errors import (
    DegenerateInputError,
    NeglabError,
    ParameterError,
    PreconditionError,
)
from neglab.fields import parse_field
from neglab.lattice import DivisorClass, discriminant_lemma_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _plain(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, DivisorClass):
        return [str(x) for x in obj.coords]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _scalar(v):
    return v is None or isinstance(v, (str, int, bool, Fraction))


def _cell(v):
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit_report(results, fmt="json"):
    """Serialise a dict (one document) or a list of dicts (rows)."""
    if fmt == "json":
        return json.dumps(_plain(results), indent=2) + "\n"
    rows = results if isinstance(results, list) else [results]
    if fmt == "csv":
        if not rows:
            return ""
        keys = [k for k, v in rows[0].items() if _scalar(v)]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_cell(row.get(k)) for k in keys])
        return buf.getvalue()
    if fmt == "pretty":
        out = []
        for row in rows:
            width = max((len(str(k)) for k in row), default=0)
            for k, v in row.items():
                val = _cell(v) if _scalar(v) else json.dumps(_plain(v))
                out.append(f"{str(k).ljust(width)}  {val}")
            out.append("")
        return "\n".join(out)
    raise UsageError(f"unknown format {fmt!r}")


# -- subcommands ------------------------------------------------------------------

def cmd_pell(args):
    return pell.pell_table(args.max_k), EXIT_OK


def cmd_shgh(args):
    D = shgh.PlaneClass.parse(args.cls)
    value, applicable = shgh.expected_dim(D)
    order = shgh.shgh_semi_effective_order(D, args.order)
    report = {
        "class": str(D),
        "vdim": shgh.vdim(D),
        "expected_dim": value,
        "applicable": applicable,
        "order": order.order,
        "order_k_max": args.order,
        "all_applicable": order.all_applicable,
        "status": shgh.CONDITIONAL,
    }
    return report, EXIT_OK


def _parse_coords(text):
    try:
        return [Fraction(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse coordinates {text!r}") from None


def cmd_zariski(args):
    if args.pell_k is not None:
        return zariski.pell_denominator_witness(args.pell_k), EXIT_OK
    if not args.model or not args.cls:
        raise UsageError("zariski needs --pell-k, or --model FILE with --class COORDS")
    model = zariski.SurfaceModel.from_json(_load_json(args.model))
    L = model.lattice.vector(_parse_coords(args.cls))
    return zariski.zariski_decompose(model, L).to_json(), EXIT_OK


def _family_params(args):
    family = args.family.replace("-", "_")
    need = {
        "sextic": (),
        "rational_nodal": ("d",),
        "fermat": ("n",),
        "finite_field": ("q",),
        "chain": ("d", "r"),
        "kollar": ("m",),
    }
    if family not in need:
        raise UsageError(f"unknown family {args.family!r}")
    params = {}
    for name in need[family]:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"{args.family} needs --{name}")
        params[name] = value
    return family, params


def cmd_construct(args):
    family, params = _family_params(args)
    if family == "kollar":
        A, checks = constructions.construct_kollar(params["m"])
        report = {
            "family": f"kollar({params['m']})",
            "A": A,
            "A^2": checks.self_intersection,
            "A.(f1+f2)": checks.fiber_degree,
            "middle_coefficient": checks.middle_coefficient,
            "interior_of_nef_cone": checks.interior,
        }
        return report, EXIT_OK if checks.interior and checks.self_intersection == 2 else EXIT_FAIL
    if family == "chain":
        cert = constructions.construct_chain(params["d"], params["r"])
    else:
        cert = constructions.construct_plane_family(family, **params)
    if args.order_cert:
        cert = interpolation.order_certificate(cert)
    report = constructions.verify_certificate(cert)
    doc = cert.to_json()
    doc["verification"] = report.to_json()
    return doc, EXIT_OK if report.passed else EXIT_FAIL


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_certify(args):
    cert = ConstructionCertificate.from_json(_load_json(args.path))
    report = constructions.verify_certificate(cert)
    return report.to_json(), EXIT_OK if report.passed else EXIT_FAIL


def cmd_interp(args):
    field = parse_field(args.field)
    scheme = interpolation.FatPointScheme.from_json(_load_json(args.scheme), field)
    rows = interpolation.interpolation_matrix(args.degree, scheme)
    rank = field.rank(rows)
    cols = len(interpolation.monomials(args.degree))
    return {
        "field": repr(field),
        "degree": args.degree,
        "rows": len(rows),
        "columns": cols,
        "rank": rank,
        "dimension": cols - rank,
    }, EXIT_OK


def cmd_lemma_check(args):
    rng = random.Random(args.seed)
    summary = discriminant_lemma_sweep(args.trials, rng)
    report = {"seed": args.seed, **summary, "violation_count": len(summary["violations"])}
    return report, EXIT_FAIL if summary["violations"] else EXIT_OK


def cmd_bounds(args):
    support = None
    if args.cert:
        cert = ConstructionCertificate.from_json(_load_json(args.cert))
        support = [c.cls for c in cert.components]
    ok, dvol = zariski.denominator_bounds(args.bprim, args.rho, support)
    return {"bprim": args.bprim, "rho": args.rho, "detS_bound_ok": ok, "dvol": dvol}, (
        EXIT_OK if ok else EXIT_FAIL
    )


# -- parser -----------------------------------------------------------------------

def _seed_default():
    env = os.environ.get("NEGLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"NEGLAB_SEED is not an integer: {env!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="write the report to FILE")

    parser = argparse.ArgumentParser(prog="neglab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", parents=[common], help="Pell divisor table")
    p.add_argument("--max-k", type=int, default=5)
    p.set_defaults(func=cmd_pell, default_format="csv")

    p = sub.add_parser("shgh", parents=[common], help="virtual/expected dimension")
    p.add_argument("--class", dest="cls", required=True, help='e.g. "19;6^10" or "2;1,1,1"')
    p.add_argument("--order", type=int, default=10, help="k_max for the conditional order")
    p.set_defaults(func=cmd_shgh, default_format="pretty")

    p = sub.add_parser("zariski", parents=[common], help="Zariski decomposition and volume")
    p.add_argument("--pell-k", type=int, default=None)
    p.add_argument("--model", default=None, help="surface model JSON")
    p.add_argument("--class", dest="cls", default=None, help="coordinates, comma separated")
    p.set_defaults(func=cmd_zariski, default_format="json")

    p = sub.add_parser("construct", parents=[common], help="build a construction certificate")
    p.add_argument("family")
    for name in ("d", "n", "q", "r", "m"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--order-cert", action="store_true",
                   help="attach order bounds via interpolation or counts")
    p.set_defaults(func=cmd_construct, default_format="json")

    p = sub.add_parser("certify", parents=[common], help="verify a certificate file")
    p.add_argument("path")
    p.set_defaults(func=cmd_certify, default_format="json")

    p = sub.add_parser("interp", parents=[common], help="fat-point linear system dimension")
    p.add_argument("--field", required=True, help='"p", "q" or "p^e"')
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--scheme", required=True)
    p.set_defaults(func=cmd_interp, default_format="pretty")

    p = sub.add_parser("lemma-check", parents=[common], help="discriminant lemma sweep")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_lemma_check, default_format="json")

    p = sub.add_parser("bounds", parents=[common], help="det S and volume denominator bounds")
    p.add_argument("--bprim", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--cert", default=None, help="use the certificate's components as support")
    p.set_defaults(func=cmd_bounds, default_format="pretty")
    return parser


def run(argv=None, stdout=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.seed is None:
            args.seed = _seed_default()
        results, code = args.func(args)
        text = emit_report(results, args.format or args.default_format)
    except (UsageError, ParameterError, PreconditionError, DegenerateInputError) as exc:
        print(f"neglab: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except NeglabError as exc:
        print(f"neglab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
