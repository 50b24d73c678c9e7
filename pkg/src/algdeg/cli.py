"""Command-line surface: dimension tables, spins, surveys, series, suites.

Exit codes: 0 all claims verified (or skipped), 1 some claim falsified,
2 usage error, 3 some claim inconclusive.
"""

import argparse
import json
import sys

from . import canon, degen, gamma2, spinmx
from .gfield import make_field
from .report import Report
from .structvec import StructureVector

DIM_ORDER = ("C", "K", "Mstar", "Mstarstar", "T", "Ttilde", "TcapTtilde", "N", "U")


def field_spec(text):
    """Accepts 'p' or 'p^k'."""
    try:
        if "^" in text:
            p, k = text.split("^")
            return make_field(int(p), int(k))
        return make_field(int(text))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad field spec {text!r}: {exc}")


def dimension_arg(text):
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("the dimension must be at least 3")
    return n


def _field_label(ctx):
    return f"{ctx.char}^{ctx.degree}" if ctx.degree > 1 else str(ctx.char)


def parse_vector(text, ctx, n):
    if text.startswith("{"):
        return StructureVector.from_json(json.loads(text))
    return canon.named_vector(text, ctx, n)


def split_chain(text):
    """Split a chain spec on commas, except inside parenthesized points."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def _small_field_guard(report, ctx, ids_anchors):
    if ctx.kind == "finite" and ctx.order <= 2:
        report.skip_all(ids_anchors, "|F| > 2 required")
        return True
    return False


# -- subcommands ---------------------------------------------------------------

def cmd_dims(args):
    report = Report("dims", {"n": args.n, "field": _field_label(args.field)}, args.seed)
    ctx, n = args.field, args.n
    expected = canon.expected_dims(n)
    print(f"dimension table for n = {n} over {ctx!r}")
    for name in DIM_ORDER:

        def compute(name=name):
            space = canon.submodule(name, ctx, n)
            ok = space.dim == expected[name]
            return [{"id": f"dim.{name}",
                     "anchor": f"dim {name} matches its closed form",
                     "status": "verified" if ok else "falsified",
                     "data": {"computed": space.dim, "expected": expected[name]}}]

        (claim,) = report.timed(compute)
        print(f"  {name:<12} dim {claim['data']['computed']:>4}  [{claim['status']}]")
    return report


def cmd_canon(args):
    report = Report("canon", {"n": args.n, "field": _field_label(args.field)}, args.seed)
    ctx, n = args.field, args.n
    if args.list:
        return cmd_dims(args)
    if _small_field_guard(report, ctx, [
            ("intersections", "intersection dictionary"),
            ("TmeetMstarstarBiconditional", "trace-kernel symmetry")]):
        report.print_summary()
        return report
    report.timed(canon.intersection_table, ctx, n)
    report.timed(canon.check_trace_biconditional, ctx, n)
    report.print_summary()
    return report


def cmd_spin(args):
    ctx, n = args.field, args.n
    report = Report("spin", {"n": n, "field": _field_label(ctx),
                             "vector": args.vector, "expect": args.expect}, args.seed)
    gens = spinmx.standard_generators(ctx, n)
    lam = parse_vector(args.vector, ctx, n)
    import time
    t0 = time.monotonic()
    result = spinmx.spin(lam, gens)
    elapsed = time.monotonic() - t0
    print(f"spin of {args.vector}: dim {result.dim}")
    if args.expect:
        target = canon.submodule(args.expect, ctx, n)
        ok = result == target
        report.add({"id": "spin",
                    "anchor": f"spin({args.vector}) equals {args.expect}",
                    "status": "verified" if ok else "falsified",
                    "data": {"dim": result.dim, "expected_dim": target.dim}}, elapsed)
    else:
        report.add({"id": "spin", "anchor": f"spin({args.vector}) computed",
                    "status": "verified",
                    "data": {"dim": result.dim, "subspace": result.to_json()}}, elapsed)
    report.print_summary()
    return report


def cmd_survey(args):
    ctx, n = args.field, args.n
    report = Report("survey", {"n": n, "field": _field_label(ctx),
                               "module": args.module, "budget": args.budget}, args.seed)
    gens = spinmx.standard_generators(ctx, n)
    carrier = canon.submodule(args.module, ctx, n)
    handle = spinmx.module_handle(gens, carrier, label=args.module)
    import time
    t0 = time.monotonic()
    lattice = spinmx.survey_submodules(handle, budget=args.budget, workers=args.workers)
    elapsed = time.monotonic() - t0
    dims = [s.dim for s in lattice]
    print(f"submodule lattice of {args.module}: dims {dims}")
    report.add({"id": "survey",
                "anchor": f"exhaustive submodule lattice of {args.module}",
                "status": "verified",
                "data": {"dims": dims,
                         "members": [s.to_json() for s in lattice]}}, elapsed)
    report.print_summary()
    return report


def cmd_series(args):
    ctx, n = args.field, args.n
    report = Report("series", {"n": n, "field": _field_label(ctx),
                               "chain": args.chain}, args.seed)
    gens = spinmx.standard_generators(ctx, n)
    chain = [canon.submodule(name, ctx, n) for name in split_chain(args.chain)]
    import time
    t0 = time.monotonic()
    rep = spinmx.composition_series(chain, gens, args.seed)
    elapsed = time.monotonic() - t0
    status = ("verified" if rep["certified"]
              else "inconclusive" if not rep["conclusive"] else "falsified")
    for f in rep["factors"]:
        print(f"  factor {f['index']}: dim {f['dim']} -> {f['verdict']}")
    report.add({"id": "series",
                "anchor": f"chain {args.chain} is a composition series",
                "status": status, "data": rep}, elapsed)
    report.print_summary()
    return report


def cmd_lattice(args):
    ctx, n = args.field, args.n
    report = Report("lattice", {"n": n, "field": _field_label(ctx)}, args.seed)
    if _small_field_guard(report, ctx, [("lattice", "submodule diagrams")]):
        report.print_summary()
        return report
    report.timed(spinmx.verify_lattice_diagrams, ctx, n, args.seed)
    report.print_summary()
    return report


def cmd_degen(args):
    ctx, n = args.field, args.n
    report = Report(f"degen {args.mode}", {"n": n, "field": _field_label(ctx),
                                           "lambda": args.lam, "q": args.q}, args.seed)
    if _small_field_guard(report, ctx, [("degen", "degeneration claims")]):
        report.print_summary()
        return report
    gens = spinmx.standard_generators(ctx, n)
    lam = parse_vector(args.lam, ctx, n)
    import time
    t0 = time.monotonic()
    if args.mode == "q":
        if not args.q:
            raise ValueError("mode 'q' needs --q")
        q = [int(x) for x in args.q.split(",")]
        applicable, mw = degen.lindeg_theorem_check(lam, q)
        if not applicable:
            report.add({"id": "degen.q",
                        "anchor": "weight truncation stays in the cyclic module",
                        "status": "skipped",
                        "data": {"reason": "hypotheses fail", "max_weight": mw}})
        else:
            ok = degen.verify_lindeg(lam, q, gens)
            report.add({"id": "degen.q",
                        "anchor": "weight truncation stays in the cyclic module",
                        "status": "verified" if ok else "falsified",
                        "data": {"max_weight": mw}}, time.monotonic() - t0)
    else:
        fn = degen.reach_eta if args.mode == "reach-eta" else degen.reach_delta
        cert = fn(lam, gens)
        report.add({"id": f"degen.{args.mode}",
                    "anchor": f"the vector reaches {cert.target} inside its cyclic module",
                    "status": "verified" if cert.success else "falsified",
                    "data": {"branch": cert.branch, "spin_member": cert.spin_member,
                             "z": [ctx.raw_to_json(x) for x in cert.z],
                             "zeta": [ctx.raw_to_json(x) for x in cert.zeta],
                             "basis_change": [[ctx.raw_to_json(x) for x in row]
                                              for row in cert.basis_change]}},
                   time.monotonic() - t0)
    report.print_summary()
    return report


def cmd_gamma(args):
    ctx, n = args.field, args.n
    report = Report("gamma", {"n": n, "field": _field_label(ctx)}, args.seed)
    if ctx.kind != "finite" or ctx.char != 2 or ctx.order < 4:
        report.skip_all([("gamma", "semilinear-module verification")],
                        "needs characteristic 2 with |F| >= 4")
        report.print_summary()
        return report
    report.timed(gamma2.sigma_gmap_claims, ctx, n)
    report.timed(gamma2.verify_gamma_irreducible, ctx, n, args.seed)
    report.print_summary()
    return report


def cmd_verify_all(args):
    fields = args.fields
    ns = args.n_list
    report = Report("verify-all",
                    {"n": ns, "fields": [_field_label(c) for c in fields],
                     "samples": args.samples}, args.seed)
    for ctx in fields:
        for n in ns:
            tag = f"n{n}.q{_field_label(ctx)}"
            if ctx.kind == "finite" and ctx.order <= 2:
                report.skip_all(
                    [(f"{tag}.all-claims", "every suite for this field")],
                    "|F| > 2 required")
                continue
            gens = spinmx.standard_generators(ctx, n)

            def dims_claims():
                expected = canon.expected_dims(n)
                out = []
                for name in DIM_ORDER:
                    d = canon.submodule(name, ctx, n).dim
                    out.append({"id": f"{tag}.dim.{name}",
                                "anchor": f"dim {name} matches its closed form",
                                "status": "verified" if d == expected[name] else "falsified",
                                "data": {"computed": d, "expected": expected[name]}})
                return out

            report.timed(dims_claims)
            for c in report.timed(canon.intersection_table, ctx, n):
                c["id"] = f"{tag}.{c['id']}"
            for c in report.timed(canon.check_trace_biconditional, ctx, n):
                c["id"] = f"{tag}.{c['id']}"
            for c in report.timed(spinmx.verify_lattice_diagrams, ctx, n, args.seed):
                c["id"] = f"{tag}.{c['id']}"

            def spin_claims():
                out = []
                for vec, target in (("eta", "U"), ("delta", "N")):
                    got = spinmx.spin(canon.named_vector(vec, ctx, n), gens)
                    want = canon.submodule(target, ctx, n)
                    out.append({"id": f"{tag}.spin.{vec}",
                                "anchor": f"spin({vec}) = {target}",
                                "status": "verified" if got == want else "falsified",
                                "data": {"dim": got.dim}})
                return out

            report.timed(spin_claims)

            def degen_claims():
                out = []
                if ctx.order >= 5:
                    rep = degen.lindeg_suite(ctx, n, gens, args.seed, count=args.samples)
                    out.append({"id": f"{tag}.degen.lindeg",
                                "anchor": "weight truncations stay in their cyclic modules",
                                "status": "verified" if not rep["failures"] else "falsified",
                                "data": rep})
                rep = degen.reach_eta_suite(ctx, n, gens, args.seed, count=args.samples)
                out.append({"id": f"{tag}.degen.eta",
                            "anchor": "square-factor vectors outside the span-preserving "
                                      "submodule reach 123-213",
                            "status": "verified" if not rep["failures"] else "falsified",
                            "data": rep})
                rep = degen.reach_delta_suite(ctx, n, gens, args.seed, count=args.samples)
                out.append({"id": f"{tag}.degen.delta",
                            "anchor": "commutative vectors outside the square-factor "
                                      "submodule reach 112",
                            "status": "verified" if not rep["failures"] else "falsified",
                            "data": rep})
                return out

            report.timed(degen_claims)
            if ctx.char == 2 and ctx.order >= 4:
                for c in report.timed(gamma2.sigma_gmap_claims, ctx, n):
                    c["id"] = f"{tag}.{c['id']}"
                for c in report.timed(gamma2.verify_gamma_irreducible, ctx, n, args.seed):
                    c["id"] = f"{tag}.{c['id']}"
    report.print_summary()
    return report


def build_parser():
    # the report flags are accepted both before and after the subcommand
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", default=argparse.SUPPRESS,
                        help="write the JSON report to this path")
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="base 64-bit seed")
    shared.add_argument("--no-timing", action="store_true",
                        default=argparse.SUPPRESS,
                        help="omit wall-clock data for byte-identical reports")
    p = argparse.ArgumentParser(
        prog="algdeg",
        description="exact module computations on spaces of algebra structure vectors")
    p.add_argument("--json", default=None, help=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)
    p.add_argument("--no-timing", action="store_true", help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[shared], **kw)

    def common(sp, needs_field=True):
        sp.add_argument("--n", type=dimension_arg, default=3)
        if needs_field:
            sp.add_argument("--field", type=field_spec, required=True)

    sp = add_parser("dims", help="dimension table against the closed forms")
    common(sp)
    sp.set_defaults(fn=cmd_dims, list=True)

    sp = add_parser("canon", help="canonical submodules and their intersections")
    common(sp)
    sp.add_argument("--list", action="store_true", help="print the dimension table")
    sp.add_argument("--check-intersections", action="store_true")
    sp.set_defaults(fn=cmd_canon)

    sp = add_parser("spin", help="cyclic module of a named or JSON vector")
    common(sp)
    sp.add_argument("--vector", required=True)
    sp.add_argument("--expect", help="named submodule the spin should equal")
    sp.set_defaults(fn=cmd_spin)

    sp = add_parser("survey", help="exhaustive submodule lattice of a carrier")
    common(sp)
    sp.add_argument("--module", required=True)
    sp.add_argument("--budget", type=int, default=spinmx.SURVEY_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=cmd_survey)

    sp = add_parser("series", help="certify a chain as a composition series")
    common(sp)
    sp.add_argument("--chain", required=True,
                    help="comma-separated submodule names, e.g. 0,Mstar(1,-1),U,K")
    sp.set_defaults(fn=cmd_series)

    sp = add_parser("lattice", help="verify the submodule diagrams per branch")
    common(sp)
    sp.set_defaults(fn=cmd_lattice)

    sp = add_parser("degen", help="linear degeneration operations")
    sp.add_argument("mode", choices=["q", "reach-eta", "reach-delta"])
    common(sp)
    sp.add_argument("--lambda", dest="lam", required=True,
                    help="vector name or JSON")
    sp.add_argument("--q", help="comma-separated integer weights")
    sp.set_defaults(fn=cmd_degen)

    sp = add_parser("gamma", help="characteristic-2 semilinear verification")
    common(sp)
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(fn=cmd_gamma)

    sp = add_parser("verify-all", help="run every suite over a grid")
    sp.add_argument("--n-list", type=lambda s: [dimension_arg(x) for x in s.split(",")],
                    default=[3])
    sp.add_argument("--fields", type=lambda s: [field_spec(x) for x in s.split(",")],
                    default=[make_field(3), make_field(2, 2), make_field(5)])
    sp.add_argument("--samples", type=int, default=10,
                    help="sample count per randomized suite")
    sp.add_argument("--budget", type=int, default=spinmx.SURVEY_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=cmd_verify_all)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        report.write(args.json, with_timing=not args.no_timing)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
