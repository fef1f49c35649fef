"""Command-line interface.

Exit codes: 0 success, 1 a verification returned false, 2 bad usage or bad
input files, 3 an internal consistency assertion fired.  All JSON output is
printed with sorted keys so runs are byte-for-byte reproducible.
"""

import argparse
import json
import sys

from . import gf2
from .algebra import (
    check_generating_axioms, check_graded_alternative,
    check_graded_associative, check_graded_commutative, generator_square,
    multiplication_table, twist_from_form, twist_standard,
)
from .equivalence import (
    brute_force_search, heuristic_search, verify_equivalence,
)
from .forms import (
    CubicForm, graph_to_dot, make_alpha_cl_n, make_alpha_cl_pq, make_alpha_n,
    make_alpha_pq, make_tilde, to_graph, zero_count,
)
from .periodicity import (
    GlueSpec, classify_signature, glue_algebras, is_simple, r2_glue_factor,
    verify_complex_periodicity, verify_real_periodicity,
)
from .selftest import format_table, run_selftest

_EPILOG = ("Bit convention: points of GF(2)^n are written most significant "
           "bit first, with variable 1 as the leftmost bit, so '100' is the "
           "basis vector e_1 in three variables.")


def _print_json(obj):
    print(json.dumps(obj, indent=1, sort_keys=True))


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_form(path):
    return CubicForm.from_json(_load_json(path))


def _family_form(args):
    fam = args.family
    if fam in ("alpha", "alpha-cl", "tilde"):
        if args.p is None or args.q is None:
            raise ValueError(f"family {fam!r} needs --p and --q")
        maker = {"alpha": make_alpha_pq, "alpha-cl": make_alpha_cl_pq,
                 "tilde": make_tilde}[fam]
        return maker(args.p, args.q)
    if args.n is None:
        raise ValueError(f"family {fam!r} needs --n")
    return {"alpha-n": make_alpha_n, "alpha-cl-n": make_alpha_cl_n}[fam](args.n)


def _standard_table(args):
    kind = args.kind
    if kind in ("O_n", "Cl_n") and args.n is None:
        raise ValueError(f"kind {kind} needs --n")
    if kind in ("O_pq", "Cl_pq") and (args.p is None or args.q is None):
        raise ValueError(f"kind {kind} needs --p and --q")
    return twist_standard(kind, n=args.n, p=args.p, q=args.q)


def _signature_pair(args):
    if args.p is None or args.q is None:
        raise ValueError("needs --p and --q")
    return args.p, args.q


# ---------------------------------------------------------------------------
# subcommands


def cmd_form_make(args):
    _print_json(_family_form(args).to_json())
    return 0


def cmd_form_eval(args):
    form = _family_form(args)
    x = args.x
    if len(x) != form.n or any(c not in "01" for c in x):
        raise ValueError(f"--x must be {form.n} bits of 0/1, got {x!r}")
    print(form.eval(gf2.vec_from_str(x)))
    return 0


def cmd_form_graph(args):
    g = to_graph(_family_form(args))
    if args.format == "dot":
        sys.stdout.write(graph_to_dot(g))
    else:
        _print_json({"n": g.n, "filled": sorted(g.filled),
                     "edges": [list(e) for e in sorted(g.edges)],
                     "triangles": [list(t) for t in sorted(g.triangles)]})
    return 0


def cmd_algebra_table(args):
    sys.stdout.write(multiplication_table(_standard_table(args)))
    return 0


_PROPERTIES = ("comm", "assoc", "alt", "genfun")


def cmd_algebra_check(args):
    p, q = _signature_pair(args)
    form = make_alpha_pq(p, q) if args.kind == "O_pq" else make_alpha_cl_pq(p, q)
    table = twist_from_form(form)
    props = [s.strip() for s in args.properties.split(",") if s.strip()]
    bad = [s for s in props if s not in _PROPERTIES]
    if bad or not props:
        raise ValueError(f"--properties takes a comma list from "
                         f"{','.join(_PROPERTIES)}, got {args.properties!r}")
    results = {}
    for prop in props:
        if prop == "comm":
            results[prop] = check_graded_commutative(table)
        elif prop == "assoc":
            results[prop] = check_graded_associative(table)
        elif prop == "alt":
            results[prop] = check_graded_alternative(table)
        else:
            results[prop] = check_generating_axioms(table, form)
    ok = all(v if isinstance(v, bool) else all(v.values())
             for v in results.values())
    _print_json({"kind": args.kind, "signature": [p, q],
                 "points": 1 << form.n, "results": results,
                 "all_passed": ok})
    return 0 if ok else 1


def cmd_algebra_square(args):
    p, q = _signature_pair(args)
    form = make_alpha_pq(p, q) if args.kind == "O_pq" else make_alpha_cl_pq(p, q)
    print(f"{generator_square(twist_from_form(form), args.i):+d}")
    return 0


def cmd_equiv_verify(args):
    lhs, rhs = _load_form(args.lhs), _load_form(args.rhs)
    witness = gf2.GF2Matrix.from_json(_load_json(args.witness))
    ok = verify_equivalence(lhs, rhs, witness)
    _print_json({"verified": ok, "points": 1 << lhs.n,
                 "witness": witness.to_json()})
    return 0 if ok else 1


def cmd_equiv_search(args):
    lhs, rhs = _load_form(args.lhs), _load_form(args.rhs)
    if args.mode == "exhaustive":
        verdict = brute_force_search(lhs, rhs)
    else:
        verdict = heuristic_search(lhs, rhs, seed=args.seed,
                                   budget=args.budget)
    _print_json(verdict.to_json())
    return 0


def _algebra_glue_report(p, q, convention):
    """Section-product diagnostics for the factor pair of signature (p, q)."""
    if p == 0:
        left, right, tag = make_tilde(0, q), make_tilde(0, 5), "C"
        target = (0, q + 4)
    elif q == 0:
        left, right, tag = make_tilde(p, 0), make_tilde(5, 0), "R2"
        target = (p + 4, 0)
    else:
        left, right, tag = make_tilde(p, q), make_tilde(2, 3), "C"
        target = (p + 2, q + 2)
    res = glue_algebras(GlueSpec(left, right, subalgebra_tag=tag), convention)
    return {"convention": convention, "subalgebra": tag,
            "well_defined": res.well_defined,
            "diagnostics": res.diagnostics,
            "target_zero_count": zero_count(make_tilde(*target)),
            "form_level_path_normative": True}


def cmd_periodicity_verify(args):
    if args.complex is not None:
        report = verify_complex_periodicity(args.complex)
    else:
        p, q = _signature_pair(args)
        report = verify_real_periodicity(p, q)
        if args.algebra_glue is not None:
            report["algebra_glue"] = _algebra_glue_report(p, q,
                                                          args.algebra_glue)
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"report written to {args.out}")
    else:
        print(text)
    return 0 if report["final_composed_check"] else 1


def cmd_classify(args):
    p, q = _signature_pair(args)
    _print_json({"signature": [p, q],
                 "class": [list(s) for s in classify_signature(p, q)],
                 "simple": is_simple(p, q)})
    return 0


def cmd_selftest(args):
    labels = set(args.label) if args.label else None
    rows = run_selftest(args.level, labels)
    if not rows:
        raise ValueError(f"no checks match labels {sorted(labels)}")
    print(format_table(rows, args.level))
    return 0 if all(r["status"] == "PASS" for r in rows) else 1


# ---------------------------------------------------------------------------
# parser


def _add_family(sub):
    sub.add_argument("--family", required=True,
                     choices=("alpha", "alpha-n", "alpha-cl", "alpha-cl-n",
                              "tilde"))
    sub.add_argument("--n", type=int)
    sub.add_argument("--p", type=int)
    sub.add_argument("--q", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="z2twist",
        description="Twisted group algebras on Z_2^n from cubic forms: "
                    "construction, graded-identity checks, form equivalence "
                    "and the periodicity statements.",
        epilog=_EPILOG)
    parser.add_argument("--workers", type=int, default=1,
                        help="accepted for interface compatibility; all "
                             "checks run single-process")
    commands = parser.add_subparsers(dest="command", metavar="command")

    form = commands.add_parser(
        "form", help="build, evaluate and render cubic forms",
        epilog=_EPILOG)
    fsub = form.add_subparsers(dest="subcommand", metavar="subcommand")
    sp = fsub.add_parser("make", help="print a named family form as JSON")
    _add_family(sp)
    sp.set_defaults(func=cmd_form_make)
    sp = fsub.add_parser("eval", help="evaluate a family form at a point")
    _add_family(sp)
    sp.add_argument("--x", required=True,
                    help="bit string, variable 1 leftmost")
    sp.set_defaults(func=cmd_form_eval)
    sp = fsub.add_parser("graph", help="render the triangulated graph")
    _add_family(sp)
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp.set_defaults(func=cmd_form_graph)

    algebra = commands.add_parser(
        "algebra", help="twisting tables and graded-identity checks",
        epilog=_EPILOG)
    asub = algebra.add_subparsers(dest="subcommand", metavar="subcommand")
    sp = asub.add_parser("table", help="print the signed multiplication "
                                       "table as TSV")
    sp.add_argument("--kind", required=True,
                    choices=("H", "O", "O_n", "Cl_n", "O_pq", "Cl_pq"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.set_defaults(func=cmd_algebra_table)
    sp = asub.add_parser("check", help="run graded-identity checks")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--kind", choices=("O_pq", "Cl_pq"), default="O_pq")
    sp.add_argument("--properties", default="comm,assoc,alt,genfun",
                    help="comma list from comm,assoc,alt,genfun")
    sp.set_defaults(func=cmd_algebra_check)
    sp = asub.add_parser("square", help="sign of a generator's square")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--i", type=int, required=True,
                    help="generator index, 1-based")
    sp.add_argument("--kind", choices=("O_pq", "Cl_pq"), default="O_pq")
    sp.set_defaults(func=cmd_algebra_square)

    equiv = commands.add_parser(
        "equiv", help="verify or search form equivalences", epilog=_EPILOG)
    esub = equiv.add_subparsers(dest="subcommand", metavar="subcommand")
    sp = esub.add_parser("verify", help="check a witness matrix pointwise")
    sp.add_argument("--lhs", required=True, help="form JSON file")
    sp.add_argument("--rhs", required=True, help="form JSON file")
    sp.add_argument("--witness", required=True, help="matrix JSON file")
    sp.set_defaults(func=cmd_equiv_verify)
    sp = esub.add_parser("search", help="decide equivalence of two forms")
    sp.add_argument("--lhs", required=True, help="form JSON file")
    sp.add_argument("--rhs", required=True, help="form JSON file")
    sp.add_argument("--mode", required=True,
                    choices=("exhaustive", "hillclimb"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=100000)
    sp.set_defaults(func=cmd_equiv_search)

    periodicity = commands.add_parser(
        "periodicity", help="verify the 4-step periodicity statements",
        epilog=_EPILOG)
    psub = periodicity.add_subparsers(dest="subcommand", metavar="subcommand")
    sp = psub.add_parser("verify", help="verify one signature and print "
                                        "the report")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--complex", type=int, metavar="N",
                    help="verify the unsigned statement at total dimension N")
    sp.add_argument("--algebra-glue", choices=("plain", "braided"),
                    dest="algebra_glue",
                    help="attach section-product diagnostics for the factor "
                         "pair (exploratory; the form-level chain stays "
                         "normative)")
    sp.add_argument("--out", help="write the JSON report to this file")
    sp.set_defaults(func=cmd_periodicity_verify)

    sp = commands.add_parser(
        "classify", help="signatures isomorphic to (p, q) and simplicity",
        epilog=_EPILOG)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.set_defaults(func=cmd_classify)

    sp = commands.add_parser(
        "selftest", help="run the labeled verification battery",
        epilog=_EPILOG)
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.add_argument("--label", action="append",
                    help="run only this check (repeatable)")
    sp.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return 3
    except (ValueError, LookupError, OSError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
