"""Command-line front end.

Every verb prints JSON (or ``--plain`` text).  Exit status is 0 on success,
1 on a domain error and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import closurealg, measure, ordspace, posys, spacecalc
from .errors import ParseError, StoneSpaceError
from .ordinal import format_ordinal, parse_ordinal

GROUPS = ("ord", "space", "tuple", "po", "measure", "closure")


def _fo(x):
    return format_ordinal(x)


def _elements(xs):
    return [str(x) for x in sorted(xs, key=posys.element_key)]


def _read_json_arg(text: str):
    """Inline JSON if it looks like an object, otherwise a file path."""
    if text.lstrip().startswith("{"):
        return text
    with open(text, encoding="utf-8") as fh:
        return fh.read()


def _po_arg(args):
    if args.system == "random":
        return posys.random_po_system(random.Random(args.seed))
    return posys.loads(_read_json_arg(args.system))


def _expr_arg(text, seed):
    if text == "random":
        return spacecalc.random_expr(random.Random(seed))
    return spacecalc.parse_expr(text)


# verbs -----------------------------------------------------------------------

def cmd_ord_classify(args):
    a = parse_ordinal(args.alpha)
    return {"class": str(ordspace.classify(a)), "type": str(ordspace.type_of(a)), "g": _fo(ordspace.canonical_g(a))}


def cmd_ord_type(args):
    return {"type": str(ordspace.type_of(parse_ordinal(args.alpha)))}


def cmd_ord_derive(args):
    a, xi = parse_ordinal(args.alpha), parse_ordinal(args.xi)
    return {"derivative_type": _fo(ordspace.derivative_type(a, xi))}


def cmd_space_invariants(args):
    e = _expr_arg(args.expr, args.seed)
    out = spacecalc.invariants(e).to_json()
    if args.expr == "random":
        out["expr"] = spacecalc.format_expr(e)
    return out


def cmd_space_homeo(args):
    e1, e2 = spacecalc.parse_expr(args.expr1), spacecalc.parse_expr(args.expr2)
    return {"homeomorphic": spacecalc.homeo_decide(e1, e2)}


def cmd_space_decompose(args):
    x, y = spacecalc.decompose(_expr_arg(args.expr, args.seed))
    return {"X": spacecalc.format_expr(x), "Y": spacecalc.format_expr(y)}


def _tuple_arg(text):
    try:
        obj = json.loads(_read_json_arg(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return spacecalc.tuple_from_json(obj)


def cmd_space_realize(args):
    return {"expr": spacecalc.format_expr(spacecalc.realize(_tuple_arg(args.tuple)))}


def cmd_tuple_validate(args):
    spacecalc.validate_tuple(_tuple_arg(args.tuple))
    return {"valid": True}


def cmd_po_invariants(args):
    p = _po_arg(args)
    if isinstance(p, posys.ExtendedPOSystem):
        p = p.base
    inv = posys.invariants(p)
    return {
        "nu": inv.nu,
        "lambda": inv.lam,
        "kernel": _elements(inv.kernel),
        "rank": {str(k): inv.rank[k] for k in sorted(inv.rank, key=posys.element_key)},
        "layers": [_elements(l) for l in inv.layers],
        "k_xi": [_elements(k) for k in inv.k_xi],
    }


def cmd_po_reduce(args):
    p = _po_arg(args)
    if isinstance(p, posys.ExtendedPOSystem):
        p = p.base
    red, mapping = posys.reduce(p)
    return {
        "reduced": posys.to_json_obj(red),
        "map": {str(k): str(mapping[k]) for k in sorted(mapping, key=posys.element_key)},
        "is_reduced": posys.is_reduced(red),
    }


def cmd_po_predict(args):
    e = posys.loads(_read_json_arg(args.system))
    if not isinstance(e, posys.ExtendedPOSystem):
        e = posys.ExtendedPOSystem(e, (), {})
    t = posys.predicted_invariants(e)
    return {
        "nu": t.nu,
        "lambda": t.lam,
        "n": "-inf" if t.n is None else t.n,
        "rho": t.rho,
        "rho_u_range": list(t.rho_u_range) if t.rho_u_range else None,
        "rho_u_admissible": list(t.rho_u_admissible) if t.rho_u_admissible is not None else None,
        "note": t.note,
    }


def _path_str(p):
    return ".".join(map(str, p)) or "root"


def cmd_measure_pi(args):
    m = measure.random_tree(random.Random(args.seed)) if args.tree == "random" else measure.parse_tree(args.tree)
    region = measure.parse_region(args.region)
    pts = measure.self_similar_points(m, region)
    out = {"sigma_pi": measure.sigma_pi_decide(m, region), "self_similar_points": sorted(_path_str(p) for p in pts)}
    if args.tree == "random":
        out["tree"] = measure.format_tree(m)
    return out


def cmd_measure_iso(args):
    m1, m2 = measure.parse_tree(args.tree1), measure.parse_tree(args.tree2)
    r1, r2 = measure.parse_region(args.region1), measure.parse_region(args.region2)
    ok = measure.sigma_iso_decide(m1, r1, m2, r2)
    out = {"isomorphic": ok}
    if ok:
        iso = measure.build_sigma_iso(m1, r1, m2, r2)
        cell = lambda c: _path_str(c.leaf) + (f"/{c.sub}" if c.sub else "")
        out["pairing"] = [[cell(a), cell(b)] for a, b in iso.pairs]
    return out


def cmd_closure_hseq(args):
    alg = closurealg.q_algebra(args.k, args.variant)
    upto = args.upto if args.upto is not None else args.k + 2
    seq = closurealg.h_sequence(alg, closurealg.p_nk(1, args.k), upto)
    return {"h": [_elements(h) for h in seq]}


def cmd_closure_witness(args):
    w = closurealg.incompatibility_witness(args.k, args.m, args.variant)
    if w is None:
        return {"witness": None}
    return {"witness": {"k": w.k, "m": w.m, "stage": w.stage, "separating_stages": list(w.separating_stages),
                        "k_profile": str(w.k_profile), "m_profile": str(w.m_profile)}}


def _index_range(text):
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"invalid component list {text!r}") from None


def cmd_closure_report(args):
    spec = closurealg.CompletionSpec(_index_range(args.components), args.variant)
    return closurealg.nonprimitivity_report(spec).to_json()


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stonespace", description="Invariants of omega-Stone spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plain", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for 'random' inputs")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    verb("ord-classify", cmd_ord_classify, "class, type and canonical ordinal of T(alpha)").add_argument("alpha")
    verb("ord-type", cmd_ord_type, "type of T(alpha)").add_argument("alpha")
    p = verb("ord-derive", cmd_ord_derive, "order type of the xi-th derivative of T(alpha)")
    p.add_argument("alpha")
    p.add_argument("xi")
    verb("space-invariants", cmd_space_invariants, "invariant tuple of an expression").add_argument("expr")
    p = verb("space-homeo", cmd_space_homeo, "decide homeomorphism")
    p.add_argument("expr1")
    p.add_argument("expr2")
    verb("space-decompose", cmd_space_decompose, "strongly uniform + scattered split").add_argument("expr")
    verb("space-realize", cmd_space_realize, "expression realising a tuple").add_argument("tuple")
    verb("tuple-validate", cmd_tuple_validate, "check the existence conditions").add_argument("tuple")
    verb("po-invariants", cmd_po_invariants, "CB invariants of a PO system").add_argument("system")
    verb("po-reduce", cmd_po_reduce, "reduction of a PO system").add_argument("system")
    verb("po-predict", cmd_po_predict, "invariants predicted by (P, L, f)").add_argument("system")
    p = verb("measure-pi", cmd_measure_pi, "sigma-PI decision for a tree region")
    p.add_argument("tree")
    p.add_argument("--region", default="root")
    p = verb("measure-iso", cmd_measure_iso, "sigma-isomorphism of two tree regions")
    p.add_argument("tree1")
    p.add_argument("tree2")
    p.add_argument("--region1", default="root")
    p.add_argument("--region2", default="root")
    for name, func, help_ in (
        ("closure-hseq", cmd_closure_hseq, "h_n sequence in 2^Q_k"),
        ("closure-witness", cmd_closure_witness, "incompatibility witness for Q_k vs Q_m"),
        ("closure-report", cmd_closure_report, "non-primitivity certificate"),
    ):
        p = verb(name, func, help_)
        p.add_argument("--variant", choices=closurealg.VARIANTS, default="prop")
        if name == "closure-report":
            p.add_argument("--components", default="1..6")
        else:
            p.add_argument("--k", type=int, required=True)
        if name == "closure-hseq":
            p.add_argument("--upto", type=int)
        if name == "closure-witness":
            p.add_argument("--m", type=int, required=True)
    return parser


def _plain(obj) -> str:
    def scalar(v):
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "yes" if v else "no"
        return v if isinstance(v, str) else json.dumps(v)

    return "\n".join(f"{k}: {scalar(v)}" for k, v in obj.items())


def _normalise_argv(argv):
    argv = list(argv)
    if len(argv) >= 2 and argv[0] in GROUPS and not argv[1].startswith("-"):
        argv[:2] = [f"{argv[0]}-{argv[1]}"]
    return argv


def main(argv=None) -> int:
    argv = _normalise_argv(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ParseError as exc:
        print(json.dumps({"error": "ParseError", "message": str(exc)}), file=sys.stderr)
        return 2
    except StoneSpaceError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("clause", "witness", "pair"):
            if hasattr(exc, attr):
                err[attr] = getattr(exc, attr)
        print(json.dumps(err, default=str), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": "InvalidInput", "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return 1
    print(_plain(result) if args.plain else json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
