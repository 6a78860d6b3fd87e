"""Command-line front end.

Exit status: 0 when the command succeeds or the check passes, 1 when a
verification comes back false, 2 on invalid input.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import periodicity as per
from . import projcomb as pc
from . import steenrod as st
from . import suites
from . import weightsets as wsets
from .symmfunc import SymFunc, mult, parse_partition, parse_symfunc


class InputError(ValueError):
    pass


def _default(o):
    if isinstance(o, Fraction):
        return str(o) if o.denominator != 1 else o.numerator
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _emit(obj):
    print(json.dumps(obj, default=_default))


def _load_json(arg):
    """Accept inline JSON or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")) and os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad JSON: {e}") from None


def _symfunc(text):
    try:
        return SymFunc.monomial(parse_partition(text))
    except ValueError:
        return parse_symfunc(text)


def _primes(text):
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None
    for p in out:
        st.PrimeContext(p)
    return out


# -- commands ------------------------------------------------------------------

def cmd_mult(a):
    f, g = _symfunc(a.f), _symfunc(a.g)
    prod = mult(f, g)
    if a.mod:
        st.PrimeContext(a.mod)
        prod = prod.reduce_mod(a.mod)
    _emit(prod.to_json()) if a.format == "json" else print(prod)
    return 0


def cmd_steenrod(a):
    res = st.steenrod_power(st.PrimeContext(a.p), a.i, _symfunc(a.f))
    _emit(res.to_json()) if a.format == "json" else print(res)
    return 0


def _report(a, ok, name, detail=None):
    if a.format == "json":
        out = {"check": name, "ok": ok}
        if detail is not None:
            out["detail"] = detail
        _emit(out)
    else:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    return 0 if ok else 1


def cmd_verify_wu(a):
    cases = [(a.k, a.i)] if a.i is not None else [(a.k, i) for i in range(a.k // 2 + 1)]
    for k, i in cases:
        if not st.verify_wu(k, i):
            return _report(a, False, "wu", f"k={k} i={i}")
    return _report(a, True, "wu", f"k={a.k}" + (f" i={a.i}" if a.i is not None else " all i"))


def cmd_verify_bp(a):
    try:
        c = st.bp_leading_coefficient(a.p, a.k, a.i)
    except st.ConsistencyError as e:
        return _report(a, False, "brown-peterson", str(e))
    if a.format == "json":
        _emit({"check": "brown-peterson", "ok": True, "p": a.p, "k": a.k, "i": a.i, "coefficient": c})
        return 0
    print(f"PASS brown-peterson p={a.p} k={a.k} i={a.i}: coefficient {c}")
    return 0


def cmd_verify_adem(a):
    ok = st.verify_adem_instance(st.PrimeContext(a.p), a.a, a.b, a.weight)
    return _report(a, ok, "adem", f"p={a.p} a={a.a} b={a.b} weight<={a.weight}")


def cmd_verify_sl(a):
    ok, bad = st.verify_sl_ideal(a.p, a.l, a.weight, jobs=a.jobs, counterexample=True)
    detail = f"p={a.p} l={a.l} weight<={a.weight}"
    if not ok:
        detail += f"; counterexample {bad}"
    return _report(a, ok, "sl-ideal", detail)


def cmd_decompose(a):
    cert = st.decompose_chern(a.p, a.k)
    if a.format == "json":
        _emit(cert.to_json())
    else:
        op = f"Sq^{2 * cert.op_exponent}" if a.p == 2 else f"P^{cert.op_exponent}"
        lead = "" if cert.leading_coeff == 1 else f"{cert.leading_coeff}^-1 "
        print(f"c_{a.k} = {lead}{op}(c_{cert.source_index}) + decomposables (mod {a.p})")
        print(f"decomposable part: {cert.decomposable_part}")
        print(f"verified: {cert.verified}")
    return 0 if cert.verified else 1


def cmd_descent(a):
    tr = st.descent_trace(a.p, a.lam)
    if a.format == "json":
        _emit({"p": tr.p, "lambda": tr.lam, "witness": tr.witness_a,
               "rows": [{"j": j, "a": x, "residue": r} for j, x, r in tr.rows]})
    else:
        print(f"{'j':>3} {'a_j':>4} {'a_j*lambda - j(p-1)':>20}")
        for j, x, r in tr.rows:
            print(f"{j:>3} {x:>4} {r:>20}")
        print(f"witness a = {tr.witness_a}")
    return 0 if tr.witness_a is not None else 1


def cmd_periodicity(a):
    if a.file:
        A = per.algebra_from_json(_load_json(a.file))
    elif a.model:
        A = per.model(a.model, a.field, *a.params)
    else:
        raise InputError("give --model or --file")
    rep = per.periodicity_spectrum(A)
    if a.format == "json":
        _emit(rep.to_json())
    else:
        print(f"spectrum: {', '.join(map(str, rep.spectrum)) or '(empty)'}")
        print(f"minimal degree: {rep.minimal_degree}")
        print(f"search: {'exact' if rep.exact else 'sampled'}")
    return 0


def _table_order(table):
    """Rows in the order of the shipped golden table, when every class is found there."""
    basis = list(wsets.BASIS)
    ref = [wsets.canonical_form(basis + [tuple(v) for v in c["extra"]])
           for c in suites.load_data("weight_classes.json")["classes"]]
    pos = {w: i for i, w in enumerate(ref)}
    if all(c.weights in pos for c in table.classes):
        return wsets.ClassificationTable(tuple(sorted(table.classes, key=lambda c: pos[c.weights])))
    return table


def cmd_classify(a):
    table = _table_order(wsets.classify_all(jobs=a.jobs))
    _emit(table.to_json()) if a.format == "json" else print(table.to_text())
    return 0


def _config(arg):
    return pc.Configuration.from_json(_load_json(arg))


def cmd_sg(a):
    res = pc.sylvester_gallai_witness(_config(a.config))
    if a.format == "json":
        _emit(res.to_json())
    elif res.kind == "ordinary":
        print(f"ordinary line through {res.pair[0]} and {res.pair[1]}")
    else:
        print(f"collinear (rank {res.rank})")
    return 0


def cmd_hansen(a):
    h = pc.hansen_witness(_config(a.config))
    if a.format == "json":
        _emit(h.to_json())
    else:
        print(f"hyperplane spanned by {list(h.hyperplane)}")
        print(f"exceptional point {h.exceptional}; remaining points {list(h.subspace)}")
    return 0


def cmd_s2comb(a):
    omega, n = _config(a.omega), _config(a.n)
    check = pc.extended_sg_check if a.extended else pc.s2comb_check
    ok, bad = check(omega, n)
    name = "extended-sg" if a.extended else "s2comb"
    return _report(a, ok, name, None if ok else bad.to_json())


def cmd_triangle(a):
    t = pc.Triangle.from_json(_load_json(a.triangle))
    if a.lindep and not pc.lindep_products_check(t):
        res = pc.TriangleClassification("axiom_violation", reason="products are linearly independent")
    else:
        res = pc.triangle_classify(t)
    if a.format == "json":
        _emit(res.to_json())
    else:
        print(f"kind: {res.kind}")
        if res.kind in ("type1", "type2"):
            for label, v in (("a", res.a), ("b", res.b), ("c", res.c)):
                if v is not None:
                    print(f"{label} = ({', '.join(map(str, v))})")
        elif res.reason:
            print(f"reason: {res.reason}")
    return 0 if res.kind in ("type1", "type2") else 1


SUITES = ("appendix-a", "appendix-b", "periodicity", "section-4")


def cmd_sweep(a):
    if a.suite == "appendix-a":
        records = suites.steenrod_suite(_primes(a.primes), a.weight, jobs=a.jobs)
    elif a.suite == "appendix-b":
        records = suites.weight_suite(jobs=a.jobs)
    elif a.suite == "periodicity":
        records = suites.periodicity_suite()
    else:
        records = suites.projective_suite()
    failed = 0
    for name, ok, detail in records:
        if a.format == "json":
            _emit({"check": name, "ok": ok, "detail": detail})
        else:
            print(f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}"))
        failed += not ok
    return 1 if failed else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="cohomkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "table", "json"), default="text",
                        help="text (alias: table) or json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("mult", cmd_mult, "multiply two symmetric functions in the monomial basis")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--mod", type=int, help="reduce coefficients mod this prime")

    p = add("steenrod", cmd_steenrod, "apply P^i (Sq^2i at p=2) to a symmetric function mod p")
    p.add_argument("f")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = add("verify-wu", cmd_verify_wu, "check the Wu formula for Sq^2i(c_k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, help="default: every i with 2i <= k")

    p = add("verify-bp", cmd_verify_bp, "leading Chern coefficient of P^i(c_{k-(p-1)i})")
    for f in ("--p", "--k", "--i"):
        p.add_argument(f, type=int, required=True)

    p = add("verify-adem", cmd_verify_adem, "check one Adem relation on every monomial up to a weight")
    for f in ("--p", "--a", "--b"):
        p.add_argument(f, type=int, required=True)
    p.add_argument("--weight", type=int, default=6)

    p = add("verify-sl", cmd_verify_sl, "check that S_l is stable under the Steenrod powers")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--weight", type=int, default=12)

    p = add("decompose-chern", cmd_decompose, "express c_k as a Steenrod image modulo decomposables")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("descent", cmd_descent, "residue table for the odd-prime descent argument")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)

    p = add("periodicity", cmd_periodicity, "periodicity spectrum of a finite graded algebra")
    p.add_argument("--model", choices=("sphere", "cp", "hp", "cayley_plane", "sphere_cross_hp"))
    p.add_argument("--params", type=int, nargs="*", default=[])
    p.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    p.add_argument("--file", help="algebra JSON, inline or a path")

    add("classify-weights", cmd_classify, "classify T^4 isotropy weight sets up to GL(4,Z)")

    p = add("sg-check", cmd_sg, "find an ordinary line or report collinearity")
    p.add_argument("config", help="configuration JSON, inline or a path")

    p = add("hansen-check", cmd_hansen, "find a Hansen hyperplane in a spanning configuration")
    p.add_argument("config")

    p = add("s2comb-check", cmd_s2comb, "check the two-colour line conditions on (Omega, N)")
    p.add_argument("omega")
    p.add_argument("n")
    p.add_argument("--extended", action="store_true", help="use the extended Sylvester-Gallai condition")

    p = add("triangle-classify", cmd_triangle, "classify a weight triangle into its normal form")
    p.add_argument("triangle", help="triangle JSON, inline or a path")
    p.add_argument("--lindep", action="store_true", help="also require the product-dependence condition")

    p = add("sweep", cmd_sweep, "run a verification battery")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--weight", type=int, default=6, help="Cartan and Adem weight bound for the Steenrod suite")
    p.add_argument("--primes", default="2,3,5")
    return ap


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.fn(args)
    except (ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
