"""Verification batteries shared by the CLI sweeps and the acceptance tests.

Each battery yields (name, ok, detail) records; detail carries a minimal
reproducer when ok is False.
"""
import json
import random
from fractions import Fraction
from importlib import resources
from math import gcd

from . import periodicity as per
from . import projcomb as pc
from . import steenrod as st
from . import weightsets as wsets
from .symmfunc import (
    SymFunc,
    enumerate_matchings,
    mult_monomial,
    parse_partition,
    parse_symfunc,
    partitions,
)


def load_data(name):
    return json.loads(resources.files("cohomkit").joinpath("data").joinpath(name).read_text())


# -- symmetric functions / Steenrod ---------------------------------------

def worked_products():
    for ex in load_data("worked_product.json")["examples"]:
        a, b = parse_partition(ex["a"]), parse_partition(ex["b"])
        got = mult_monomial(a, b)
        ok = got == parse_symfunc(ex["product"]) and len(enumerate_matchings(a, b)) == ex["matchings"]
        yield f"worked product {ex['a']}*{ex['b']}", ok, str(got)


def cartan_battery(primes, weight):
    for p in primes:
        ctx = st.PrimeContext(p)
        for w1 in range(weight + 1):
            for w2 in range(weight + 1 - w1):
                for a in partitions(w1):
                    for b in partitions(w2):
                        f, g = SymFunc.monomial(a), SymFunc.monomial(b)
                        for i in range(w1 + w2 + 1):
                            if not st.verify_cartan(ctx, i, f, g):
                                yield f"Cartan p={p}", False, f"i={i} f={a} g={b}"
                                return
        yield f"Cartan p={p} total weight <= {weight}", True, ""


def adem_battery(primes, weight, max_ab=4):
    for p in primes:
        ctx = st.PrimeContext(p)
        n = 0
        for b in range(1, max_ab + 1):
            for a in range(0, max_ab + 1 - b):
                if a < p * b:
                    if not st.verify_adem_instance(ctx, a, b, weight):
                        yield f"Adem p={p}", False, f"a={a} b={b} weight<={weight}"
                        return
                    n += 1
        yield f"Adem p={p}: {n} instances, a+b <= {max_ab}, weight <= {weight}", True, ""


def wu_battery(kmax=12):
    for k in range(kmax + 1):
        for i in range(k // 2 + 1):
            if not st.verify_wu(k, i):
                yield "Wu", False, f"k={k} i={i}"
                return
    yield f"Wu k <= {kmax}", True, ""


def bp_battery(primes, kmax=20):
    n = 0
    for p in primes:
        for k in range(1, kmax + 1):
            i = 0
            while k - (p - 1) * i >= 1:
                try:
                    st.bp_leading_coefficient(p, k, i)
                except st.ConsistencyError as e:
                    yield "Brown-Peterson", False, str(e)
                    return
                n += 1
                i += 1
    yield f"Brown-Peterson k <= {kmax}: {n} coefficients", True, ""


def chern_profile_p5():
    prof = st.chern_coefficient_profile(st.PrimeContext(5), 1, 2)
    rest = [key for key in prof.terms if key not in ((6,), (3, 3))]
    ok = prof[(6,)] == 1 and prof[(3, 3)] == 2 and all(1 in key or 2 in key for key in rest)
    yield "P^1(c2) at p=5 = c6 + 2c3^2 + R", ok, str(prof)


def decompose_battery(primes, kmax=30):
    n, cases = 0, set()
    for p in primes:
        for k in st.eligible_indices(p, kmax):
            cert = st.decompose_chern(p, k)
            if not cert.verified:
                yield "decompose_chern", False, f"p={p} k={k}"
                return
            if p == 2:
                cases.add(cert.lam % 4)
            n += 1
    yield f"decompose_chern k <= {kmax}: {n} certificates (p=2 residues {sorted(cases)})", True, ""


def sl_battery(primes, weight, jobs=1):
    for p in primes:
        ok, bad = st.verify_sl_ideal(p, 1, weight, jobs=jobs, counterexample=True)
        yield f"S_1 ideal p={p} weight <= {weight}", ok, "" if ok else f"pm={bad[0]} po={bad[1]} pn={bad[2]}"


def descent_battery(primes=(3, 5, 7)):
    for p in primes:
        for lam in range(p + 1, 4 * p + 1):
            if lam % p == 0:
                continue
            tr = st.descent_trace(p, lam)
            if tr.witness_a is None or tr.witness_a > (p - 1) // 2:
                yield "descent", False, f"p={p} lambda={lam}"
                return
            if lam == p + 1 and tr.witness_a != (p - 1) // 2:
                yield "descent optimality", False, f"p={p}"
                return
        yield f"descent p={p}, lambda <= {4 * p}", True, ""


def steenrod_suite(primes=(2, 3, 5), weight=6, sl_weight=12, jobs=1):
    yield from worked_products()
    yield from cartan_battery(primes, weight)
    yield from adem_battery([p for p in primes if p in (2, 3)], weight)
    yield from wu_battery()
    yield from bp_battery(primes)
    yield from chern_profile_p5()
    yield from decompose_battery(primes)
    yield from sl_battery([p for p in primes if p in (2, 3)], sl_weight, jobs)
    yield from descent_battery()


# -- weight sets -------------------------------------------------------------

def weight_suite(jobs=1):
    table = wsets.classify_all(jobs=jobs)
    hist = table.histogram
    nsplit = sum(c.splitting_t3 for c in table.classes)
    ok = hist == {4: 1, 5: 3, 6: 4, 7: 4, 8: 2, 9: 2, 10: 1} and nsplit == 15
    yield (f"{len(table.classes)} classes, histogram {{{','.join(f'{k}:{v}' for k, v in sorted(hist.items()))}}}, "
           f"splitting {nsplit}/{len(table.classes) - nsplit}"), ok, ""
    basis = list(wsets.BASIS)
    t1 = [basis + [tuple(v) for v in c["extra"]] for c in load_data("weight_classes.json")["classes"]]
    t2 = [basis + [tuple(v) for v in c["extra"]] for c in load_data("weight_classes_positive.json")["classes"]]
    flags = [c["splitting_t3"] for c in load_data("weight_classes.json")["classes"]]
    forms = {c.weights for c in table.classes}
    f1 = [wsets.canonical_form(w) for w in t1]
    f2 = [wsets.canonical_form(w) for w in t2]
    yield "golden classes match the classification set by set", set(f1) == forms and len(set(f1)) == 17, ""
    yield "golden splitting flags", [wsets.splitting_t3(w) is not None for w in t1] == flags, ""
    yield "positive-basis golden classes are row-by-row equivalent", f1 == f2 and len(set(f2)) == 17, ""


# -- periodicity ---------------------------------------------------------------

def _elements(A, degree):
    """Elements of H^degree for the sums check: all over small F_p, scalar samples otherwise."""
    cands, _ = A.candidates(degree)
    if A.field.p is not None:
        scalars = range(1, A.field.p)
    else:
        scalars = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)]
    out = []
    for y in cands:
        for s in scalars:
            e = A.scale(s, y)
            if e not in out:
                out.append(e)
    return out


def periodicity_properties(A):
    """Factor closure, gcd closure, sums and definition consistency on one algebra."""
    report = per.periodicity_spectrum(A)
    spec = set(report.spectrum)
    for k in spec:
        for l in spec:
            if gcd(k, l) not in spec:
                return False, f"gcd({k},{l}) not in spectrum {sorted(spec)}"
    for k in range(1, A.n + 1):
        inducers, _ = per._inducer_reps(A, k)
        for x in inducers:
            if not per.satisfies_cup_condition(A, x):
                return False, f"inducer {x} fails the cup condition"
            # factor closure, positive-degree factors
            for d in range(1, k):
                for y in A.candidates(d)[0]:
                    z = per.divide(A, x, y)
                    if z is not None and not (per.induces_periodicity(A, y) and per.induces_periodicity(A, z)):
                        return False, f"x={x} = y*z with y={y}, z={z}"
            # sums, when cup x maps H^0 onto H^|x| (the hypothesis the argument uses)
            if per._map_rank(A, x, 0) == A.dims[k]:
                for y in _elements(A, k):
                    z = A.add(x, A.scale(-1, y))
                    if not (per.induces_periodicity(A, y) or per.induces_periodicity(A, z)):
                        return False, f"x={x} = y+z with y={y}, z={z}"
                    if not y.is_zero() and not per.induces_periodicity(A, y):
                        return False, f"nonzero {y} in the degree of inducer {x}"
    return True, ""


def periodicity_suite():
    for field in ("Q", "Fp:3"):
        for name, A in per.model_algebras(field).items():
            ok, detail = periodicity_properties(A)
            yield f"{name} over {field}: closure properties", ok, detail
        cay = per.periodicity_spectrum(per.model("cayley_plane", field))
        yield f"cayley_plane over {field}: 8 in spectrum, 4 not", 8 in cay.spectrum and 4 not in cay.spectrum, str(cay.spectrum)
        for m in range(2, 5):
            r = per.periodicity_spectrum(per.model("cp", field, m))
            yield f"cp({m}) over {field}: minimal degree 2", r.minimal_degree == 2, str(r.spectrum)
        for m in range(2, 4):
            r = per.periodicity_spectrum(per.model("hp", field, m))
            yield f"hp({m}) over {field}: minimal degree 4", r.minimal_degree == 4, str(r.spectrum)


# -- projective configurations and triangles -------------------------------------------------------------------

def projective_suite(seed=20240601, images=50, grid=2, max_points=8):
    rng = random.Random(seed)
    for kind, cz in (("type1", False), ("type2", False), ("type2", True)):
        t = pc.normal_form_triangle(kind, c_zero=cz)
        ok, reason = pc.triangle_axioms_check(t, lindep=True)
        cls = pc.triangle_classify(t)
        label = kind + (" (c=0)" if cz else "")
        yield f"{label} normal form passes the axioms and classifies to itself", ok and cls.kind == kind, reason or ""
        bad = None
        for n in range(images):
            img = pc.random_image(t, rng)
            res = pc.triangle_classify(img)
            if res.kind != kind or res.m > 2:
                bad = f"image {n}: {res.kind} {res.reason}"
                break
        yield f"{label}: {images} random images round-trip (seed {seed})", bad is None, bad or ""
    a, b = [1, 0, 0, 0], [0, 1, 0, 0]
    amb = [x - y for x, y in zip(a, b)]
    t = pc.Triangle.make([a, a], [b, b], [amb, amb])
    counts_ok, _ = pc.triangle_axioms_check(t)
    yield "({a,a},{b,b},{a-b,a-b}) passes counts, fails lindep", counts_ok and not pc.lindep_products_check(t), ""
    rep = pc.sg_sweep(grid, max_points)
    yield (f"Sylvester-Gallai: no counterexample among <= {max_points} points of the {{-{grid}..{grid}}} grid "
           f"({rep.seeds} seeds, {rep.states} states)"), not rep.counterexamples, str(rep.counterexamples[:1])
    n = pc.sg_bruteforce(1, 5)
    yield f"Sylvester-Gallai and Hansen agree on all {n} subsets of the {{-1..1}} grid up to 5 points", True, ""
    for d, cond in ((2, "s2comb"), (3, "s2comb"), (3, "extended")):
        r = pc.dimension_bound_search(d, 1, cond)
        yield f"{cond} configurations in P^{d} (grid 1) span at most P^2", r["max_span_dim"] <= 2, str(r["per_dim"])
