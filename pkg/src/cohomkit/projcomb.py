"""Rational projective configurations and weight triangles.

Points are primitive integer vectors with positive first nonzero entry;
incidence is decided by exact rank.  Triangles are three multisets of
rational weights, classified into the two normal forms
({a}, {b}, {a+b}) and ({a, a+c}, {b, b+c}, {a-b, a+b+c}).
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, gcd, lcm

from ._linalg import Field, inverse, nullspace, rank, solve

Q = Field()


def normalize(v):
    """Primitive integer representative with first nonzero coordinate positive."""
    v = [Fraction(x) for x in v]
    if not any(v):
        raise ValueError("zero vector has no projective class")
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return tuple(ints) if first > 0 else tuple(-x for x in ints)


@dataclass(frozen=True)
class Configuration:
    dim: int
    points: tuple

    @classmethod
    def make(cls, dim, points):
        pts = []
        for p in points:
            if len(p) != dim + 1:
                raise ValueError(f"point {p} does not live in P^{dim}")
            q = normalize(p)
            if q not in pts:
                pts.append(q)
        return cls(dim, tuple(pts))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.make(int(data["dim"]), [[Fraction(x) for x in p] for p in data["points"]])

    def to_json(self):
        return {"dim": self.dim, "points": [list(p) for p in self.points]}

    def __len__(self):
        return len(self.points)

    def span_rank(self):
        return rank([list(p) for p in self.points]) if self.points else 0


def _rank(vectors):
    return rank([list(v) for v in vectors]) if vectors else 0


def on_line(p, q, r):
    return _rank([p, q, r]) <= 2


@dataclass(frozen=True)
class SGResult:
    kind: str  # "ordinary" or "collinear"
    pair: tuple = None
    rank: int = None

    def to_json(self):
        if self.kind == "ordinary":
            return {"kind": "ordinary", "line": [list(p) for p in self.pair]}
        return {"kind": "collinear", "rank": self.rank}


def sylvester_gallai_witness(cfg):
    """An ordinary line (through exactly two points) or a collinearity certificate."""
    pts = cfg.points
    if len(pts) < 2:
        raise ValueError("need at least two points")
    r = _rank(pts)
    if r <= 2:
        return SGResult("collinear", rank=r)
    for p, q in combinations(pts, 2):
        if not any(on_line(p, q, x) for x in pts if x != p and x != q):
            return SGResult("ordinary", pair=(p, q))
    raise RuntimeError("no ordinary line in a non-collinear configuration")


@dataclass(frozen=True)
class HansenWitness:
    hyperplane: tuple  # spanning configuration points
    exceptional: tuple  # the one point off the (d-2)-subspace
    subspace: tuple  # configuration points spanning the (d-2)-subspace

    def to_json(self):
        return {"hyperplane": [list(p) for p in self.hyperplane],
                "exceptional": list(self.exceptional),
                "subspace": [list(p) for p in self.subspace]}


def hansen_witness(cfg):
    """A point-spanned hyperplane all of whose points but one lie in a codimension-2 subspace."""
    d = cfg.dim
    pts = cfg.points
    if _rank(pts) != d + 1:
        raise ValueError("configuration does not span")
    seen = set()
    for basis in combinations(pts, d):
        if _rank(basis) != d:
            continue
        on = tuple(x for x in pts if _rank(list(basis) + [x]) == d)
        if on in seen:
            continue
        seen.add(on)
        for w in on:
            rest = [x for x in on if x != w]
            if _rank(rest) <= d - 1:
                return HansenWitness(tuple(basis), w, tuple(rest))
    raise RuntimeError("no Hansen hyperplane in a spanning configuration")


@dataclass(frozen=True)
class Violation:
    condition: str
    line: tuple

    def to_json(self):
        return {"condition": self.condition, "line": [list(p) for p in self.line]}


def _disjoint(omega, n):
    if set(omega.points) & set(n.points):
        raise ValueError("Omega and N must be disjoint")


def s2comb_check(omega, n):
    """(i) each line through two Omega-points has an N-point; (ii) each Omega-N line has another Omega-point."""
    _disjoint(omega, n)
    O, N = omega.points, n.points
    for p, q in combinations(O, 2):
        if not any(on_line(p, q, x) for x in N):
            return False, Violation("i", (p, q))
    for p in O:
        for x in N:
            if not any(on_line(p, x, y) for y in O if y != p):
                return False, Violation("ii", (p, x))
    return True, None


def extended_sg_check(omega, n):
    """(i) each line through two Omega-points has a third point of Omega or N; (ii) as in s2comb."""
    _disjoint(omega, n)
    O, N = omega.points, n.points
    for p, q in combinations(O, 2):
        if not any(on_line(p, q, x) for x in O + N if x != p and x != q):
            return False, Violation("i", (p, q))
    for p in O:
        for x in N:
            if not any(on_line(p, x, y) for y in O if y != p):
                return False, Violation("ii", (p, x))
    return True, None


# -- grid searches ------------------------------------------------------

def grid_points(dim, g):
    """Distinct projective points with a representative in {-g..g}^(dim+1)."""
    pts = set()
    for v in product(range(-g, g + 1), repeat=dim + 1):
        if any(v):
            pts.add(normalize(v))
    return sorted(pts)


class _Incidence:
    """Lines through pairs of grid points, as bitmasks of the points they contain."""

    def __init__(self, pts):
        self.pts = pts
        self.n = len(pts)
        masks = {}
        self.line = {}
        for i, j in combinations(range(self.n), 2):
            if (i, j) in self.line:
                continue
            members = [k for k in range(self.n) if k in (i, j) or on_line(pts[i], pts[j], pts[k])]
            m = 0
            for k in members:
                m |= 1 << k
            lid = len(masks)
            masks[lid] = m
            for a, b in combinations(members, 2):
                self.line[a, b] = lid
        self.mask = masks

    def line_of(self, i, j):
        return self.line[(i, j) if i < j else (j, i)]


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _orbit_reps(pts):
    """One point per class of the signed coordinate permutations."""
    seen, reps = set(), []
    for p in pts:
        key = tuple(sorted((abs(x) for x in p), reverse=True))
        if key not in seen:
            seen.add(key)
            reps.append(pts.index(normalize(key)) if normalize(key) in pts else pts.index(p))
    return reps


@dataclass
class SweepReport:
    grid: int
    max_points: int
    points: int
    seeds: int = 0
    states: int = 0
    counterexamples: list = field(default_factory=list)

    def to_json(self):
        return {"grid": self.grid, "max_points": self.max_points, "grid_points": self.points,
                "seeds": self.seeds, "states": self.states,
                "counterexamples": [[list(p) for p in c] for c in self.counterexamples]}


def sg_sweep(grid=2, max_points=8):
    """Search P^2 over the grid for non-collinear sets of <= max_points without an ordinary line.

    Such a set T contains a non-collinear triple; by symmetry one of its
    points may be taken as an orbit representative.  From a subset S of T
    any line meeting S in exactly two points contains a further point of
    T, so branching over the grid points of that line reaches T.  The
    search is therefore exhaustive; an empty counterexample list confirms
    the Sylvester-Gallai property for every such configuration.
    """
    pts = grid_points(2, grid)
    inc = _Incidence(pts)
    rep = SweepReport(grid, max_points, len(pts))
    visited = set()

    def dfs(mask, members):
        if mask in visited:
            return
        visited.add(mask)
        rep.states += 1
        best = None
        for a, b in combinations(members, 2):
            lm = inc.mask[inc.line_of(a, b)]
            if bin(lm & mask).count("1") == 2:
                cand = lm & ~mask
                if not cand:
                    return
                if best is None or bin(cand).count("1") < bin(best).count("1"):
                    best = cand
        if best is None:
            rep.counterexamples.append(tuple(pts[k] for k in members))
            return
        if len(members) >= max_points:
            return
        for q in _bits(best):
            dfs(mask | 1 << q, members + [q])

    for r in _orbit_reps(pts):
        for s, t in combinations(range(len(pts)), 2):
            if r in (s, t) or on_line(pts[r], pts[s], pts[t]):
                continue
            rep.seeds += 1
            dfs((1 << r) | (1 << s) | (1 << t), sorted((r, s, t)))
    return rep


def sg_bruteforce(grid=1, max_points=6, dim=2):
    """Run both witnesses on every subset of the grid up to max_points and cross-check them.

    In P^2 a Hansen hyperplane is exactly an ordinary line, so both must
    succeed on every spanning subset.
    """
    pts = grid_points(dim, grid)
    count = 0
    for k in range(2, max_points + 1):
        for sub in combinations(pts, k):
            cfg = Configuration(dim, sub)
            res = sylvester_gallai_witness(cfg)
            if cfg.span_rank() == dim + 1:
                if res.kind != "ordinary":
                    raise RuntimeError(f"no ordinary line in spanning configuration {sub}")
                if dim == 2 and len(hansen_witness(cfg).subspace) != 1:
                    raise RuntimeError(f"Hansen hyperplane is not an ordinary line for {sub}")
            count += 1
    return count


def dimension_bound_search(d, grid, condition="s2comb", max_points=8):
    """Largest projective dimension spanned by Omega over (Omega, N) grid configurations.

    A spanning Omega in projective dimension r contains r+1 independent
    points; each of the comb(r+1, 2) lines through two of them needs a
    further point of its own, so r+1+comb(r+1, 2) > max_points excludes r
    outright.  Remaining dimensions are searched depth-first inside a
    coordinate subspace until an example is found.
    """
    if not 2 <= d <= 5 or not 1 <= grid <= 2:
        raise ValueError("need 2 <= d <= 5 and 1 <= grid <= 2")
    if condition not in ("s2comb", "extended"):
        raise ValueError("condition must be 's2comb' or 'extended'")
    per_dim, example, best = {}, None, 0
    for r in range(d, 0, -1):
        if r + 1 + comb(r + 1, 2) > max_points:
            per_dim[r] = "excluded by counting bound"
            continue
        found = _closure_search(r, grid, condition, max_points)
        if found:
            per_dim[r] = "found"
            best = r
            om, nn = found
            pad = (0,) * (d - r)
            example = {"omega": [list(p) + list(pad) for p in om], "n": [list(p) + list(pad) for p in nn]}
            break
        per_dim[r] = "none"
    return {"d": d, "grid": grid, "condition": condition, "max_points": max_points,
            "max_span_dim": best, "per_dim": {str(k): v for k, v in sorted(per_dim.items())},
            "example": example}


def _closure_search(r, grid, condition, max_points):
    """Some (Omega, N) in P^r satisfying the condition with Omega spanning, or None."""
    pts = grid_points(r, grid)
    inc = _Incidence(pts)
    visited = set()

    def violation(om, nn):
        S = om | nn
        oml = list(_bits(om))
        for a, b in combinations(oml, 2):
            lm = inc.mask[inc.line_of(a, b)]
            third = lm & (nn if condition == "s2comb" else S & ~((1 << a) | (1 << b)))
            if not third:
                return ("i", lm & ~S)
        for a in oml:
            for x in _bits(nn):
                lm = inc.mask[inc.line_of(a, x)]
                if not (lm & om & ~(1 << a)):
                    return ("ii", lm & ~S)
        return None

    def dfs(om, nn):
        key = (om, nn)
        if key in visited:
            return None
        visited.add(key)
        v = violation(om, nn)
        if v is None:
            return om, nn
        if bin(om | nn).count("1") >= max_points or not v[1]:
            return None
        for q in _bits(v[1]):
            if v[0] == "ii" or condition == "extended":
                got = dfs(om | 1 << q, nn)
                if got:
                    return got
            if v[0] == "i":
                got = dfs(om, nn | 1 << q)
                if got:
                    return got
        return None

    for rep in _orbit_reps(pts):
        for rest in combinations(range(len(pts)), r):
            if rep in rest:
                continue
            seed = (rep,) + rest
            if _rank([pts[k] for k in seed]) != r + 1:
                continue
            om = 0
            for k in seed:
                om |= 1 << k
            got = dfs(om, 0)
            if got:
                return [pts[k] for k in _bits(got[0])], [pts[k] for k in _bits(got[1])]
    return None


# -- triangles -----------------------------------------------------------

def _vec(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class Triangle:
    A: tuple
    B: tuple
    C: tuple

    @classmethod
    def make(cls, A, B, C):
        t = cls(tuple(map(_vec, A)), tuple(map(_vec, B)), tuple(map(_vec, C)))
        dims = {len(v) for v in t.A + t.B + t.C}
        if len(dims) > 1:
            raise ValueError("weights must share one ambient dimension")
        if any(not any(v) for v in t.A + t.B + t.C):
            raise ValueError("zero weight")
        return t

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.make(*([[Fraction(x) for x in v] for v in data[k]] for k in "ABC"))

    @property
    def d(self):
        return len((self.A + self.B + self.C)[0])

    @property
    def sets(self):
        return (self.A, self.B, self.C)


def _in_span(v, span_vectors):
    if not span_vectors:
        return not any(v)
    return _rank(list(span_vectors) + [v]) == _rank(span_vectors)


def triangle_axioms_check(t, lindep=False):
    """Equal sizes, and in every 2-plane spanned by weights of two different sets equal counts, at most 2.

    With lindep=True the product-dependence condition is required as well.
    """
    m = len(t.A)
    if len(t.B) != m or len(t.C) != m:
        return False, "sets have different sizes"
    for X, Y in combinations(t.sets, 2):
        for x in X:
            for y in Y:
                if _rank([x, y]) < 2:
                    continue
                counts = [sum(1 for w in S if _in_span(w, [x, y])) for S in t.sets]
                if len(set(counts)) > 1:
                    return False, f"unequal counts {counts} in the plane spanned by {_fmt(x)}, {_fmt(y)}"
                if counts[0] > 2:
                    return False, f"count {counts[0]} > 2 in the plane spanned by {_fmt(x)}, {_fmt(y)}"
    if lindep and not lindep_products_check(t):
        return False, "products of the three weight sets are linearly independent"
    return True, None


def _fmt(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def _poly_product(vectors, d):
    poly = {(0,) * d: Fraction(1)}
    for v in vectors:
        nxt = {}
        for mono, c in poly.items():
            for k, x in enumerate(v):
                if x:
                    e = list(mono)
                    e[k] += 1
                    e = tuple(e)
                    nxt[e] = nxt.get(e, 0) + c * x
        poly = {k: c for k, c in nxt.items() if c}
    return poly


def lindep_products_check(t):
    """The products of A, B and C, as polynomials, are linearly dependent."""
    d = t.d
    polys = [_poly_product(S, d) for S in t.sets]
    monos = sorted(set().union(*polys))
    return rank([[p.get(m, 0) for m in monos] for p in polys]) <= 2


@dataclass(frozen=True)
class TriangleClassification:
    kind: str  # "type1", "type2", "not_transversal", "axiom_violation"
    a: tuple = None
    b: tuple = None
    c: tuple = None
    basis_change: tuple = None
    scalars: dict = None
    normal_form: dict = None
    reason: str = None

    @property
    def m(self):
        return len(self.normal_form["A"]) if self.normal_form else None

    def to_json(self):
        def enc(v):
            return None if v is None else [str(x) for x in v]

        out = {"kind": self.kind}
        if self.kind in ("type1", "type2"):
            out.update({
                "a": enc(self.a), "b": enc(self.b), "c": enc(self.c),
                "basis_change": [enc(row) for row in self.basis_change],
                "scalars": {k: [str(s) for s in v] for k, v in self.scalars.items()},
                "normal_form": {k: [enc(v) for v in vs] for k, vs in self.normal_form.items()},
            })
        if self.reason:
            out["reason"] = self.reason
        return out


def _violation(reason):
    return TriangleClassification("axiom_violation", reason=reason)


def _span_basis(vectors):
    from ._linalg import rref

    red, piv = rref([list(v) for v in vectors], Q)
    return [tuple(r) for r in red[:len(piv)]]


def _intersection(U, V, d):
    """Basis of span(U) intersected with span(V)."""
    if not U or not V:
        return []
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    rows = [[c[i] for c in cols] for i in range(d)]
    ker = nullspace(rows, len(cols), Q)
    out = []
    for z in ker:
        w = tuple(sum(z[k] * U[k][i] for k in range(len(U))) for i in range(d))
        out.append(w)
    return _span_basis(out) if out else []


def triangle_classify(t):
    """Bring a transversal triangle to one of the two normal forms, following the constructive proof."""
    m = len(t.A)
    if len(t.B) != m or len(t.C) != m:
        return _violation("sets have different sizes")
    d = t.d
    SA, SB = _span_basis(t.A), _span_basis(t.B)
    if all(_in_span(a, SB) for a in t.A) or all(_in_span(b, SA) for b in t.B):
        return TriangleClassification("not_transversal", reason="one span contains the other")
    classes = [{normalize(v) for v in S} for S in t.sets]
    if classes[0] & classes[1] or classes[0] & classes[2] or classes[1] & classes[2]:
        return _violation("weight sets are not disjoint")

    def key(v):
        return normalize(v)

    a = min((v for v in t.A if not _in_span(v, SB)), key=key)
    b = min((v for v in t.B if not _in_span(v, SA)), key=key)
    inter = _intersection(SA, SB, d)
    frame = [a, b] + inter
    if _rank(frame) != len(frame):
        return _violation("a, b and the common span are dependent")
    cols = [[f[i] for f in frame] for i in range(d)]

    def coords(v):
        z = solve(cols, list(v), Q)
        if z is None:
            return None
        return z[0], z[1], tuple(z[2:])

    parts = {}
    for name, S in zip("ABC", t.sets):
        out = []
        for v in S:
            z = coords(v)
            if z is None:
                return _violation(f"weight {_fmt(v)} lies outside <a> + <b> + (<A> meet <B>)")
            out.append(z)
        parts[name] = out
    if any(beta != 0 or alpha == 0 for alpha, beta, _ in parts["A"]):
        return _violation("a weight of A has a b-component or no a-component")
    if any(alpha != 0 or beta == 0 for alpha, beta, _ in parts["B"]):
        return _violation("a weight of B has an a-component or no b-component")
    if any(alpha == 0 or beta == 0 for alpha, beta, _ in parts["C"]):
        return _violation("a weight of C misses the a- or b-component")
    RA = [tuple(x / alpha for x in R) for alpha, _, R in parts["A"]]
    RB = [tuple(x / beta for x in R) for _, beta, R in parts["B"]]
    CG = [(beta / alpha, tuple(x / alpha for x in R)) for alpha, beta, R in parts["C"]]
    zero = tuple(Fraction(0) for _ in inter)

    # pair every c with a b in the plane <a, b_i>
    for g, R in CG:
        target = tuple(x / g for x in R)
        if target not in RB:
            return _violation("a weight of C lies in no plane <a, b_i>")
    for R in set(RB):
        nb = RB.count(R)
        nc = sum(1 for g, Rc in CG if tuple(x / g for x in Rc) == R)
        if nb != nc:
            return _violation("planes <a, b_i> hold unequal numbers of B- and C-weights")
    if zero not in RA or zero not in RB:
        return _violation("no residue-free weight in A or B")
    g1 = min((g for g, R in CG if R == zero))
    # b' = -g1 * b so that the first C-weight in <a, b> reads a - b'
    s = -g1
    RB = [tuple(x * s for x in R) for R in RB]
    CG = [(g / s, R) for g, R in CG]
    nonzero = sorted({R for R in RB if R != zero})
    bprime = tuple(s * x for x in b)

    def lift(R):
        return tuple(sum(R[k] * inter[k][i] for k in range(len(inter))) for i in range(d))

    if not nonzero:
        if any(R != zero for R in RA) or any(R != zero for _, R in CG):
            return _violation("residues of A or C do not match those of B")
        gammas = sorted(g for g, _ in CG)
        if m == 1:
            bnf = tuple(-x for x in bprime)
            return _finish(t, "type1", a, bnf, None)
        if m == 2:
            if gammas != [-1, 1]:
                return _violation("products of the three sets are independent")
            return _finish(t, "type2", a, bprime, tuple(Fraction(0) for _ in a))
        return _violation(f"multiplicity {m} > 2 in the plane <a, b>")
    if len(nonzero) > 1:
        return _violation("more than one residue; the span construction does not close up")
    R = nonzero[0]
    if m != 2 or sorted(RA) != sorted([zero, R]) or sorted(RB) != sorted([zero, R]):
        return _violation("residue multiplicities differ between A and B")
    if sorted(CG) != sorted([(Fraction(-1), zero), (Fraction(1), R)]):
        return _violation("C does not match a - b, a + b + c")
    return _finish(t, "type2", a, bprime, lift(R))


def _finish(t, kind, a, b, c):
    d = len(a)
    e = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]

    def add(*vs):
        return tuple(sum(x) for x in zip(*vs))

    def neg(v):
        return tuple(-x for x in v)

    if kind == "type1":
        targets = {"A": [a], "B": [b], "C": [add(a, b)]}
        images = {"A": [e[0]], "B": [e[1]], "C": [add(e[0], e[1])]}
        frame = [a, b]
    else:
        targets = {"A": [a, add(a, c)], "B": [b, add(b, c)], "C": [add(a, neg(b)), add(a, b, c)]}
        cz = e[2] if any(c) else tuple(Fraction(0) for _ in range(d))
        images = {"A": [e[0], add(e[0], cz)], "B": [e[1], add(e[1], cz)],
                  "C": [add(e[0], neg(e[1])), add(e[0], e[1], cz)]}
        frame = [a, b] + ([c] if any(c) else [])
    for v in e:
        if _rank(frame + [v]) > len(frame):
            frame.append(v)
    P = [[f[i] for f in frame] for i in range(d)]
    M = inverse(P, Q)
    scalars, normal = {}, {}
    for name, S in zip("ABC", t.sets):
        left = list(range(len(targets[name])))
        sc, nf = [], []
        for w in S:
            hit = next((k for k in left if _rank([w, targets[name][k]]) == 1), None)
            if hit is None:
                return _violation(f"weight {_fmt(w)} of {name} has no normal-form partner")
            left.remove(hit)
            tgt = targets[name][hit]
            k = next(i for i, x in enumerate(w) if x)
            lam = tgt[k] / w[k]
            mapped = tuple(sum(M[i][j] * lam * w[j] for j in range(d)) for i in range(d))
            if mapped != images[name][hit]:
                return _violation("normal form verification failed")
            sc.append(lam)
            nf.append(images[name][hit])
        scalars[name], normal[name] = sc, nf
    return TriangleClassification(kind, a, b, c, tuple(tuple(r) for r in M), scalars, normal)


def normal_form_triangle(kind, d=4, c_zero=False):
    """The normal forms with a, b, c the first standard vectors of Q^d."""
    e = [[int(i == j) for j in range(d)] for i in range(d)]
    a, b = e[0], e[1]
    c = [0] * d if c_zero else e[2]
    if kind == "type1":
        return Triangle.make([a], [b], [[x + y for x, y in zip(a, b)]])
    return Triangle.make([a, [x + y for x, y in zip(a, c)]],
                         [b, [x + y for x, y in zip(b, c)]],
                         [[x - y for x, y in zip(a, b)], [x + y + z for x, y, z in zip(a, b, c)]])


def random_image(t, rng, entries=3):
    """Apply a random invertible integer matrix, random nonzero scalars and shuffles."""
    d = t.d
    while True:
        g = [[rng.randint(-entries, entries) for _ in range(d)] for _ in range(d)]
        if rank(g) == d:
            break
    out = []
    for S in t.sets:
        imgs = []
        for v in S:
            s = Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 4))
            imgs.append(tuple(s * sum(g[i][j] * v[j] for j in range(d)) for i in range(d)))
        rng.shuffle(imgs)
        out.append(imgs)
    return Triangle.make(*out)
