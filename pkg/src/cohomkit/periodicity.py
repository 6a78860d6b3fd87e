"""Finite graded-commutative algebras and cohomological periodicity.

An element x of degree k in an algebra of formal dimension n induces
periodicity when either
  (1) k <= n/2, cup x: H^i -> H^{i+k} is injective for 0 < i <= n-k and
      surjective for 0 <= i < n-k, or
  (2) k <= n and x is a product of such elements.
Products of several factors are reached by recursive two-factor search.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ._linalg import Field, rank, solve

SEARCH_BOUND = 10 ** 5


@dataclass(frozen=True)
class Element:
    degree: int
    coords: tuple

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return f"H^{self.degree}{list(map(str, self.coords))}"


class GradedAlgebra:
    """Structure constants for H^a x H^b -> H^{a+b}, a+b <= n; immutable after validation."""

    def __init__(self, field, n, dims, tables):
        self.field = field
        self.n = n
        self.dims = tuple(dims)
        self._tables = tables
        self._inducers = {}

    # -- elements ------------------------------------------------------
    def element(self, degree, coords):
        if not 0 <= degree <= self.n:
            raise ValueError(f"degree {degree} outside 0..{self.n}")
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.dims[degree]:
            raise ValueError(f"H^{degree} has dimension {self.dims[degree]}, got {len(coords)} coordinates")
        return Element(degree, coords)

    def zero(self, degree):
        return self.element(degree, [0] * self.dims[degree])

    def basis(self, degree):
        d = self.dims[degree]
        return [self.element(degree, [int(i == j) for j in range(d)]) for i in range(d)]

    @property
    def unit(self):
        return self.basis(0)[0]

    def mul(self, x, y):
        d = x.degree + y.degree
        if d > self.n:
            raise ValueError(f"product degree {d} exceeds n={self.n}")
        table = self._tables[x.degree, y.degree]
        out = [self.field(0)] * self.dims[d]
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for j, b in enumerate(y.coords):
                if not b:
                    continue
                for r, c in enumerate(table[i][j]):
                    out[r] = self.field(out[r] + a * b * c)
        return Element(d, tuple(out))

    def add(self, x, y):
        if x.degree != y.degree:
            raise ValueError("elements must share a degree")
        return Element(x.degree, tuple(self.field(a + b) for a, b in zip(x.coords, y.coords)))

    def scale(self, c, x):
        return Element(x.degree, tuple(self.field(c * a) for a in x.coords))

    def proportional(self, x, y):
        """x = c*y for some nonzero c (both nonzero)."""
        if x.is_zero() or y.is_zero():
            return False
        return rank([x.coords, y.coords], self.field) == 1

    def candidates(self, degree):
        """(list of elements up to nonzero scalars, exact flag) in H^degree."""
        d = self.dims[degree]
        zero = self.zero(degree)
        if d == 0:
            return [zero], True
        if self.field.p is not None and self.field.p ** d <= SEARCH_BOUND:
            out = [zero]
            for v in product(range(self.field.p), repeat=d):
                nz = next((c for c in v if c), 0)
                if nz == 1:
                    out.append(self.element(degree, v))
            return out, True
        if d == 1:
            return [zero, self.basis(degree)[0]], True
        base = self.basis(degree)
        out = [zero] + base
        for i in range(d):
            for j in range(i + 1, d):
                out.append(self.add(base[i], base[j]))
                out.append(self.add(base[i], self.scale(-1, base[j])))
        out.append(self.element(degree, [1] * d))
        return out, False

    # -- serialization -------------------------------------------------
    def to_json(self):
        def enc(c):
            return str(c) if isinstance(c, Fraction) else c

        structure = []
        for (a, b), table in sorted(self._tables.items()):
            if self.dims[a] and self.dims[b] and self.dims[a + b]:
                structure.append({"a": a, "b": b,
                                  "table": [[[enc(c) for c in cell] for cell in row] for row in table]})
        return {"field": self.field.name, "n": self.n, "dims": list(self.dims), "structure": structure}


def _identity_table(field, d):
    return [[tuple(field(int(r == j)) for r in range(d))] for j in range(d)]


def make_algebra(field, n, dims, structure):
    """Validate structure constants and fill in the rest.

    `structure` maps (a, b) to table[i][j] = coordinates of e_i^a e_j^b.
    Missing entries are filled from the unit, from the transposed entry by
    graded commutativity, and otherwise taken to be zero.
    """
    if isinstance(field, str):
        field = Field.parse(field)
    dims = list(dims)
    if len(dims) != n + 1 or any(d < 0 for d in dims):
        raise ValueError("dims must list dim H^0..H^n")
    if dims[0] != 1:
        raise ValueError("dim H^0 must be 1")
    given = {}
    for (a, b), table in dict(structure).items():
        if a + b > n:
            continue
        if len(table) != dims[a] or any(len(row) != dims[b] for row in table):
            raise ValueError(f"table ({a},{b}) has the wrong shape")
        cells = [[tuple(field(c) for c in cell) for cell in row] for row in table]
        if any(len(cell) != dims[a + b] for row in cells for cell in row):
            raise ValueError(f"table ({a},{b}) has the wrong target dimension")
        given[a, b] = cells
    tables = {}
    for a in range(n + 1):
        for b in range(n + 1 - a):
            if (a, b) in given:
                tables[a, b] = given[a, b]
            elif a == 0:
                tables[a, b] = [[row[0] for row in _identity_table(field, dims[b])]]
            elif b == 0:
                tables[a, b] = [[cell] for row in _identity_table(field, dims[a]) for cell in row]
            elif (b, a) in given:
                sign = -1 if (a * b) % 2 else 1
                t = given[b, a]
                tables[a, b] = [[tuple(field(sign * c) for c in t[j][i]) for j in range(dims[b])]
                                for i in range(dims[a])]
            else:
                tables[a, b] = [[tuple(field(0) for _ in range(dims[a + b]))] * dims[b]
                                for _ in range(dims[a])]
    A = GradedAlgebra(field, n, dims, tables)
    _validate(A)
    return A


def _validate(A):
    u = A.unit
    for d in range(A.n + 1):
        for e in A.basis(d):
            if A.mul(u, e) != e or A.mul(e, u) != e:
                raise ValueError(f"unit does not act as identity in degree {d}")
    for a in range(A.n + 1):
        for b in range(A.n + 1 - a):
            for x in A.basis(a):
                for y in A.basis(b):
                    sign = -1 if (a * b) % 2 else 1
                    if A.mul(x, y) != A.scale(sign, A.mul(y, x)):
                        raise ValueError(f"not graded-commutative in degrees ({a},{b})")
    for a in range(1, A.n + 1):
        for b in range(1, A.n + 1 - a):
            for c in range(1, A.n + 1 - a - b):
                for x in A.basis(a):
                    for y in A.basis(b):
                        for z in A.basis(c):
                            if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
                                raise ValueError(f"not associative in degrees ({a},{b},{c})")


def algebra_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    field = Field.parse(data["field"])
    structure = {}
    for entry in data.get("structure", []):
        structure[int(entry["a"]), int(entry["b"])] = [
            [[Fraction(c) if isinstance(c, str) else c for c in cell] for cell in row]
            for row in entry["table"]]
    return make_algebra(field, int(data["n"]), data["dims"], structure)


def _tensor_truncated(field, gens):
    """Tensor product of truncated polynomial algebras k[g]/(g^h), gens = [(degree, h)]."""
    exps = list(product(*[range(h) for _, h in gens]))
    deg = {e: sum(a * g for a, (g, _) in zip(e, gens)) for e in exps}
    n = max(deg.values())
    by_deg = {d: sorted((e for e in exps if deg[e] == d), reverse=True) for d in range(n + 1)}
    index = {e: i for d in by_deg for i, e in enumerate(by_deg[d])}
    dims = [len(by_deg[d]) for d in range(n + 1)]
    structure = {}
    for a in range(n + 1):
        for b in range(n + 1 - a):
            if not dims[a] or not dims[b] or not dims[a + b]:
                continue
            table = []
            for ea in by_deg[a]:
                row = []
                for eb in by_deg[b]:
                    cell = [0] * dims[a + b]
                    s = tuple(x + y for x, y in zip(ea, eb))
                    if all(x < h for x, (_, h) in zip(s, gens)):
                        sign = 1
                        for i in range(len(gens)):
                            for j in range(i):
                                if ea[i] * eb[j] * gens[i][0] * gens[j][0] % 2:
                                    sign = -sign
                        cell[index[s]] = sign
                    row.append(cell)
                table.append(row)
            structure[a, b] = table
    return make_algebra(field, n, dims, structure)


def model(name, field="Q", *params):
    """sphere(n), cp(m), hp(m), cayley_plane, sphere_cross_hp(h, k)."""
    if isinstance(field, str):
        field = Field.parse(field)
    if any(int(x) < 1 for x in params):
        raise ValueError("parameters must be positive")
    if name == "sphere":
        (n,) = params
        return _tensor_truncated(field, [(n, 2)])
    if name == "cp":
        (m,) = params
        return _tensor_truncated(field, [(2, m + 1)])
    if name == "hp":
        (m,) = params
        return _tensor_truncated(field, [(4, m + 1)])
    if name == "cayley_plane":
        if params:
            raise ValueError("cayley_plane takes no parameters")
        return _tensor_truncated(field, [(8, 3)])
    if name == "sphere_cross_hp":
        h, k = params
        if h not in (2, 3):
            raise ValueError("sphere_cross_hp needs h in {2, 3}")
        return _tensor_truncated(field, [(h, 2), (4, k + 1)])
    raise ValueError(f"unsupported model {name!r}")


def cup_map(A, x, i):
    """Matrix (rows = H^{i+|x|} coordinates) of left multiplication by x on H^i."""
    if i + x.degree > A.n:
        raise ValueError(f"degree overflow: {i} + {x.degree} > {A.n}")
    cols = [A.mul(x, e).coords for e in A.basis(i)]
    rows = A.dims[i + x.degree]
    return [[col[r] for col in cols] for r in range(rows)]


def _map_rank(A, x, i):
    m = cup_map(A, x, i)
    return rank(m, A.field) if m and m[0] else 0


def satisfies_cup_condition(A, x):
    """Injective for 0 < i <= n-k and surjective for 0 <= i < n-k."""
    k, n = x.degree, A.n
    for i in range(0, n - k + 1):
        r = _map_rank(A, x, i)
        if 0 < i and r < A.dims[i]:
            return False
        if i < n - k and r < A.dims[i + k]:
            return False
    return True


def _clause1(A, x):
    return 2 * x.degree <= A.n and satisfies_cup_condition(A, x)


def _inducer_reps(A, degree):
    """Candidate representatives in H^degree that induce periodicity, plus an exact flag."""
    if degree not in A._inducers:
        cands, exact = A.candidates(degree)
        A._inducers[degree] = ([y for y in cands if induces_periodicity(A, y)], exact)
    return A._inducers[degree]


def _clause2(A, x):
    k = x.degree
    if k > A.n:
        return False
    for d in range(1, k):
        ys, _ = _inducer_reps(A, d)
        if not ys:
            continue
        zs, _ = _inducer_reps(A, k - d)
        for y in ys:
            for z in zs:
                prod = A.mul(y, z)
                if x.is_zero() and prod.is_zero():
                    return True
                if A.proportional(prod, x):
                    return True
    return False


def induces_periodicity(A, x):
    if _clause1(A, x):
        return True
    if x.degree == 0:
        return False
    return _clause2(A, x)


@dataclass(frozen=True)
class PeriodicityReport:
    spectrum: tuple
    witnesses: dict
    minimal_degree: int
    exact: bool

    def to_json(self):
        return {
            "spectrum": list(self.spectrum),
            "witnesses": {str(k): [str(c) for c in v.coords] for k, v in sorted(self.witnesses.items())},
            "minimal_degree": self.minimal_degree,
            "exact": self.exact,
        }


def periodicity_spectrum(A):
    spectrum, witnesses, exact = [], {}, True
    for k in range(1, A.n + 1):
        reps, ex = _inducer_reps(A, k)
        exact = exact and ex
        if reps:
            spectrum.append(k)
            nonzero = [y for y in reps if not y.is_zero()]
            witnesses[k] = (nonzero or reps)[0]
    return PeriodicityReport(tuple(spectrum), witnesses, min(spectrum, default=None), exact)


def divide(A, x, y):
    """Some z with y*z = x (least coordinates: free variables zero), or None."""
    d = x.degree - y.degree
    if d < 0:
        raise ValueError("need |y| <= |x|")
    if A.dims[d] == 0:
        return A.zero(d) if x.is_zero() else None
    m = cup_map(A, y, d)
    if not m:
        return A.zero(d)
    z = solve(m, list(x.coords), A.field)
    return None if z is None else A.element(d, z)


def model_algebras(field="Q"):
    """The shipped model family used by the property sweeps."""
    out = {}
    for n in range(1, 9):
        out[f"sphere({n})"] = model("sphere", field, n)
    for m in range(1, 5):
        out[f"cp({m})"] = model("cp", field, m)
    for m in range(1, 4):
        out[f"hp({m})"] = model("hp", field, m)
    out["cayley_plane"] = model("cayley_plane", field)
    for h in (2, 3):
        for k in range(1, 4):
            out[f"sphere_cross_hp({h},{k})"] = model("sphere_cross_hp", field, h, k)
    return out
