"""Monomial symmetric functions with integer coefficients.

A partition (n_1 >= ... >= n_k) stands for the monomial symmetric function
m_n = sum of all distinct monomials x_{i_1}^{n_1} ... x_{i_k}^{n_k}.  With
degree-2 variables this is the additive basis of H*(BU); the elementary
symmetric function e_k = m_{(1^k)} is the Chern class c_k.
"""
import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby
from math import factorial
from types import MappingProxyType

from ._linalg import is_prime


class Partition(tuple):
    """Non-increasing tuple of positive integers.

    Python tuple order coincides with lexicographic order padded by zeros,
    because every part is positive.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def sorted(cls, parts):
        return cls(sorted((x for x in parts if x), reverse=True))

    @property
    def parts(self):
        return tuple(self)

    @property
    def weight(self):
        return sum(self)

    def multiplicities(self):
        """[(n_1, r_1), ...] with n_1 > n_2 > ..."""
        return [(n, len(list(g))) for n, g in groupby(self)]

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def power_notation(self):
        return "(" + ",".join(f"({n})^{r}" for n, r in self.multiplicities()) + ")"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self):
        return f"Partition({str(self)})"


_PLAIN = re.compile(r"^\(\s*(\d+\s*(?:,\s*\d+\s*)*)?\)$")
_POWER = re.compile(r"^\(\s*(\(\s*\d+\s*\)\s*\^\s*\d+\s*(?:,\s*\(\s*\d+\s*\)\s*\^\s*\d+\s*)*)\)$")


def parse_partition(text):
    """Read "(2,1,1)" or "((2)^1,(1)^2)"; "()" is the unit."""
    text = text.strip()
    m = _POWER.match(text)
    if m:
        pairs = [(int(a), int(b)) for a, b in re.findall(r"\(\s*(\d+)\s*\)\s*\^\s*(\d+)", m.group(1))]
        for (n1, _), (n2, _) in zip(pairs, pairs[1:]):
            if n1 <= n2:
                raise ValueError(f"power notation needs n_i > n_(i+1): {text!r}")
        if any(n <= 0 or r <= 0 for n, r in pairs):
            raise ValueError(f"non-positive entry in {text!r}")
        return Partition([n for n, r in pairs for _ in range(r)])
    m = _PLAIN.match(text)
    if not m:
        raise ValueError(f"cannot parse partition {text!r}")
    if m.group(1) is None:
        return Partition()
    return Partition(int(x) for x in m.group(1).split(","))


def compare_lex(a, b):
    """-1, 0 or 1, comparing from the left with zero padding."""
    a, b = tuple(a), tuple(b)
    n = max(len(a), len(b))
    a += (0,) * (n - len(a))
    b += (0,) * (n - len(b))
    return (a > b) - (a < b)


def partitions(n, max_part=None):
    """All partitions of n in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest)


class _Terms:
    """Shared immutable term-mapping behaviour."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[Partition(key)] = c
        self._terms = MappingProxyType(dict(sorted(clean.items(), reverse=True)))
        self._hash = None

    @property
    def terms(self):
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, key):
        return self._terms.get(Partition(key), 0)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        return type(other) is type(self) and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, tuple(self._terms.items())))
        return self._hash

    def _combine(self, other, sign):
        if type(other) is not type(self):
            return NotImplemented
        out = defaultdict(int, self._terms)
        for k, c in other._terms.items():
            out[k] += sign * c
        return type(self)(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def scale(self, c):
        return type(self)({k: c * v for k, v in self._terms.items()})

    def reduce_mod(self, p):
        if not is_prime(p):
            raise ValueError(f"not a prime: {p}")
        return type(self)({k: c % p for k, c in self._terms.items()})

    def _fmt_key(self, key):
        raise NotImplementedError

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for key, c in self._terms.items():
            body = self._fmt_key(key)
            mag = abs(c)
            s = body if mag == 1 and body != "1" else f"{mag}{body}" if body != "1" else str(mag)
            if not out:
                out.append(("-" if c < 0 else "") + s)
            else:
                out.append(("- " if c < 0 else "+ ") + s)
        return " ".join(out)

    def to_json(self):
        return {"terms": [{"parts": list(k), "coeff": c} for k, c in self._terms.items()]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        out = defaultdict(int)
        for t in data["terms"]:
            out[Partition.sorted(t["parts"])] += int(t["coeff"])
        return cls(out)


class SymFunc(_Terms):
    """Finite integer combination of monomial symmetric functions."""

    __slots__ = ()

    @classmethod
    def monomial(cls, parts, coeff=1):
        return cls({Partition(parts): coeff})

    @classmethod
    def one(cls):
        return cls.monomial(())

    @property
    def homogeneous_weight(self):
        weights = {k.weight for k in self._terms}
        return weights.pop() if len(weights) == 1 else None

    def is_homogeneous(self):
        return len(self._terms) <= 1 or self.homogeneous_weight is not None

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        return mult(self, other)

    __rmul__ = __mul__

    def _fmt_key(self, key):
        return str(key)

    def __repr__(self):
        return f"SymFunc({str(self)!r})"


class ChernPoly(_Terms):
    """Integer polynomial in Chern classes; a key (k_1,...,k_r) is c_{k_1}...c_{k_r}."""

    __slots__ = ()

    @classmethod
    def c(cls, k):
        return cls({Partition((k,)): 1})

    def _fmt_key(self, key):
        if not key:
            return "1"
        return "".join(f"c{n}" + (f"^{r}" if r > 1 else "") for n, r in key.multiplicities())

    def __repr__(self):
        return f"ChernPoly({str(self)!r})"


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\(\s*(?:\(\s*\d+\s*\)\s*\^\s*\d+|\d+)?[^()]*(?:\([^()]*\)[^()]*)*\))\s*")


def parse_symfunc(text):
    """Read e.g. "(4,2,1) + 3(4,1,1,1) - 2((1)^2)" or "0"."""
    text = text.strip()
    if text == "0":
        return SymFunc()
    pos, out, first = 0, defaultdict(int), True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse symmetric function at {text[pos:]!r}")
        sign, coeff, lit = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator before {lit!r}")
        c = int(coeff) if coeff else 1
        out[parse_partition(lit)] += -c if sign == "-" else c
        pos, first = m.end(), False
    return SymFunc(out)


@dataclass(frozen=True)
class Matching:
    """A 2-row exponent matrix given by its columns (top, bottom)."""

    columns: tuple

    def __post_init__(self):
        cols = tuple((int(a), int(b)) for a, b in self.columns)
        if any(a < 0 or b < 0 or a + b == 0 for a, b in cols):
            raise ValueError("columns must be non-negative and nonzero")
        object.__setattr__(self, "columns", cols)

    def canonical(self):
        return Matching(tuple(sorted(self.columns, key=lambda c: (-(c[0] + c[1]), -c[0]))))

    def is_canonical(self):
        return self.columns == self.canonical().columns

    @property
    def top(self):
        return Partition.sorted(a for a, _ in self.columns)

    @property
    def bottom(self):
        return Partition.sorted(b for _, b in self.columns)

    @property
    def target(self):
        return Partition.sorted(a + b for a, b in self.columns)

    def blocks(self):
        """[(o_i, r_i, {(a, b): r_ab})] over the distinct column sums."""
        out = []
        for o, cols in groupby(self.canonical().columns, key=lambda c: c[0] + c[1]):
            cnt = Counter(cols)
            out.append((o, sum(cnt.values()), dict(cnt)))
        return out

    def rows(self):
        return [[a for a, _ in self.columns], [b for _, b in self.columns]]

    def __str__(self):
        return f"[{self.rows()[0]}, {self.rows()[1]}]"


def _contingency(tops, bottoms):
    """Non-negative tables r[a][b] with row sums <= tops[a], column sums <= bottoms[b]."""
    cells = [(i, j) for i in range(len(tops)) for j in range(len(bottoms))]
    row_left, col_left = list(tops), list(bottoms)
    table = {}

    def rec(k):
        if k == len(cells):
            yield dict(table)
            return
        i, j = cells[k]
        for v in range(min(row_left[i], col_left[j]) + 1):
            table[i, j] = v
            row_left[i] -= v
            col_left[j] -= v
            yield from rec(k + 1)
            row_left[i] += v
            col_left[j] += v

    yield from rec(0)


def enumerate_matchings(pn, pm):
    """Every matching class of pn (top row) against pm (bottom row), canonical and sorted."""
    pn, pm = Partition(pn), Partition(pm)
    tv, tm = zip(*pn.multiplicities()) if pn else ((), ())
    bv, bm = zip(*pm.multiplicities()) if pm else ((), ())
    found = set()
    for table in _contingency(tm, bm):
        cols = []
        for (i, j), r in table.items():
            cols += [(tv[i], bv[j])] * r
        for i, a in enumerate(tv):
            cols += [(a, 0)] * (tm[i] - sum(table[i, j] for j in range(len(bv))))
        for j, b in enumerate(bv):
            cols += [(0, b)] * (bm[j] - sum(table[i, j] for i in range(len(tv))))
        found.add(Matching(tuple(cols)).canonical())
    return sorted(found, key=lambda m: (m.target, m.columns), reverse=True)


def multinomial(parts):
    out = factorial(sum(parts))
    for r in parts:
        out //= factorial(r)
    return out


def matching_coefficient(m):
    """Product over blocks of multinomial(r_i; r_ab)."""
    out = 1
    for _, _, counts in m.blocks():
        out *= multinomial(counts.values())
    return out


@lru_cache(maxsize=None)
def _mult_monomial(pn, pm):
    out = defaultdict(int)
    for m in enumerate_matchings(pn, pm):
        out[m.target] += matching_coefficient(m)
    return SymFunc(out)


def mult_monomial(pn, pm):
    """m_pn * m_pm as a SymFunc."""
    pn, pm = Partition(pn), Partition(pm)
    if pm > pn:
        pn, pm = pm, pn
    return _mult_monomial(pn, pm)


def mult(f, g):
    out = defaultdict(int)
    for a, c in f.items():
        for b, d in g.items():
            for k, e in mult_monomial(a, b).items():
                out[k] += c * d * e
    return SymFunc(out)


def reduce_mod(f, p):
    return f.reduce_mod(p)


def distinct_permutations(seq):
    """Distinct orderings of seq, in no particular order."""
    cnt = Counter(seq)
    n = len(seq)
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in list(cnt):
            if cnt[v]:
                cnt[v] -= 1
                prefix.append(v)
                rec(prefix)
                prefix.pop()
                cnt[v] += 1

    rec([])
    return out


def expand_oracle(f, N):
    """Coefficient table of f as a polynomial in x_1..x_N."""
    need = max((len(k) for k in f.terms), default=0)
    if N < need:
        raise ValueError(f"N={N} is below the faithfulness threshold {need}")
    out = defaultdict(int)
    for key, c in f.items():
        for u in distinct_permutations(tuple(key) + (0,) * (N - len(key))):
            out[u] += c
    return {k: v for k, v in out.items() if v}


def collect(table):
    """Inverse of expand_oracle: read the coefficients of sorted exponent vectors."""
    out = {}
    for u, c in table.items():
        if all(a >= b for a, b in zip(u, u[1:])):
            out[Partition.sorted(u)] = c
    return SymFunc(out)


def elementary(k):
    return SymFunc.monomial((1,) * k)


@lru_cache(maxsize=None)
def _e_product(nu, p):
    """m-expansion of e_{nu_1} ... e_{nu_r}, optionally reduced mod p."""
    if not nu:
        return SymFunc.one()
    prev = _e_product(Partition(nu[:-1]), p)
    out = defaultdict(int)
    ek = Partition((1,) * nu[-1])
    for mu, c in prev.items():
        for k, d in mult_monomial(mu, ek).items():
            out[k] += c * d
    f = SymFunc(out)
    return f.reduce_mod(p) if p else f


def elementary_to_monomial(g, p=None):
    out = defaultdict(int)
    for nu, c in g.items():
        for k, d in _e_product(nu, p).items():
            out[k] += c * d
    f = SymFunc(out)
    return f.reduce_mod(p) if p else f


def monomial_to_elementary(f, p=None):
    """Express f in the e_k (Chern) basis by triangular elimination.

    The lex-leading monomial of e_{lambda'} is m_lambda with coefficient 1,
    so repeatedly cancelling the leading term terminates.  With p given the
    whole computation is done mod p.
    """
    if not f.is_homogeneous():
        raise ValueError("monomial_to_elementary needs a homogeneous input")
    rem = {k: (c % p if p else c) for k, c in f.items()}
    rem = {k: c for k, c in rem.items() if c}
    out = defaultdict(int)
    while rem:
        lam = max(rem)
        c = rem[lam]
        nu = lam.conjugate()
        out[nu] += c
        for mu, d in _e_product(nu, p).items():
            v = rem.get(mu, 0) - c * d
            if p:
                v %= p
            if v:
                rem[mu] = v
            else:
                rem.pop(mu, None)
    g = ChernPoly(out)
    return g.reduce_mod(p) if p else g


def oracle_mult(f, g, N=None):
    """f*g by multiplying the variable expansions of f and g directly.

    Only coefficients of non-increasing exponent vectors are formed, which
    determines a symmetric polynomial.  Independent of the matching calculus.
    """
    import numpy as np

    if N is None:
        N = max((len(k) for k in f.terms), default=0) + max((len(k) for k in g.terms), default=0)
    ef, eg = expand_oracle(f, N), expand_oracle(g, N)
    if not ef or not eg:
        return SymFunc()
    keys = list(ef)
    U = np.array(keys, dtype=np.int64).reshape(len(keys), N)
    weights = {sum(u) for u in keys}
    wg = {sum(v) for v in eg}
    out = {}
    for w in sorted({a + b for a in weights for b in wg}):
        for lam in partitions(w):
            if len(lam) > N:
                continue
            target = np.array(tuple(lam) + (0,) * (N - len(lam)), dtype=np.int64)
            idx = np.nonzero((U <= target).all(axis=1))[0]
            total = 0
            for i in idx:
                total += ef[keys[i]] * eg.get(tuple(int(x) for x in target - U[i]), 0)
            if total:
                out[lam] = total
    return SymFunc(out)
