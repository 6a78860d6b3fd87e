"""Weight sets of T^4-representations up to GL(4,Z) basis change and signs.

A weight set contains the standard basis, has entries in {-1,0,1}, weights
are taken up to sign, and every four weights have determinant in {-1,0,1}
(condition star).  Classes are grown one weight at a time from the basis
and reduced to canonical representatives after each step.
"""
from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from ._linalg import det_int

BASIS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def clean(v):
    """Sign-normalize: first nonzero coordinate becomes +1."""
    v = tuple(int(x) for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    raise ValueError("zero weight")


def default_order():
    """Basis first, then the normalized vectors in product order with 0 < -1 < 1 per slot."""
    tail = [v for v in product((0, -1, 1), repeat=4)
            if sum(1 for x in v if x) >= 2 and clean(v) == v]
    return BASIS + tuple(tail)


class Order:
    """A total order on the 40 normalized vectors of {-1,0,1}^4 (basis first)."""

    def __init__(self, vectors=None):
        vectors = tuple(vectors or default_order())
        if vectors[:4] != BASIS or len(set(vectors)) != 40:
            raise ValueError("order must list the basis first and all 40 normalized vectors")
        self.vectors = vectors
        self.index = {v: i for i, v in enumerate(vectors)}
        # lookup from base-3 code of a raw vector to the index of its normalization
        self._code = np.full(81, -1, dtype=np.int64)
        for raw in product((-1, 0, 1), repeat=4):
            if any(raw):
                self._code[_code3(raw)] = self.index[clean(raw)]

    def sort(self, ws):
        return tuple(sorted({clean(v) for v in ws}, key=self.index.__getitem__))


def _code3(v):
    return sum((x + 1) * 3 ** k for k, x in enumerate(v))


DEFAULT_ORDER = Order()


def star_check(ws):
    """Every 4-subset has determinant in {-1, 0, 1}."""
    ws = [list(v) for v in ws]
    return all(abs(det_int(list(q))) <= 1 for q in combinations(ws, 4))


def _star_with(ws, v):
    v = list(v)
    return all(abs(det_int([list(a), list(b), list(c), v])) <= 1 for a, b, c in combinations(ws, 3))


def extend(level, order=DEFAULT_ORDER):
    """All W + {v} satisfying star, with v later than max(W) in the order."""
    out = []
    for ws in level:
        ws = order.sort(ws)
        last = max(order.index[v] for v in ws)
        for v in order.vectors[last + 1:]:
            if _star_with(ws, v):
                out.append(ws + (v,))
    return out


_SIGNS = np.array(list(product((1, -1), repeat=4)), dtype=np.int64)


def _orbit_keys(ws, order):
    """Sorted index rows of every image of ws under the orbit moves."""
    W = np.array(ws, dtype=np.int64)
    n = len(ws)
    tuples = [t for t in permutations(range(n), 4)]
    B = W[np.array(tuples)]  # (T, 4, 4), rows are the new basis
    det = np.rint(np.linalg.det(B.astype(float))).astype(np.int64)
    keep = np.abs(det) == 1
    B = B[keep]
    inv = np.rint(np.linalg.inv(B.astype(float))).astype(np.int64)
    if not (np.einsum("tij,tjk->tik", B, inv) == np.eye(4, dtype=np.int64)).all():
        raise ArithmeticError("inexact unimodular inverse")
    imgs = np.einsum("nj,tjk->tnk", W, inv)  # coordinates in the new basis
    imgs = imgs[:, None, :, :] * _SIGNS[None, :, None, :]
    imgs = imgs.reshape(-1, n, 4)
    if np.abs(imgs).max() > 1:
        raise ArithmeticError("weight set violates star")
    codes = ((imgs + 1) * np.array([1, 3, 9, 27])).sum(axis=2)
    idx = np.sort(order._code[codes], axis=1)
    return idx


def canonical_form(ws, order=DEFAULT_ORDER):
    """Lexicographically least image of ws over unimodular 4-subsets and sign diagonals.

    ws may be written in any integral basis; the result has the basis first.
    """
    ws = tuple(sorted({clean(v) for v in ws}))
    if len(ws) < 4:
        raise ValueError("need at least four weights")
    idx = _orbit_keys(ws, order)
    if len(idx) == 0:
        raise ValueError("no unimodular 4-subset")
    keys = np.zeros(len(idx), dtype=np.int64)
    for col in range(idx.shape[1]):
        keys = keys * 64 + idx[:, col]
    best = idx[int(np.argmin(keys))]
    return tuple(order.vectors[i] for i in best)


def equivalent(a, b, order=DEFAULT_ORDER):
    return len(a) == len(b) and canonical_form(a, order) == canonical_form(b, order)


def _normal(triple):
    """Primitive normal vector of the hyperplane spanned by three vectors (4x4 cofactors)."""
    from math import gcd

    rows = [list(v) for v in triple]
    n = []
    for k in range(4):
        minor = [r[:k] + r[k + 1:] for r in rows]
        n.append((-1) ** k * det_int(minor))
    g = 0
    for x in n:
        g = gcd(g, x)
    if g == 0:
        return None
    return clean([x // g for x in n])


def splitting_t3(ws):
    """Normal vector of a 3-plane meeting ws in exactly three independent weights, or None.

    Any 3-plane containing three independent weights is their span, so
    searching spans of independent 3-subsets covers every candidate plane.
    """
    ws = list(ws)
    for triple in combinations(ws, 3):
        n = _normal(triple)
        if n is None:
            continue
        if sum(1 for v in ws if sum(a * b for a, b in zip(n, v)) == 0) == 3:
            return n
    return None


@dataclass(frozen=True)
class WeightClass:
    weights: tuple
    splitting: tuple  # normal vector or None

    @property
    def size(self):
        return len(self.weights)

    @property
    def extra(self):
        return self.weights[4:]

    @property
    def splitting_t3(self):
        return self.splitting is not None


@dataclass(frozen=True)
class ClassificationTable:
    classes: tuple

    @property
    def histogram(self):
        out = {}
        for c in self.classes:
            out[c.size] = out.get(c.size, 0) + 1
        return out

    def to_json(self):
        return {
            "classes": [{"size": c.size, "weights": [list(v) for v in c.weights],
                         "splitting_t3": c.splitting_t3,
                         "splitting_normal": list(c.splitting) if c.splitting else None}
                        for c in self.classes],
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }

    def to_text(self):
        rows = [(str(c.size), " ".join("(" + ",".join(f"{x:d}" for x in v) + ")" for v in c.extra) or "-",
                 "yes" if c.splitting_t3 else "no") for c in self.classes]
        width = max(len(r[1]) for r in rows + [("", "Weights beyond the basis", "")])
        lines = [f"Size  {'Weights beyond the basis':<{width}}  Splitting T^3"]
        lines += [f"{a:>4}  {b:<{width}}  {c}" for a, b, c in rows]
        return "\n".join(lines)


def classify_all(order=DEFAULT_ORDER, jobs=1):
    level = [BASIS]
    classes = []
    while level:
        classes += [WeightClass(ws, splitting_t3(ws)) for ws in level]
        cands = extend(level, order)
        if jobs > 1 and len(cands) > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(jobs) as ex:
                forms = list(ex.map(canonical_form, cands, [order] * len(cands)))
        else:
            forms = [canonical_form(c, order) for c in cands]
        level = sorted(set(forms), key=lambda ws: [order.index[v] for v in ws])
    return ClassificationTable(tuple(classes))


def star_sets(order=DEFAULT_ORDER):
    """Every star set containing the basis (depth-first, each set once)."""
    out = []

    def rec(ws, start):
        out.append(ws)
        for i in range(start, 40):
            v = order.vectors[i]
            if _star_with(ws, v):
                rec(ws + (v,), i + 1)

    rec(BASIS, 4)
    return out
