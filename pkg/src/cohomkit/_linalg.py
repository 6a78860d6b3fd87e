"""Exact Gaussian elimination over Q (Fraction) or F_p (ints mod p)."""
from fractions import Fraction


class Field:
    """Either the rationals (p is None) or the prime field F_p."""

    def __init__(self, p=None):
        self.p = p

    @classmethod
    def parse(cls, text):
        if text == "Q":
            return cls(None)
        if text.startswith("Fp:"):
            p = int(text[3:])
            if not is_prime(p):
                raise ValueError(f"not a prime: {p}")
            return cls(p)
        raise ValueError(f"unknown field {text!r}")

    @property
    def name(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"Field({self.name})"

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def elements(self):
        return range(self.p)


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def rref(rows, field=None):
    """Row-reduce a copy of `rows`; returns (reduced rows, pivot columns)."""
    field = field or Field()
    m = [[field(x) for x in r] for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, field=None):
    return len(rref(rows, field)[1])


def solve(matrix, rhs, field=None):
    """Solve matrix @ z = rhs; free variables are set to zero. None if inconsistent."""
    field = field or Field()
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, piv = rref(aug, field)
    if ncols in piv:
        return None
    z = [field(0)] * ncols
    for i, c in enumerate(piv):
        z[c] = red[i][-1]
    return z


def nullspace(rows, ncols, field=None):
    """Basis of {z : rows @ z = 0}."""
    field = field or Field()
    if not rows:
        return [[field(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, piv = rref(rows, field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        z = [field(0)] * ncols
        z[f] = field(1)
        for i, c in enumerate(piv):
            z[c] = field(-red[i][f])
        basis.append(z)
    return basis


def det_int(m):
    """Exact integer determinant by cofactor expansion (small matrices)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det_int(minor)
    return total


def inverse(m, field=None):
    field = field or Field()
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]
