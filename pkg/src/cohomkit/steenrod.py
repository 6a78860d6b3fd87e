"""Steenrod reduced powers on the symmetric-function model of H*(BU; F_p).

Each variable x has total power P(x) = x + x^p, so P^i acts on a monomial
by choosing i variables and raising their exponent a to a + (p-1)j with
weight binom(a, j).  With var_degree=2 (Chern classes) P^i raises the
weight by (p-1)i; at p=2 this is Sq^{2i}.  With p=2 and var_degree=1 the
same rule is Sq^i on Stiefel-Whitney classes.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from ._linalg import is_prime
from .symmfunc import (
    ChernPoly,
    Partition,
    SymFunc,
    distinct_permutations,
    elementary,
    elementary_to_monomial,
    monomial_to_elementary,
    mult,
    partitions,
)


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; this indicates a bug, not bad input."""


@dataclass(frozen=True)
class PrimeContext:
    p: int
    var_degree: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"not a prime: {self.p}")
        if self.var_degree not in (1, 2):
            raise ValueError("var_degree must be 1 or 2")
        if self.var_degree == 1 and self.p != 2:
            raise ValueError("var_degree=1 is only meaningful at p=2")

    @property
    def step(self):
        """Weight added by P^1 (or Sq^1 when var_degree=1)."""
        return self.p - 1


def gbinom(n, k):
    """Binomial coefficient for any integer n and k >= 0 (falling factorial / k!)."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    num = 1
    for t in range(k):
        num *= n - t
    return num // factorial(k)


@lru_cache(maxsize=None)
def _power_monomial(p, i, mu):
    """P^i(m_mu) over the integers, computed in len(mu) variables."""
    k = len(mu)
    out = defaultdict(int)
    step = p - 1
    for u in distinct_permutations(tuple(mu)):
        # choose j_s per slot, keep only non-increasing results (sorted monomials)
        def rec(s, left, prev, coeff, acc):
            if s == k:
                if left == 0:
                    out[Partition(acc)] += coeff
                return
            for j in range(min(u[s], left) + 1):
                w = u[s] + step * j
                if w > prev:
                    break
                acc.append(w)
                rec(s + 1, left - j, w, coeff * comb(u[s], j), acc)
                acc.pop()

        rec(0, i, float("inf"), 1, [])
    return SymFunc(out)


def steenrod_power(ctx, i, f):
    """P^i(f) reduced mod p (Sq^i when ctx.var_degree == 1)."""
    if i < 0:
        raise ValueError("negative operation index")
    if not f.is_homogeneous():
        raise ValueError("steenrod_power needs a homogeneous input")
    out = defaultdict(int)
    for mu, c in f.items():
        for nu, d in _power_monomial(ctx.p, i, mu).items():
            out[nu] += c * d
    return SymFunc(out).reduce_mod(ctx.p)


def total_power_oracle(ctx, i, f):
    """P^i(f) through the full variable expansion; slow, used as a cross-check."""
    from .symmfunc import collect, expand_oracle

    N = max((len(k) for k in f.terms), default=0)
    table = expand_oracle(f, N) if N else {(): c for _, c in f.items()}
    out = defaultdict(int)
    for u, c in table.items():
        # product over variables of (x + x^p)^{u_s}, keep total j = i
        polys = {(): c}
        for a in u:
            nxt = defaultdict(int)
            for mono, v in polys.items():
                for j in range(a + 1):
                    nxt[mono + ((a + ctx.step * j, j),)] += v * comb(a, j)
            polys = nxt
        for mono, v in polys.items():
            if sum(j for _, j in mono) == i:
                out[tuple(e for e, _ in mono)] += v
    return collect({k: v for k, v in out.items() if v}).reduce_mod(ctx.p)


def frobenius_power(ctx, f):
    """f^p mod p: multiply every part by p."""
    return SymFunc({Partition(x * ctx.p for x in k): c for k, c in f.items()}).reduce_mod(ctx.p)


def mult_mod(f, g, p):
    return mult(f, g).reduce_mod(p)


def _split_homogeneous(f):
    out = defaultdict(dict)
    for k, c in f.items():
        out[k.weight][k] = c
    return [SymFunc(v) for v in out.values()]


def verify_cartan(ctx, i, f, g):
    p = ctx.p
    lhs = SymFunc()
    for part in _split_homogeneous(mult(f, g)):
        lhs = lhs + steenrod_power(ctx, i, part)
    rhs = SymFunc()
    for a in range(i + 1):
        rhs = rhs + mult(steenrod_power(ctx, a, f), steenrod_power(ctx, i - a, g))
    return lhs.reduce_mod(p) == rhs.reduce_mod(p)


def adem_terms(ctx, a, b):
    """[(coeff mod p, c, d)] with P^a P^b = sum coeff P^c P^d, for a < p b."""
    p = ctx.p
    if a >= p * b:
        raise ValueError(f"Adem relation needs a < p*b (got a={a}, b={b}, p={p})")
    out = []
    for j in range(a // p + 1):
        coeff = (-1) ** (a + j) * gbinom((p - 1) * (b - j) - 1, a - p * j) % p
        if coeff:
            out.append((coeff, a + b - j, j))
    return out


def verify_adem_instance(ctx, a, b, weight_bound):
    terms = adem_terms(ctx, a, b)
    for w in range(weight_bound + 1):
        for mu in partitions(w):
            m = SymFunc.monomial(mu)
            lhs = steenrod_power(ctx, a, steenrod_power(ctx, b, m))
            rhs = SymFunc()
            for coeff, c, d in terms:
                rhs = rhs + steenrod_power(ctx, c, steenrod_power(ctx, d, m)).scale(coeff)
            if lhs != rhs.reduce_mod(ctx.p):
                return False
    return True


def wu_rhs(k, i):
    """sum_t binom(k-i-1-t, i-t) w_t w_{k-t} mod 2, w_j = e_j."""
    out = SymFunc()
    for t in range(i + 1):
        c = gbinom(k - i - 1 - t, i - t) % 2
        if c:
            out = out + mult(elementary(t), elementary(k - t))
    return out.reduce_mod(2)


def verify_wu(k, i):
    if not 0 <= i <= k - i:
        raise ValueError(f"need 0 <= i <= k-i (k={k}, i={i})")
    lhs = steenrod_power(PrimeContext(2, 1), i, elementary(k - i))
    return lhs == wu_rhs(k, i)


def verify_odd_squares_vanish(f, j):
    """Check Sq^{2j+1} = 0 and Sq^{2j} = P^j on a symmetric function f (monomial basis).

    f lives in degree-2 variables x; substituting x = y^2 with degree-1
    variables y (the mod-2 reduction of the complexification map) doubles
    every part, and the raw squares on the y side must satisfy both rules.
    """
    double = SymFunc({Partition(2 * x for x in k): c for k, c in f.items()}).reduce_mod(2)
    sw = PrimeContext(2, 1)
    odd = steenrod_power(sw, 2 * j + 1, double)
    even = steenrod_power(sw, 2 * j, double)
    pj = steenrod_power(PrimeContext(2, 2), j, f)
    pj_double = SymFunc({Partition(2 * x for x in k): c for k, c in pj.items()})
    return not odd and even == pj_double


def chern_coefficient_profile(ctx, i, source):
    """P^i(c_source) written in the Chern basis, mod p."""
    if ctx.var_degree != 2:
        raise ValueError("Chern profiles need var_degree=2")
    img = steenrod_power(ctx, i, elementary(source))
    return monomial_to_elementary(img, ctx.p)


def bp_leading_coefficient(p, k, i):
    """Coefficient of c_k in P^i(c_{k-(p-1)i}) mod p, checked against binom(k-(p-1)i-1, i)."""
    n = k - (p - 1) * i
    if i < 0 or n < 1:
        raise ValueError(f"need i >= 0 and k-(p-1)i >= 1 (p={p}, k={k}, i={i})")
    prof = chern_coefficient_profile(PrimeContext(p), i, n)
    got = prof[(k,)] % p
    want = comb(n - 1, i) % p
    if got != want:
        raise ConsistencyError(f"p={p} k={k} i={i}: computed {got}, expected {want}")
    return got


@dataclass(frozen=True)
class DecompositionCertificate:
    p: int
    k: int
    lam: int
    i: int
    source_index: int
    op_exponent: int
    leading_coeff: int
    decomposable_part: ChernPoly
    verified: bool

    def to_json(self):
        return {
            "p": self.p,
            "k": self.k,
            "op_exponent": self.op_exponent,
            "source": self.source_index,
            "leading_coeff": self.leading_coeff,
            "decomposable": self.decomposable_part.to_json()["terms"],
            "verified": self.verified,
        }


def split_prime_power(p, k):
    """k = lam * p^i with p not dividing lam."""
    if k < 1:
        raise ValueError("k must be positive")
    i = 0
    while k % p == 0:
        k //= p
        i += 1
    return k, i


def decomposition_operation(p, k):
    """(source index, op exponent) with c_k a nonzero multiple of P^op(c_source) mod decomposables."""
    lam, i = split_prime_power(p, k)
    if lam <= p:
        raise ValueError(f"k={k} = {lam}*{p}^{i} needs lambda > p")
    if p == 2 and lam % 4 == 1:
        op = 2 ** (i + 1)
    else:
        op = p ** i
    return k - (p - 1) * op, op


def decompose_chern(p, k):
    if not is_prime(p):
        raise ValueError(f"not a prime: {p}")
    lam, i = split_prime_power(p, k)
    source, op = decomposition_operation(p, k)
    ctx = PrimeContext(p)
    img = steenrod_power(ctx, op, elementary(source))
    prof = monomial_to_elementary(img, p)
    lead = prof[(k,)] % p
    rest = prof - ChernPoly({(k,): prof[(k,)]})
    ok = (
        lead != 0
        and all(len(key) >= 2 for key in rest.terms)
        and elementary_to_monomial(prof, p) == img
        and prof.reduce_mod(p) == (rest + ChernPoly({(k,): lead})).reduce_mod(p)
    )
    return DecompositionCertificate(p, k, lam, i, source, op, lead, rest, ok)


def eligible_indices(p, bound):
    out = []
    for k in range(1, bound + 1):
        lam, _ = split_prime_power(p, k)
        if lam > p:
            out.append(k)
    return out


def in_sl(part, p, l):
    """Membership in S_l: some multiplicity is not divisible by p^l."""
    return any(r % p ** l for _, r in Partition(part).multiplicities())


def _sl_worker(args):
    p, l, pm, weight_bound = args
    for wo in range(weight_bound - pm.weight + 1):
        for po in partitions(wo):
            for pn, c in mult(SymFunc.monomial(pm), SymFunc.monomial(po)).items():
                if c % p and not in_sl(pn, p, l):
                    return (pm, po, pn)
    return None


def verify_sl_ideal(p, l, weight_bound, jobs=1, counterexample=False):
    """Products pm*po with pm in S_l have no coefficient (nonzero mod p) outside S_l."""
    tasks = [(p, l, pm, weight_bound)
             for w in range(1, weight_bound + 1) for pm in partitions(w) if in_sl(pm, p, l)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_sl_worker, tasks, chunksize=8))
    else:
        results = [_sl_worker(t) for t in tasks]
    bad = next((r for r in results if r is not None), None)
    if counterexample:
        return bad is None, bad
    return bad is None


@dataclass(frozen=True)
class DescentTrace:
    p: int
    lam: int
    rows: tuple = field(default=())
    witness_a: int = None


def residue(x, m):
    """[x]_m, the representative of x in {0, ..., m-1}."""
    return x % m


def descent_trace(p, lam):
    """Rows (j, a_j, a_j*lam - j(p-1)) with a_j = ceil(j(p-1)/lam), up to the witness."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if lam % p == 0 or lam <= p:
        raise ValueError(f"need p not dividing lambda and lambda > p (lambda={lam})")
    witness = None
    for a in range(1, (p - 1) // 2 + 1):
        if p * residue(a * lam, p - 1) < a * lam:
            witness = a
            break
    last_a = witness if witness is not None else (p - 1) // 2
    rows = []
    j = 1
    while True:
        a = -(-j * (p - 1) // lam)
        if a > last_a:
            break
        rows.append((j, a, a * lam - j * (p - 1)))
        j += 1
    return DescentTrace(p, lam, tuple(rows), witness)
