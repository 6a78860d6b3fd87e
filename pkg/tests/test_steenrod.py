from math import comb

import pytest
from hypothesis import given, strategies as st

from cohomkit import steenrod as sq
from cohomkit.symmfunc import ChernPoly, Partition, SymFunc, elementary, elementary_to_monomial, mult, partitions

primes = st.sampled_from([2, 3, 5])
small_partition = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(partitions(n))))


def test_prime_context_validates():
    with pytest.raises(ValueError):
        sq.PrimeContext(4)
    with pytest.raises(ValueError):
        sq.PrimeContext(3, var_degree=3)
    assert sq.PrimeContext(5).step == 4


def test_generalized_binomial():
    assert sq.gbinom(5, 2) == 10
    assert sq.gbinom(-1, 3) == -1
    assert sq.gbinom(3, -1) == 0


def test_power_zero_is_identity_and_top_is_frobenius():
    ctx = sq.PrimeContext(3)
    f = SymFunc.monomial(Partition([2, 1]))
    assert sq.steenrod_power(ctx, 0, f) == f
    assert sq.steenrod_power(ctx, 3, f) == sq.frobenius_power(ctx, f)
    assert sq.steenrod_power(ctx, 4, f) == SymFunc()


def test_power_of_variable_sum():
    # P^1 of the first power sum is the p-th power sum
    ctx = sq.PrimeContext(5)
    assert sq.steenrod_power(ctx, 1, SymFunc.monomial(Partition([1]))) == SymFunc.monomial(Partition([5]))


def test_inhomogeneous_input_rejected():
    with pytest.raises(ValueError):
        sq.steenrod_power(sq.PrimeContext(2), 1, SymFunc.monomial(Partition([1])) + SymFunc.one())


@given(primes, small_partition, st.integers(0, 4))
def test_power_matches_variable_expansion(p, mu, i):
    ctx = sq.PrimeContext(p)
    f = SymFunc.monomial(mu)
    assert sq.steenrod_power(ctx, i, f) == sq.total_power_oracle(ctx, i, f)


@given(primes, small_partition, small_partition, st.integers(0, 5))
def test_cartan(p, a, b, i):
    assert sq.verify_cartan(sq.PrimeContext(p), i, SymFunc.monomial(a), SymFunc.monomial(b))


@pytest.mark.parametrize("p,a,b", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 2, 1), (5, 1, 1)])
def test_adem(p, a, b):
    assert sq.verify_adem_instance(sq.PrimeContext(p), a, b, 5)


def test_adem_range_checked():
    with pytest.raises(ValueError):
        sq.adem_terms(sq.PrimeContext(2), 2, 1)


def test_adem_known_relation():
    # Sq^2 Sq^2 = Sq^3 Sq^1 in degree-1 grading; in degree-2 variables P^1 P^1 = 0 at p=2
    ctx = sq.PrimeContext(2)
    assert sq.adem_terms(ctx, 1, 1) == []


@pytest.mark.parametrize("k", range(1, 9))
def test_wu(k):
    assert all(sq.verify_wu(k, i) for i in range(k // 2 + 1))


@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(partitions(n)))), st.integers(0, 3))
def test_odd_squares_vanish(mu, j):
    assert sq.verify_odd_squares_vanish(SymFunc.monomial(mu), j)


def test_odd_squares_on_chern_class():
    assert all(sq.verify_odd_squares_vanish(elementary(4), j) for j in range(5))


@pytest.mark.parametrize("p,k,i", [(2, 5, 2), (3, 6, 1), (5, 6, 1), (5, 13, 2)])
def test_leading_coefficient(p, k, i):
    n = k - (p - 1) * i
    assert sq.bp_leading_coefficient(p, k, i) == comb(n - 1, i) % p


def test_leading_coefficient_bad_range():
    with pytest.raises(ValueError):
        sq.bp_leading_coefficient(3, 2, 2)


def test_profile_p5():
    prof = sq.chern_coefficient_profile(sq.PrimeContext(5), 1, 2)
    assert prof[(6,)] == 1 and prof[(3, 3)] == 2
    assert all(1 in key or 2 in key for key in prof.terms if key not in ((6,), (3, 3)))


def test_split_prime_power():
    assert sq.split_prime_power(2, 20) == (5, 2)
    assert sq.split_prime_power(3, 7) == (7, 0)


def test_decomposition_operation_weights_add_up():
    for p in (2, 3, 5):
        for k in sq.eligible_indices(p, 40):
            src, op = sq.decomposition_operation(p, k)
            assert src + (p - 1) * op == k and src >= 1


def test_decompose_small_cases():
    cert = sq.decompose_chern(2, 5)
    assert (cert.source_index, cert.op_exponent, cert.leading_coeff) == (3, 2, 1)
    assert cert.verified
    js = sq.decompose_chern(3, 4).to_json()
    assert set(js) == {"p", "k", "op_exponent", "source", "leading_coeff", "decomposable", "verified"}
    assert js["op_exponent"] == 1 and js["source"] == 2


def test_decompose_rejects_ineligible():
    with pytest.raises(ValueError):
        sq.decompose_chern(3, 3)
    with pytest.raises(ValueError):
        sq.decompose_chern(2, 4)


def test_decomposable_remainder_has_no_single_class():
    cert = sq.decompose_chern(5, 12)
    assert all(len(key) >= 2 for key in cert.decomposable_part.terms)
    prof = cert.decomposable_part + ChernPoly({(12,): cert.leading_coeff})
    image = sq.steenrod_power(sq.PrimeContext(5), cert.op_exponent, elementary(cert.source_index))
    assert elementary_to_monomial(prof, 5) == image


def test_sl_membership():
    assert sq.in_sl((2, 1), 2, 1)
    assert not sq.in_sl((2, 2, 1, 1), 2, 1)


def test_sl_ideal_small():
    assert sq.verify_sl_ideal(2, 1, 8)
    assert sq.verify_sl_ideal(3, 1, 8)
    assert sq.verify_sl_ideal(2, 2, 8)


def test_descent():
    tr = sq.descent_trace(5, 6)
    assert tr.witness_a == 2
    assert tr.rows[0] == (1, 1, 2)
    with pytest.raises(ValueError):
        sq.descent_trace(2, 5)
    with pytest.raises(ValueError):
        sq.descent_trace(5, 10)


def test_s_l_product_closed_example():
    # a product with an S_1 factor stays in S_1 monomial by monomial
    prod = mult(SymFunc.monomial(Partition([2, 1])), SymFunc.monomial(Partition([1, 1])))
    assert all(sq.in_sl(k, 2, 1) for k in prod.terms)
