import json

import pytest
from hypothesis import given, strategies as st

from cohomkit import periodicity as per
from cohomkit.suites import periodicity_properties

fields = pytest.mark.parametrize("field", ["Q", "Fp:3"])


def truncated(field, k, height, n=None):
    """Q[x]/(x^height) with |x| = k as an explicit structure table."""
    n = n or k * (height - 1)
    dims = [1 if d % k == 0 and d // k < height else 0 for d in range(n + 1)]
    structure = {(a * k, b * k): [[[1]]] for a in range(1, height) for b in range(1, height) if a + b < height}
    return per.make_algebra(field, n, dims, structure)


@fields
def test_cayley_plane(field):
    rep = per.periodicity_spectrum(per.model("cayley_plane", field))
    assert rep.spectrum == (8, 16)
    assert 4 not in rep.spectrum
    assert rep.exact


@fields
@pytest.mark.parametrize("m", [2, 3, 4])
def test_projective_spaces(field, m):
    assert per.periodicity_spectrum(per.model("cp", field, m)).minimal_degree == 2
    assert per.periodicity_spectrum(per.model("hp", field, min(m, 3))).minimal_degree == 4


def test_sphere_spectrum_is_everything():
    assert per.periodicity_spectrum(per.model("sphere", "Q", 5)).spectrum == (1, 2, 3, 4, 5)


def test_product_with_sphere():
    assert per.periodicity_spectrum(per.model("sphere_cross_hp", "Q", 2, 2)).spectrum == (4, 8)
    assert per.periodicity_spectrum(per.model("sphere_cross_hp", "Q", 3, 1)).spectrum == ()


def test_explicit_table_matches_model():
    A = truncated("Q", 4, 3)
    assert per.periodicity_spectrum(A).spectrum == per.periodicity_spectrum(per.model("hp", "Q", 2)).spectrum


def test_json_round_trip():
    A = per.model("sphere_cross_hp", "Fp:3", 2, 2)
    B = per.algebra_from_json(json.loads(json.dumps(A.to_json())))
    assert B.dims == A.dims
    assert per.periodicity_spectrum(B) == per.periodicity_spectrum(A)


def test_rejects_non_associative():
    # x^2 = s, xy = y^2 = 0, xs = ys = t: (xx)y = t but x(xy) = 0
    structure = {(2, 2): [[[1], [0]], [[0], [0]]], (2, 4): [[[1]], [[1]]]}
    with pytest.raises(ValueError, match="associative"):
        per.make_algebra("Q", 6, [1, 0, 2, 0, 1, 0, 1], structure)


def test_rejects_bad_commutativity():
    with pytest.raises(ValueError, match="commutative"):
        per.make_algebra("Q", 2, [1, 1, 1], {(1, 1): [[[1]]]})


def test_rejects_bad_shape():
    with pytest.raises(ValueError):
        per.make_algebra("Q", 2, [2, 0, 1], {})
    with pytest.raises(ValueError):
        per.make_algebra("Q", 4, [1, 0, 1, 0, 1], {(2, 2): [[[1, 0]]]})


def test_cup_condition_and_clauses():
    A = per.model("cp", "Q", 3)
    x = A.basis(2)[0]
    assert per.satisfies_cup_condition(A, x)
    x2 = A.mul(x, x)
    assert not per._clause1(A, x2) and per.induces_periodicity(A, x2)
    assert not per.induces_periodicity(A, A.zero(2))


def test_divide():
    A = per.model("hp", "Q", 2)
    x = A.basis(4)[0]
    assert per.divide(A, A.mul(x, x), x) == x
    assert per.divide(A, x, A.zero(4)) is None


def test_sampled_flag_for_large_rational_degrees():
    A = per.make_algebra("Q", 2, [1, 0, 2], {})
    _, exact = A.candidates(2)
    assert not exact
    assert not per.periodicity_spectrum(A).exact


@fields
def test_model_properties(field):
    for name, A in per.model_algebras(field).items():
        ok, detail = periodicity_properties(A)
        assert ok, f"{name}: {detail}"


def test_sums_needs_surjectivity_from_degree_zero():
    # zero in the top degree of a sphere is a product of zeros, so it induces,
    # yet the generator does not; this is why the sums check requires
    # H^0 -> H^|x| to be onto
    A = per.model("sphere", "Q", 3)
    top = A.basis(3)[0]
    assert per.induces_periodicity(A, A.zero(3))
    assert not per.induces_periodicity(A, top)
    assert per._map_rank(A, A.zero(3), 0) < A.dims[3]


def test_exterior_algebra_behaves_like_a_sphere():
    assert per.periodicity_spectrum(truncated("Q", 2, 2)).spectrum == (1, 2)


@given(st.sampled_from(["Q", "Fp:3", "Fp:5"]), st.integers(1, 3), st.integers(3, 4))
def test_truncated_polynomial_spectrum(field, k, height):
    A = truncated(field, 2 * k, height)
    assert per.periodicity_spectrum(A).spectrum == tuple(2 * k * j for j in range(1, height))
