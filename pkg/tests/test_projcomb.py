import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from cohomkit import projcomb as pc

grid_pts = pc.grid_points(2, 1)


def cfg(points, dim=2):
    return pc.Configuration.make(dim, points)


def test_normalize():
    assert pc.normalize((0, -2, 4)) == (0, 1, -2)
    assert pc.normalize((Fraction(1, 2), Fraction(1, 3), 0)) == (3, 2, 0)


def test_configuration_dedupes_projectively():
    c = cfg([[1, 0, 0], [2, 0, 0], [0, 1, 0]])
    assert len(c) == 2
    with pytest.raises(ValueError):
        cfg([[1, 0]])
    assert pc.Configuration.from_json(c.to_json()) == c


def test_grid_sizes():
    assert len(pc.grid_points(2, 1)) == 13
    assert len(pc.grid_points(2, 2)) == 49


def test_sylvester_gallai_basic():
    res = pc.sylvester_gallai_witness(cfg([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]))
    assert res.kind == "ordinary"
    p, q = res.pair
    assert pc.on_line(p, q, p)
    col = pc.sylvester_gallai_witness(cfg([[1, 0, 0], [0, 1, 0], [1, 1, 0]]))
    assert col.kind == "collinear" and col.rank == 2


@given(st.lists(st.sampled_from(grid_pts), min_size=3, max_size=8, unique=True))
def test_ordinary_line_really_is_ordinary(points):
    c = cfg(points)
    res = pc.sylvester_gallai_witness(c)
    if res.kind == "ordinary":
        p, q = res.pair
        assert sum(1 for x in c.points if pc.on_line(p, q, x)) == 2
    else:
        assert c.span_rank() <= 2


@given(st.lists(st.sampled_from(grid_pts), min_size=3, max_size=8, unique=True))
def test_hansen_in_the_plane_is_an_ordinary_line(points):
    c = cfg(points)
    if c.span_rank() < 3:
        with pytest.raises(ValueError):
            pc.hansen_witness(c)
        return
    h = pc.hansen_witness(c)
    line = [h.exceptional] + list(h.subspace)
    assert len(line) == 2
    assert sum(1 for x in c.points if pc.on_line(line[0], line[1], x)) == 2


def test_hansen_in_p3():
    pts = pc.grid_points(3, 1)[:11] + [(1, 0, 0, 0), (1, 1, 1, 1)]
    c = cfg(pts, dim=3)
    h = pc.hansen_witness(c)
    assert pc._rank(h.hyperplane) == 3
    assert pc._rank(h.subspace) <= 2


def test_s2comb_conditions():
    omega = cfg([[1, 0, 0], [0, 1, 0]])
    assert pc.s2comb_check(omega, cfg([[1, 1, 0]]))[0]
    ok, bad = pc.s2comb_check(omega, cfg([[0, 0, 1]]))
    assert not ok and bad.condition == "i"
    ok, bad = pc.s2comb_check(omega, cfg([[1, 1, 0], [0, 0, 1]]))
    assert not ok and bad.condition == "ii"
    with pytest.raises(ValueError):
        pc.s2comb_check(omega, omega)


def test_extended_accepts_omega_third_points():
    omega = cfg([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert pc.extended_sg_check(omega, cfg([]))[0]
    assert not pc.s2comb_check(omega, cfg([]))[0]


@given(st.lists(st.sampled_from(grid_pts), min_size=2, max_size=7, unique=True), st.data())
def test_s2comb_implies_extended(points, data):
    k = data.draw(st.integers(1, len(points) - 1))
    omega, n = cfg(points[:k]), cfg(points[k:])
    if pc.s2comb_check(omega, n)[0]:
        assert pc.extended_sg_check(omega, n)[0]


def test_sweep_small_grid():
    rep = pc.sg_sweep(1, 6)
    assert rep.counterexamples == []
    assert rep.to_json()["grid_points"] == 13


def test_bruteforce_agrees():
    assert pc.sg_bruteforce(1, 4) == sum(len(list(combinations(grid_pts, k))) for k in range(2, 5))


def test_dimension_search():
    r = pc.dimension_bound_search(2, 1, "s2comb")
    assert r["max_span_dim"] == 2
    om = [tuple(p) for p in r["example"]["omega"]]
    nn = [tuple(p) for p in r["example"]["n"]]
    assert pc.s2comb_check(cfg(om), cfg(nn))[0]
    assert pc.dimension_bound_search(4, 1, "extended")["max_span_dim"] <= 2
    with pytest.raises(ValueError):
        pc.dimension_bound_search(2, 1, "other")


# -- triangles ---------------------------------------------------------------

NORMAL_FORMS = [("type1", False), ("type2", False), ("type2", True)]


@pytest.mark.parametrize("kind,cz", NORMAL_FORMS)
def test_normal_forms_pass_axioms(kind, cz):
    t = pc.normal_form_triangle(kind, c_zero=cz)
    assert pc.triangle_axioms_check(t, lindep=True) == (True, None)


@pytest.mark.parametrize("kind,cz", NORMAL_FORMS)
@given(seed=st.integers(0, 2**32))
def test_random_images_round_trip(kind, cz, seed):
    t = pc.normal_form_triangle(kind, c_zero=cz)
    img = pc.random_image(t, random.Random(seed))
    assert pc.triangle_axioms_check(img, lindep=True)[0]
    res = pc.triangle_classify(img)
    assert res.kind == kind
    assert res.m == len(t.A)
    assert sorted(res.normal_form["C"]) == sorted(t.C)
    # the basis change maps each rescaled weight to its normal-form image
    for name, S in zip("ABC", img.sets):
        for w, s, target in zip(S, res.scalars[name], res.normal_form[name]):
            mapped = tuple(sum(res.basis_change[i][j] * s * w[j] for j in range(img.d)) for i in range(img.d))
            assert mapped == tuple(target)


def test_classification_json_uses_rational_strings():
    t = pc.random_image(pc.normal_form_triangle("type2"), random.Random(3))
    js = pc.triangle_classify(t).to_json()
    assert js["kind"] == "type2"
    assert all(isinstance(x, str) for row in js["basis_change"] for x in row)


def test_lindep_rejects_degenerate_pattern():
    a, b = [1, 0, 0, 0], [0, 1, 0, 0]
    t = pc.Triangle.make([a, a], [b, b], [[1, -1, 0, 0]] * 2)
    assert pc.triangle_axioms_check(t)[0]
    assert not pc.lindep_products_check(t)
    assert not pc.triangle_axioms_check(t, lindep=True)[0]


def test_not_transversal():
    t = pc.Triangle.make([[1, 0, 0]], [[2, 0, 0]], [[0, 1, 0]])
    assert pc.triangle_classify(t).kind == "not_transversal"


def test_axiom_violations():
    t = pc.Triangle.make([[1, 0, 0]], [[0, 1, 0]], [[1, 1, 0], [0, 0, 1]])
    assert pc.triangle_classify(t).kind == "axiom_violation"
    assert not pc.triangle_axioms_check(t)[0]
    # three weights of each set in one plane
    a, b = [1, 0, 0], [0, 1, 0]
    t = pc.Triangle.make([a, [1, 1, 1], [1, 2, 1]], [b, [2, 1, 1], [1, 3, 1]], [[1, -1, 0], [3, 1, 2], [1, 5, 1]])
    assert not pc.triangle_axioms_check(t)[0]


def test_triangle_rejects_zero_and_mixed_dimensions():
    with pytest.raises(ValueError):
        pc.Triangle.make([[0, 0]], [[1, 0]], [[1, 1]])
    with pytest.raises(ValueError):
        pc.Triangle.make([[1, 0]], [[1, 0, 0]], [[1, 1]])
