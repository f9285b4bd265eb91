import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bilevel import boundary as bd
from bilevel.arith import count_Phi_bar2, divisors
from bilevel.errors import InvalidArgument, ResourceLimit, UnsupportedModulus

vec = st.tuples(*[st.integers(-40, 40)] * 4).filter(lambda v: math.gcd(*v) == 1)
odd_t = st.sampled_from([3, 5, 7, 9, 15, 21, 25, 45])


def test_t_divisor_examples():
    assert bd.t_divisor((1, 0, 0, 0), 15) == 1
    assert bd.t_divisor((0, 1, 0, 2), 15) == 15
    assert bd.t_divisor((3, 1, 6, 0), 15) == 3
    with pytest.raises(InvalidArgument):
        bd.t_divisor((2, 0, 4, 0), 15)


def test_standard_vector_class():
    c = bd.normalize_line((0, 2, 0, 3), 15)
    assert c.r == 15 and c.a13 == (0, 0) and c.a24 == (2, 3)
    assert c.standard


@given(vec, odd_t)
def test_sign_invariance(v, t):
    assert bd.normalize_line(v, t) == bd.normalize_line(tuple(-x for x in v), t)


@given(vec, odd_t, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_unipotent_translations_preserve_class(v, t, k, l, k2, l2):
    v1, v2, v3, v4 = v
    w = (v1, v2 + k * v1 + l * v3, v3, v4 + k2 * v1 + l2 * v3)
    if math.gcd(*w) != 1:
        return
    assert bd.normalize_line(v, t) == bd.normalize_line(w, t)


@given(vec, odd_t)
def test_zeta_preserves_class(v, t):
    v1, v2, v3, v4 = v
    assert bd.normalize_line(v, t) == bd.normalize_line((v1, -v2, v3, -v4), t)


@given(st.integers(-10, 10), st.integers(-10, 10))
def test_r3_translations_at_15(k, k2):
    w = (3, 1 + 3 * k, 6, 2 + 3 * k2)
    if math.gcd(*w) == 1:
        assert bd.normalize_line((3, 1, 6, 2), 15) == bd.normalize_line(w, 15)


@given(vec, odd_t)
def test_class_invariants(v, t):
    c = bd.normalize_line(v, t)
    assert math.gcd(t, *c.a13) == c.r
    assert all(0 <= x < max(c.r, 1) for x in c.a24)
    rep = c.representative()
    assert math.gcd(*rep) == 1
    assert bd.normalize_line(rep, t) == c


@pytest.mark.parametrize("t", [3, 5, 7, 9])
def test_residues_lift_iff_coprime(t):
    for c in itertools.product(range(t), repeat=4):
        if math.gcd(t, *c) == 1:
            v = bd.lift_residue(c, t)
            assert math.gcd(*v) == 1
            assert all((a - b) % t == 0 for a, b in zip(v, c))
        else:
            with pytest.raises(InvalidArgument):
                bd.lift_residue(c, t)


@pytest.mark.parametrize("t,expected", [
    (3, {1: 4, 3: 4}),
    (5, {1: 12, 5: 12}),
    (9, {1: 36, 3: 16, 9: 36}),
    (15, {1: 96, 3: 48, 5: 48, 15: 96}),
])
def test_closed_counts(t, expected):
    assert bd.count_boundary_closed(t) == expected


@pytest.mark.parametrize("t", [3, 5, 7, 9, 15])
def test_oracle_matches_closed_form(t):
    table = bd.count_boundary_oracle(t)
    assert table.counts == bd.count_boundary_closed(t)
    for r, s in table.samples.items():
        assert bd.t_divisor(s, t) == r


@pytest.mark.parametrize("t", [3, 5, 7, 9, 15])
def test_normal_form_separates_oracle_orbits(t):
    c, prim, uf = bd.oracle_orbits(t)
    roots = uf.find_all()[np.flatnonzero(prim)]
    cp = c[:, prim].T
    by_root, by_class = {}, {}
    for root, res in zip(roots.tolist(), cp.tolist()):
        cls = bd.class_of_residue(res, t)
        assert by_root.setdefault(root, cls) == cls
        assert by_class.setdefault(cls, root) == root


def test_oracle_guard():
    with pytest.raises(ResourceLimit):
        bd.oracle_orbits(47)
    with pytest.raises(UnsupportedModulus):
        bd.count_boundary_oracle(4)


@given(odd_t)
def test_total_is_sum_of_products(t):
    total = sum(bd.count_boundary_closed(t).values())
    assert total == sum(count_Phi_bar2(t // r) * count_Phi_bar2(r) for r in divisors(t))


def test_standard_components_t3():
    comps = bd.standard_components(3)
    assert comps[3] == [(0, 0, 0, 1), (0, 1, 0, 0), (0, 1, 0, 1), (0, 1, 0, 2)]
    assert len(comps[1]) == 4


@pytest.mark.parametrize("t", [3, 5, 9, 15])
def test_standard_components_are_a_transversal(t):
    comps = bd.standard_components(t)
    counts = bd.count_boundary_closed(t)
    for r in (1, t):
        classes = bd.classes_of(comps[r], t)
        assert len(classes) == len(comps[r]) == counts[r]
        assert all(c.r == r for c in classes)


def test_printed_positivity_splits_an_orbit():
    v, w = (0, 1, 1, 0), (0, 1, 4, 0)
    assert bd.same_orbit(v, w, 5)
    assert not bd.paper_criterion(v, w, 5)


def test_union_find():
    uf = bd.UnionFind(6)
    uf.union_many(np.array([0, 2, 4]), np.array([1, 3, 5]))
    uf.union(1, 3)
    roots = uf.find_all()
    assert roots[0] == roots[3] and roots[4] == roots[5] and roots[0] != roots[4]


def test_orbit_csv():
    text = bd.orbit_table_csv(9, bd.count_boundary_closed(9))
    lines = text.strip().splitlines()
    assert lines[0] == "r,count,sample_representative"
    assert lines[2].startswith("3,16,")
