import numpy as np
import pytest

from ringreps.chartab import (class_algebra_constants, dixon_table,
                              element_order, find_split_prime, group_exponent,
                              restriction_multiplicities)
from ringreps.groups import (SubgroupView, conjugacy_classes,
                             derived_subgroup_ids, group_from_descriptors)
from ringreps.liedual import DualSpace, psi_exponent_table


def test_element_order_and_exponent():
    G = group_from_descriptors("sl(2)", "gf(3)")  # SL2(F3), exponent 12
    assert element_order(G, G.identity) == 1
    assert group_exponent(G) == 12


def test_find_split_prime():
    assert find_split_prime(12, 24) == 13  # 13 = 1 mod 12, 13 > 2*sqrt(24)
    assert find_split_prime(24, 384) == 73
    assert find_split_prime(1, 1) == 3


def test_structure_constants_s3_hand_values():
    # GL2(F2) ~ S3; classes ordered by representative: sizes (3, 2, 1) here
    G = group_from_descriptors("gl(2)", "gf(2)")
    cls = conjugacy_classes(G)
    a = class_algebra_constants(G, cls)
    order = np.argsort(cls.sizes)  # 1 (identity), 2 (3-cycles), 3 (transpositions)
    e, r3, t = order[0], order[1], order[2]
    assert a[e, r3, r3] == 1 and a[e, t, t] == 1 and a[e, e, e] == 1
    # product of two transpositions: 3*3 = 9 pairs = 3 identity + 6 three-cycles
    assert a[t, t, e] == 3
    assert a[t, t, r3] == 3  # per fixed 3-cycle z: 3 factorizations
    assert a[t, t, t] == 0
    # two 3-cycles: 2*2 = 4 pairs = 2 identity + 2 giving 3-cycles
    assert a[r3, r3, e] == 2
    assert a[r3, r3, r3] == 1
    assert a[r3, t, t] == 2 and a[r3, t, e] == 0


def test_structure_constants_independent_of_representative():
    G = group_from_descriptors("sl(2)", "gf(3)")
    cls = conjugacy_classes(G)
    a = class_algebra_constants(G, cls)
    # recompute with a different element of each class as z
    rng = np.random.default_rng(0)
    c = cls.num_classes
    alt = np.zeros_like(a)
    all_ids = np.arange(G.order)
    xinv = G.inv_ids[all_ids]
    for k in range(c):
        members = np.nonzero(cls.class_of == k)[0]
        z = int(members[rng.integers(len(members))])
        y = G.mul(xinv, np.array([z]))
        np.add.at(alt[:, :, k], (cls.class_of, cls.class_of[y]), 1)
    assert np.array_equal(a, alt)


def test_cyclic_group_table_is_character_group():
    G = group_from_descriptors("gl(1)", "gf(5)")  # C4
    T = dixon_table(G)
    assert dict(T.degree_multiset()) == {1: 4}
    # every row is multiplicative: chi(ab) = chi(a)chi(b) in F_ell
    cls = T.classes
    for row in T.values:
        for x in range(G.order):
            for y in range(G.order):
                xy = int(G.mul(x, y)[0])
                lhs = row[cls.class_of[xy]]
                rhs = row[cls.class_of[x]] * row[cls.class_of[y]] % T.ell
                assert lhs == rhs


def test_sl2_f3_fixture():
    T = dixon_table(group_from_descriptors("sl(2)", "gf(3)"))
    assert dict(T.degree_multiset()) == {1: 3, 2: 3, 3: 1}
    assert T.check_orthogonality()


def test_gl2_f2_fixture():
    T = dixon_table(group_from_descriptors("gl(2)", "gf(2)"))
    assert dict(T.degree_multiset()) == {1: 2, 2: 1}


def test_table_invariants_sl2_z8():
    G = group_from_descriptors("sl(2)", "zmod(2^3)")
    T = dixon_table(G)
    assert T.num_chars == T.classes.num_classes == 30
    assert int((T.degrees**2).sum()) == G.order
    assert not np.any(G.order % T.degrees)
    assert T.check_orthogonality()
    assert np.all(T.values[:, T.identity_class] == T.degrees % T.ell)


def test_seed_stability():
    G = group_from_descriptors("sl(2)", "gf(3)")
    tables = [dixon_table(G, seed=s) for s in range(10)]
    ref = tables[0]
    for T in tables[1:]:
        # canonical sorting makes the full table reproducible across seeds
        assert np.array_equal(T.values, ref.values)
        assert np.array_equal(T.degrees, ref.degrees)


def test_table_on_subgroup_view():
    G = group_from_descriptors("gl(2)", "gf(2)")
    A3 = SubgroupView(G, derived_subgroup_ids(G, np.arange(G.order)))
    T = dixon_table(A3)
    assert dict(T.degree_multiset()) == {1: 3}
    assert T.check_orthogonality()


def test_restriction_multiplicity_identities():
    G = group_from_descriptors("sl(2)", "truncpoly(gf(2),r=2)")
    T = dixon_table(G)
    dual = DualSpace(G.residue_group)
    kernel = G.kernel
    p = 2
    triv = int(np.nonzero((T.degrees == 1)
                          & np.all(T.values == T.values[:, [T.identity_class]], axis=1))[0][0])
    total = np.zeros(T.num_chars, dtype=np.int64)
    for key in range(dual.size):
        exps = psi_exponent_table(dual, kernel, dual.values[key])
        m = restriction_multiplicities(T, kernel.exp_ids, exps, p)
        total += m
        if key == 0:
            assert m[triv] == 1  # trivial character above beta = 0
        else:
            assert m[triv] == 0  # and above nothing else
    # summing over all beta recovers each degree
    assert np.array_equal(total, T.degrees)
