import numpy as np
import pytest

from ringreps.groups import (BoundExceededError, SubgroupView,
                             centralizer_of_element, conjugacy_classes,
                             derived_subgroup_ids, enumerate_points,
                             find_generators, group_from_descriptors,
                             subgroup_closure)
from ringreps.rings import parse_ring
from ringreps.schemes import parse_scheme


@pytest.mark.parametrize("scheme,ring,order", [
    ("sl(2)", "zmod(2^2)", 48),
    ("gl(2)", "truncpoly(gf(2),r=2)", 96),
    ("sl(2)", "zmod(2^3)", 384),
    ("sl(2)", "truncpoly(gf(2),r=3)", 384),
    ("gl(2)", "gf(3)", 48),
    ("sp(4)", "gf(2)", 720),
])
def test_orders(scheme, ring, order):
    G = group_from_descriptors(scheme, ring)
    assert G.order == order
    # |G(R)| = |G(F_q)| * q^((r-1) dim g)
    res = G.residue_group
    q = G.ring.field.q
    dim = G.scheme.lie_dim
    assert G.order == res.order * q ** ((G.ring.length - 1) * dim)


def test_group_closure_random(rng):
    G = group_from_descriptors("sl(2)", "zmod(2^3)")
    a = rng.integers(0, G.order, size=300)
    b = rng.integers(0, G.order, size=300)
    ab = G.mul(a, b)  # raises if any product escapes the element list
    assert np.array_equal(G.mul(ab, G.inv_ids[b]), a)
    assert np.array_equal(G.mul(G.inv_ids[a], ab), b)
    assert np.array_equal(G.mul(a, np.full(300, G.identity)), a)


def test_reduction_is_surjective_with_uniform_fibers():
    G = group_from_descriptors("gl(2)", "witt2(gf(2))")
    res = G.residue_group
    rho = G.rho_ids
    counts = np.bincount(rho, minlength=res.order)
    assert np.all(counts == G.order // res.order)
    # homomorphism on random pairs
    rng = np.random.default_rng(0)
    a, b = rng.integers(0, G.order, size=(2, 200))
    assert np.array_equal(rho[G.mul(a, b)], res.mul(rho[a], rho[b]))


@pytest.mark.parametrize("scheme,ring", [
    ("sl(2)", "truncpoly(gf(3),r=2)"),
    ("gl(2)", "zmod(2^2)"),
    ("sl(2)", "witt2(gf(4))"),
])
def test_kernel_subgroup(scheme, ring):
    G = group_from_descriptors(scheme, ring)
    K = G.kernel
    q = G.ring.field.q
    p = G.ring.field.p
    assert K.order == q**G.scheme.lie_dim
    # elementary abelian of exponent p; exp is additive
    rng = np.random.default_rng(1)
    for _ in range(50):
        c1 = rng.integers(0, q, size=K.basis.dim)
        c2 = rng.integers(0, q, size=K.basis.dim)
        u, v = K.exp(c1), K.exp(c2)
        F = G.ring.field
        assert int(G.mul(u, v)[0]) == K.exp(F.add[c1, c2])
        assert np.array_equal(K.log(u), c1)
        w = u
        for _ in range(p - 1):
            w = int(G.mul(w, u)[0])
        assert w == G.identity
    # normal: conjugation by random elements stays in the kernel
    g = rng.integers(0, G.order, size=K.order)
    conj = G.conj(g, K.ids[rng.integers(0, K.order, size=K.order)])
    assert np.all(np.isin(conj, K.ids))


def test_conjugacy_fixture_gl2f2():
    # GL2(F2) is isomorphic to S3: class sizes 1, 2, 3
    G = group_from_descriptors("gl(2)", "gf(2)")
    cls = conjugacy_classes(G)
    assert sorted(cls.sizes.tolist()) == [1, 2, 3]
    assert np.all(cls.sizes * cls.centralizer_orders == G.order)


def test_known_class_counts():
    assert group_from_descriptors("sl(2)", "truncpoly(gf(2),r=3)").classes.num_classes == 24
    assert group_from_descriptors("sl(2)", "zmod(2^3)").classes.num_classes == 30


def test_abelian_group_every_class_singleton():
    G = group_from_descriptors("gl(1)", "zmod(3^2)")
    cls = G.classes
    assert cls.num_classes == G.order == 6


def test_centralizer_of_element():
    G = group_from_descriptors("sl(2)", "gf(3)")
    cen = centralizer_of_element(G, G.identity)
    assert len(cen) == G.order
    x = next(i for i in range(G.order) if i != G.identity)
    cen = centralizer_of_element(G, x)
    assert G.order % len(cen) == 0
    assert np.all(G.mul(cen, np.full(len(cen), x)) == G.mul(np.full(len(cen), x), cen))


def test_subgroup_closure_and_generators():
    G = group_from_descriptors("gl(2)", "gf(2)")  # ~ S3
    # derived subgroup of S3 is A3 (order 3)
    D = derived_subgroup_ids(G, np.arange(G.order))
    assert len(D) == 3
    gens = find_generators(G, D)
    assert np.array_equal(subgroup_closure(G, gens), D)
    view = SubgroupView(G, D, check_closure=True)
    assert view.order == 3
    assert conjugacy_classes(view).num_classes == 3  # abelian


def test_bound_refusal_reports_required():
    with pytest.raises(BoundExceededError) as exc:
        enumerate_points(parse_scheme("sl(2)"), parse_ring("gf(7)"), max_order=100)
    assert exc.value.required == 336


def test_minimal_class_representatives():
    G = group_from_descriptors("sl(2)", "zmod(2^2)")
    cls = G.classes
    for k, rep in enumerate(cls.reps):
        members = np.nonzero(cls.class_of == k)[0]
        assert rep == members.min()
