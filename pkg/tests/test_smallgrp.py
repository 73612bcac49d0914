import random

import pytest

from rigikit.smallgrp import (
    GroupTooLargeError,
    UnsupportedSpectrumError,
    class_membership_predicate,
    class_orbit,
    closure,
    conjugacy_classes,
    direct_triple_count,
    gl_generators,
    gram_antidiagonal,
    group_from_spec,
    identity,
    is_quadratic_unipotent,
    jordan_type,
    lemma_sl_triple_count,
    lemma_so_triple_count,
    make_element,
    order_gl,
    order_pgl,
    order_psl,
    order_sl,
    order_so_even_plus,
    parse_generator_file,
    preserves_form,
    regular_unipotent_sl,
    sl_generators,
    sl_regular_unipotent_class_size,
    so_generators,
)


def test_closure_orders_match_formulas():
    assert group_from_spec("SL(2,5)").order == order_sl(2, 5) == 120
    assert group_from_spec("GL(2,3)").order == order_gl(2, 3) == 48
    assert group_from_spec("PSL(2,7)").order == order_psl(2, 7) == 168
    assert group_from_spec("PGL(2,5)").order == order_pgl(2, 5) == 120
    assert group_from_spec("SO(4,3)").order == order_so_even_plus(2, 3) == 576


def test_trivial_group():
    g = closure([identity(2, 3)])
    assert g.order == 1
    assert len(conjugacy_classes(g)) == 1


def test_conjugacy_class_counts():
    assert len(conjugacy_classes(group_from_spec("SL(2,5)"))) == 9
    psl = group_from_spec("PSL(2,7)")
    cc = conjugacy_classes(psl)
    assert len(cc) == 6
    assert sorted(c.size for c in cc) == [1, 21, 24, 24, 42, 56]
    assert sum(c.size for c in cc) == psl.order


def test_classes_stable_under_generator_conjugation():
    g = group_from_spec("SL(2,5)")
    cc = conjugacy_classes(g)
    rng = random.Random(5)
    for c in cc:
        members = {g.elements[i].key for i in c.indices}
        for _ in range(3):
            x = g.elements[rng.choice(c.indices)]
            for gen in g.generators:
                y = gen * x * gen.inverse()
                assert y.key in members


def test_group_closed_under_product_and_inverse():
    g = group_from_spec("GL(2,3)")
    rng = random.Random(11)
    for _ in range(60):
        a = rng.choice(g.elements)
        b = rng.choice(g.elements)
        assert (a * b).key in g.index
        assert a.inverse().key in g.index


def test_class_orbit_examples():
    # regular unipotent in SL2(3): centralizer order 6 in a group of order 24
    gens = sl_generators(2, 3)
    z = regular_unipotent_sl(2, 3)
    assert len(class_orbit(z, gens)) == 4
    # central element: orbit of size one
    center = make_element([[2, 0], [0, 2]], 3)
    assert len(class_orbit(center, gens)) == 1
    # involution in SL4(3): |SL4(3)| / |S(GL2 x GL2)(3)| = 12130560 / 1152
    gens4 = sl_generators(4, 3)
    rep = make_element([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 3)
    expected = order_sl(4, 3) // (order_gl(2, 3) * order_gl(2, 3) // (3 - 1))
    assert expected == 10530
    assert len(class_orbit(rep, gens4)) == expected


def test_caps_raise():
    with pytest.raises(GroupTooLargeError):
        group_from_spec("SL(2,5)", cap=50)
    gens4 = sl_generators(4, 3)
    rep = make_element([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 3)
    with pytest.raises(GroupTooLargeError):
        class_orbit(rep, gens4, cap=100)


def test_jordan_types():
    assert jordan_type(identity(4, 3)).partitions == ((1, (1, 1, 1, 1)),)
    assert jordan_type(regular_unipotent_sl(4, 3)).partitions == ((1, (4,)),)
    two_blocks = make_element(
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]], 3)
    assert jordan_type(two_blocks).partition(1) == (2, 2)
    assert is_quadratic_unipotent(two_blocks)
    assert not is_quadratic_unipotent(identity(4, 3))
    assert not is_quadratic_unipotent(regular_unipotent_sl(4, 3))
    inv = make_element([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 3)
    jt = jordan_type(inv)
    assert jt.partition(1) == (1, 1) and jt.partition(-1) == (1, 1)
    assert jt.eigenvalue_spectrum == ((1, 2), (-1, 2))
    with pytest.raises(UnsupportedSpectrumError):
        jordan_type(make_element([[2, 0], [0, 4]], 7))


def test_jordan_type_conjugation_invariant():
    g = group_from_spec("SL(2,5)")
    rng = random.Random(3)
    z = regular_unipotent_sl(2, 5)
    jt = jordan_type(z)
    for _ in range(10):
        h = rng.choice(g.elements)
        assert jordan_type(h * z * h.inverse()) == jt


def test_direct_triple_count_representative_independent():
    psl = group_from_spec("PSL(2,7)")
    cc = conjugacy_classes(psl)
    by_size = {c.size: c for c in cc}
    c2a, c3a = by_size[21], by_size[56]
    sevens = [c for c in cc if c.order == 7]
    orbit = [psl.elements[i] for i in c2a.indices]
    members = {psl.elements[i] for i in c3a.indices}
    pred = class_membership_predicate(members)
    rng = random.Random(9)
    for c7 in sevens:
        counts = set()
        for _ in range(3):
            rep = psl.elements[rng.choice(c7.indices)]
            counts.add(direct_triple_count(orbit, pred, rep, c7.size))
        assert counts == {168}


def test_sl_regular_unipotent_class_size_formula():
    # brute-force cross-check in SL2(3) and SL3(3)
    gens = sl_generators(2, 3)
    assert sl_regular_unipotent_class_size(2, 3) == len(
        class_orbit(regular_unipotent_sl(2, 3), gens))
    gens3 = sl_generators(3, 3)
    assert sl_regular_unipotent_class_size(3, 3) == len(
        class_orbit(regular_unipotent_sl(3, 3), gens3))


def test_so4_generators_preserve_form():
    for p in (3, 5):
        gram = gram_antidiagonal(4, p)
        for gen in so_generators(2, p):
            assert preserves_form(gen, gram)
            assert gen.det() == 1


def test_lemma_sl_counts_vanish():
    assert lemma_sl_triple_count(2, 3)["total"] == 0
    assert lemma_sl_triple_count(3, 3)["total"] == 0
    assert lemma_sl_triple_count(3, 5)["total"] == 0


def test_lemma_so_count_vanishes_q3():
    counts = lemma_so_triple_count(2, 3)
    assert counts["total"] == 0
    # SO4 is not simple: both partition-(3,1) classes must have been swept
    assert sum(1 for k in counts if k.startswith("involution0 x")) == 2


def test_lemma_rejects_char_2():
    with pytest.raises(ValueError):
        lemma_sl_triple_count(3, 2)
    with pytest.raises(ValueError):
        lemma_so_triple_count(2, 2)


def test_group_spec_errors():
    for bad in ("SL(2,4)", "XX(2,3)", "SO(5,3)", "SL(2)", "SL(2,6)"):
        with pytest.raises(ValueError):
            group_from_spec(bad)


def test_generator_file_roundtrip():
    text = """\
# a transvection and a Weyl element
matrix 2 5
1 1
0 1
matrix 2 5
0 4
1 0
"""
    gens = parse_generator_file(text)
    assert len(gens) == 2
    assert closure(gens).order == order_sl(2, 5)
    with pytest.raises(ValueError):
        parse_generator_file("matrix 2 5\n1 1\n")
    with pytest.raises(ValueError):
        parse_generator_file("matrix 2 5\n1 1 1\n0 1\n")


def test_projective_canonicalization():
    a = make_element([[1, 1], [0, 1]], 7, projective=True)
    b = make_element([[3, 3], [0, 3]], 7, projective=True)
    assert a == b and hash(a) == hash(b)
    c = make_element([[1, 1], [0, 1]], 7, projective=False)
    assert a != c


def test_element_orders():
    g = make_element([[1, 1], [0, 1]], 5)
    assert g.order() == 5
    w = make_element([[0, 4], [1, 0]], 5)
    assert w.order() == 4
