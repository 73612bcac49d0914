import random

from rigikit.chartable import emit_ctb, same_character_data, validate
from rigikit.dixon import (
    character_table_dixon,
    character_table_dixon_mapped,
    class_constants,
    dixon_parameters,
)
from rigikit.rigidity import ClassTriple, frobenius_count
from rigikit.smallgrp import conjugacy_classes, group_from_spec


def test_parameters_smallest_qualifying_prime():
    # l = 1 (mod exponent), l > 2*ceil(sqrt(order)), smallest such
    ell, omega = dixon_parameters(168, 84)
    assert ell == 337
    assert pow(omega, 84, ell) == 1
    assert all(pow(omega, 84 // p, ell) != 1 for p in (2, 3, 7))
    assert dixon_parameters(120, 60)[0] == 61
    assert dixon_parameters(48, 24)[0] == 73
    assert dixon_parameters(6, 6)[0] == 7


def test_s3_table():
    t = character_table_dixon(group_from_spec("SL(2,2)"))
    assert sorted(t.degree_int(r) for r in range(3)) == [1, 1, 2]
    assert validate(t).ok


def test_degrees_sl25_psl27():
    t = character_table_dixon(group_from_spec("SL(2,5)"))
    assert [t.degree_int(r) for r in range(9)] == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert validate(t).ok
    t7 = character_table_dixon(group_from_spec("PSL(2,7)"))
    assert [t7.degree_int(r) for r in range(6)] == [1, 3, 3, 6, 7, 8]
    assert validate(t7).ok
    # the two degree-3 rows carry values of conductor 7
    deg3 = [r for r in range(6) if t7.degree_int(r) == 3]
    assert {max(v.conductor for v in t7.rows[r]) for r in deg3} == {7}


def test_class_constants_identities():
    for spec in ("GL(1,3)", "SL(2,2)", "PSL(2,7)"):
        g = group_from_spec(spec)
        cc = conjugacy_classes(g)
        tensor = class_constants(g)
        k = len(cc)
        # order classes the same way the tensor does: identity first
        order = sorted(range(k), key=lambda i: (cc[i].order != 1, cc[i].order,
                                                cc[i].size, cc[i].rep.key))
        sizes = [cc[i].size for i in order]
        for i in range(k):
            for j in range(k):
                total = sum(tensor.get((i, j, t), 0) * sizes[t] for t in range(k))
                assert total == sizes[i] * sizes[j]


def test_order2_group_constant():
    g = group_from_spec("GL(1,3)")
    tensor = class_constants(g)
    # classes: 0 = identity, 1 = the involution; (-1)(-1) = 1
    assert tensor[(1, 1, 0)] == 1


def test_determinism():
    a = emit_ctb(character_table_dixon(group_from_spec("SL(2,5)")))
    b = emit_ctb(character_table_dixon(group_from_spec("SL(2,5)")))
    assert a == b


def brute_triple_count(group, cls1, cls2, cls3):
    members3 = {group.elements[i].key for i in cls3.indices}
    count = 0
    for i in cls1.indices:
        x = group.elements[i]
        for j in cls2.indices:
            y = group.elements[j]
            if (x * y).inverse().key in members3:
                count += 1
    return count


def test_oracle_equivalence_randomized():
    rng = random.Random(20240607)
    for spec in ("SL(2,2)", "GL(2,3)", "SL(2,5)", "PSL(2,7)"):
        g = group_from_spec(spec)
        table, class_map = character_table_dixon_mapped(g)
        k = table.n_classes
        for _ in range(20):
            i, j, t = (rng.randrange(k) for _ in range(3))
            n_char = frobenius_count(table, ClassTriple(i, j, t))
            n_brute = brute_triple_count(g, class_map[i], class_map[j], class_map[t])
            assert n_char == n_brute, (spec, i, j, t)


def test_psl27_constant_cross_check():
    g = group_from_spec("PSL(2,7)")
    table, class_map = character_table_dixon_mapped(g)
    i2 = table.class_index("2A")
    i3 = table.class_index("3A")
    i7 = table.class_index("7A")
    n = frobenius_count(table, ClassTriple(i2, i3, i7))
    assert n == 168
    assert brute_triple_count(g, class_map[i2], class_map[i3], class_map[i7]) == 168
