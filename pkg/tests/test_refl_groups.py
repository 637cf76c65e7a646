import random

import pytest

from extweyl.ext_root import fully_extended, span_extended
from extweyl.intlinalg import is_zero_mat, outer
from extweyl.refl_groups import (
    AElement,
    ClosureCapError,
    ReflectionLabel,
    SymSystem,
    act_on_root,
    check_reflection_group,
    check_sym_axioms,
    conj_reflect,
    evaluate_word_in_a,
    k_in_twist_decomposition,
    label_k_part,
    reflection_sym_system,
    terminal_group,
)
from extweyl.root_core import build
from extweyl.weyl import random_label


def test_sym_axioms_trivial():
    assert check_sym_axioms(SymSystem.trivial(3)).ok


def test_sym_axioms_a2_conjugation_table():
    sym, _ = reflection_sym_system(build("A", 2))
    assert sym.size == 3
    assert check_sym_axioms(sym).ok


def test_sym_axioms_corrupted():
    sym, _ = reflection_sym_system(build("A", 2))
    table = [list(r) for r in sym.table]
    table[0][1] = (table[0][1] + 1) % sym.size
    rep = check_sym_axioms(SymSystem(sym.size, table))
    assert not rep.ok
    assert any(c.witness for c in rep.failed())


def test_terminal_group_singleton():
    order, orbits = terminal_group(SymSystem.trivial(1))
    assert order == 1
    assert orbits == [[0]]


def test_terminal_group_a2_is_s3():
    sym, _ = reflection_sym_system(build("A", 2))
    order, orbits = terminal_group(sym)
    assert order == 6
    assert orbits == [[0, 1, 2]]


def test_terminal_group_trivial_multiplication():
    # every left multiplication is the identity permutation
    order, orbits = terminal_group(SymSystem.trivial(4))
    assert order == 1
    assert orbits == [[0], [1], [2], [3]]


def test_terminal_group_cap():
    with pytest.raises(ClosureCapError):
        terminal_group(SymSystem.trivial(99), cap_elements=64)


def perm_tools(size):
    ident = tuple(range(size))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(size))

    return ident, mul


def test_check_reflection_group_weyl_on_a2():
    rs = build("A", 2)
    sym, reps = reflection_sym_system(rs)
    images = [rs.weyl_generator(r) for r in reps]
    ident = rs.weyl_generator(reps[0]) * rs.weyl_generator(reps[0])

    def mul(x, y):
        return x * y

    def act(x, t):
        target = x.apply(rs.roots[reps[t]])
        i = rs.index_of(target)
        for k, r in enumerate(reps):
            if rs.same_reflection(i, r):
                return k
        raise AssertionError

    rep = check_reflection_group(sym, images, mul, ident, act)
    assert rep.ok  # proper terminal realization


def test_check_reflection_group_z2_squared_on_trivial_system():
    # the group Z2 x Z2 with the two generators acting trivially is a
    # reflection group for the 2-element trivial system
    sym = SymSystem.trivial(2)
    images = [(1, 0), (0, 1)]

    def mul(x, y):
        return ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)

    def act(x, t):
        return t

    rep = check_reflection_group(sym, images, mul, (0, 0), act)
    assert rep.ok


def test_check_reflection_group_identity_images_fail():
    sym, reps = reflection_sym_system(build("A", 2))
    images = [(0,)] * sym.size

    def mul(x, y):
        return (0,)

    def act(x, t):
        return t

    rep = check_reflection_group(sym, images, mul, (0,), act)
    failed = [c.name for c in rep.failed()]
    assert any(n.startswith("G2") for n in failed)
    assert not any(n.startswith("G4") for n in failed)
    assert not rep.checks[-2].passed  # does not separate reflections


def test_label_canonicalization():
    ers = fully_extended("A", 1, n=1)
    t1 = ReflectionLabel.make(ers, (1,), 0)
    t2 = ReflectionLabel.make(ers, (-1,), 1)
    assert t1 == t2
    # BC: a divisible-root label with even shift reduces to the short root
    bc = fully_extended("BC", 1, n=1)
    div = bc.delta.divisible_root_indices()[0]
    red = bc.delta.reduced_root_indices()
    t = ReflectionLabel.make(bc, (2,), div)
    assert t.root in red
    t_odd = ReflectionLabel.make(bc, (1,), div)
    assert t_odd.root not in red


def test_label_k_part():
    ers = fully_extended("A", 1, n=2)
    t = ReflectionLabel.make(ers, (0, 0), 0)
    assert is_zero_mat(label_k_part(ers, t))
    t2 = ReflectionLabel.make(ers, (1, 0), 1)
    assert label_k_part(ers, t2) == outer(t2.g, ers.delta.coroots[t2.root])


def test_k_part_twist_decomposition():
    rng = random.Random(3)
    for ers in [
        span_extended("B", 2, n=2, g1=(0,)),
        span_extended("C", 3, n=2, g1=(0,)),
        span_extended("G", 2, n=2, g1=(0,)),
    ]:
        for _ in range(50):
            t = random_label(ers, rng)
            assert k_in_twist_decomposition(ers, label_k_part(ers, t))


def test_a_element_group_axioms():
    ers = span_extended("B", 2, n=2, g1=(0,))
    rng = random.Random(0)
    ident = AElement.identity(ers)
    for _ in range(50):
        t = random_label(ers, rng)
        a = AElement.generator(ers, t)
        assert (a * a).is_identity()
        assert (a * a.inv()).is_identity()
        b = AElement.generator(ers, random_label(ers, rng))
        c = AElement.generator(ers, random_label(ers, rng))
        assert (a * b) * c == a * (b * c)
        assert ident * a == a


def test_a_conjugation_matches_labels():
    ers = span_extended("B", 2, n=2, g1=(0,))
    rng = random.Random(1)
    for _ in range(200):
        t1, t2 = random_label(ers, rng), random_label(ers, rng)
        a1, a2 = AElement.generator(ers, t1), AElement.generator(ers, t2)
        assert a1 * a2 * a1.inv() == AElement.generator(ers, conj_reflect(ers, t1, t2))


def test_conj_reflect_examples():
    ers = fully_extended("A", 1, n=1)
    root_pos = ers.delta.index_of((1,))
    t0 = ReflectionLabel.make(ers, (0,), root_pos)
    t1 = ReflectionLabel.make(ers, (1,), root_pos)
    assert conj_reflect(ers, t0, t0) == t0
    # r_(0,a).r_(1,a) = r_(1,-a), canonically (-1, a)
    got = conj_reflect(ers, t0, t1)
    assert got == ReflectionLabel.make(ers, (-1,), root_pos)
    # perpendicular pair: conjugation fixes the label
    d4 = fully_extended("D", 4, n=1)
    rs = d4.delta
    pair = next(
        (i, j)
        for i in range(len(rs.roots))
        for j in range(len(rs.roots))
        if rs.perpendicular(i, j)
    )
    s = ReflectionLabel.make(d4, (2,), pair[0])
    t = ReflectionLabel.make(d4, (5,), pair[1])
    assert conj_reflect(d4, s, t) == t


def test_act_on_root():
    ers = span_extended("B", 2, n=2, g1=(0,))
    rng = random.Random(2)
    ident = AElement.identity(ers)
    for _ in range(100):
        beta = rng.randrange(len(ers.delta.roots))
        h = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert act_on_root(ers, ident, h, beta) == (h, beta)
        t = random_label(ers, rng)
        a = AElement.generator(ers, t)
        h2, b2 = act_on_root(ers, a, h, beta)
        m = ers.delta.pairing(t.root, ers.delta.roots[beta])
        assert h2 == tuple(x - m * g for x, g in zip(h, t.g))
        assert b2 == ers.delta.reflect_root_index(t.root, beta)


def test_center_trivial():
    ers = span_extended("B", 2, n=2, g1=(0,))
    rng = random.Random(4)
    gens = [AElement.generator(ers, random_label(ers, rng)) for _ in range(12)]
    count = 0
    while count < 500:
        word = [random_label(ers, rng) for _ in range(rng.randint(1, 6))]
        x = evaluate_word_in_a(ers, word)
        if x.is_identity():
            continue
        count += 1
        assert any(x * g != g * x for g in gens)


def test_k_fix_trivial():
    # nonzero K-elements are moved by some simple generator
    rng = random.Random(5)
    ers = span_extended("B", 2, n=2, g1=(0,))
    from extweyl.intlinalg import mat_mul, transpose

    moved = 0
    for _ in range(100):
        k = None
        for _ in range(rng.randint(1, 3)):
            part = label_k_part(ers, random_label(ers, rng))
            k = part if k is None else tuple(
                tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(k, part)
            )
        if is_zero_mat(k):
            continue
        moved += 1
        assert any(
            mat_mul(k, transpose(ers.delta.weyl_generator(b).comatrix)) != k
            for b in ers.delta.basis
        )
    assert moved > 50


def test_separates_reflections():
    ers = span_extended("B", 2, n=2, g1=(0,))
    rng = random.Random(6)
    for _ in range(500):
        t1, t2 = random_label(ers, rng), random_label(ers, rng)
        if t1 == t2:
            continue
        assert AElement.generator(ers, t1) != AElement.generator(ers, t2)
