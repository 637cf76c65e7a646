import pytest

from extweyl.intlinalg import dot, mat_mul, mat_vec
from extweyl.root_core import (
    EXTRALONG,
    LONG,
    SHORT,
    RootSystemError,
    RootSystemType,
    build,
    coxeter_evaluate,
    doubled_lattice_inside_l_eff,
    invariant_form,
    k_delta,
    l_eff_quotient,
    pairing_value_sets,
)

ROOT_COUNTS = {
    ("A", 1): 2,
    ("A", 2): 6,
    ("A", 3): 12,
    ("B", 2): 8,
    ("B", 3): 18,
    ("C", 3): 18,
    ("D", 4): 24,
    ("E", 6): 72,
    ("E", 7): 126,
    ("E", 8): 240,
    ("F", 4): 48,
    ("G", 2): 12,
    ("BC", 1): 4,
    ("BC", 2): 12,
}


def short_long_basis(rs):
    i, j = rs.basis[:2]
    if rs.lengths[i] == SHORT and rs.lengths[j] != SHORT:
        return i, j
    return j, i


def test_rank_constraints():
    for fam, bad in [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("F", 3), ("G", 3), ("BC", 0)]:
        with pytest.raises(RootSystemError):
            RootSystemType(fam, bad)
    with pytest.raises(RootSystemError):
        RootSystemType("H", 3)


def test_simply_laced_flags():
    assert not RootSystemType("A", 1).is_simply_laced()
    assert RootSystemType("A", 1).is_single_length()
    assert RootSystemType("A", 2).is_simply_laced()
    assert RootSystemType("D", 5).is_simply_laced()
    assert RootSystemType("E", 7).is_simply_laced()
    for fam, rk in [("B", 2), ("C", 3), ("F", 4), ("G", 2), ("BC", 2)]:
        assert not RootSystemType(fam, rk).is_simply_laced()


def test_root_counts():
    for (fam, rk), n in ROOT_COUNTS.items():
        assert len(build(fam, rk).roots) == n


def test_table1_rows():
    # <a^,b>, r_a.b - b = m*a for the adjacent basis pair with a short
    for fam, pair_ab, mult in [("A", -1, 1), ("B", -2, 2), ("G", -3, 3)]:
        rs = build(fam, 2)
        a, b = short_long_basis(rs)
        assert rs.pairing(a, rs.roots[b]) == pair_ab
        assert rs.pairing(b, rs.roots[a]) == -1
        assert rs.reflect(a, rs.roots[b]) == tuple(
            x + mult * y for x, y in zip(rs.roots[b], rs.roots[a])
        )
        assert rs.reflect(b, rs.roots[a]) == tuple(
            x + y for x, y in zip(rs.roots[a], rs.roots[b])
        )


def test_pairing_basics():
    rs = build("B", 2)
    for i in range(len(rs.roots)):
        assert rs.pairing(i, rs.roots[i]) == 2
    a, b = short_long_basis(rs)
    assert rs.pairing(a, rs.roots[b]) == -2
    # bilinearity in the lattice slot
    lam = tuple(2 * x - 3 * y for x, y in zip(rs.roots[a], rs.roots[b]))
    assert rs.pairing(b, lam) == 2 * rs.pairing(b, rs.roots[a]) - 3 * 2


def test_pairing_value_set_b2():
    vs = pairing_value_sets(build("B", 2))
    assert vs[(SHORT, LONG)] == frozenset({0, 2, -2})
    assert vs[(SHORT, SHORT)] == frozenset({1, -1})


def test_reflect_involution_and_stability():
    for fam, rk in [("A", 2), ("B", 3), ("G", 2), ("BC", 2)]:
        rs = build(fam, rk)
        for i in range(len(rs.roots)):
            assert rs.reflect(i, rs.roots[i]) == tuple(-x for x in rs.roots[i])
            for j in range(len(rs.roots)):
                assert rs.is_root(rs.reflect(i, rs.roots[j]))


def test_reflect_coroot_mirror():
    rs = build("B", 2)
    a, b = short_long_basis(rs)
    assert rs.reflect_coroot(a, rs.coroots[a]) == tuple(-x for x in rs.coroots[a])
    # <b^, a> = -1, so r_a(b^) = b^ + a^
    assert rs.reflect_coroot(a, rs.coroots[b]) == tuple(
        x + y for x, y in zip(rs.coroots[b], rs.coroots[a])
    )


def test_coroot_equivariance_g2_exhaustive():
    rs = build("G", 2)
    for a in range(12):
        for b in range(12):
            lhs = rs.reflect_coroot(a, rs.coroots[b])
            rhs = rs.coroots[rs.index_of(rs.reflect(a, rs.roots[b]))]
            assert lhs == rhs


def test_coroot_bijection_and_negation():
    for fam, rk in [("A", 3), ("C", 3), ("F", 4), ("BC", 2)]:
        rs = build(fam, rk)
        assert len(set(rs.coroots)) == len(rs.roots)
        for i, r in enumerate(rs.roots):
            j = rs.index_of(tuple(-x for x in r))
            assert rs.coroots[j] == tuple(-x for x in rs.coroots[i])


def test_bc_divisible_roots():
    rs = build("BC", 2)
    div = rs.divisible_root_indices()
    assert len(div) == 4
    for i in div:
        assert rs.lengths[i] == EXTRALONG
        half = tuple(x // 2 for x in rs.roots[i])
        assert rs.is_root(half)
    assert len(rs.reduced_root_indices()) == 8


def test_k_delta():
    assert k_delta(RootSystemType("G", 2)) == 3
    assert k_delta(RootSystemType("B", 3)) == 2
    assert k_delta(RootSystemType("BC", 1)) == 2
    for fam, rk in [("A", 2), ("A", 1), ("D", 4), ("E", 6)]:
        with pytest.raises(RootSystemError):
            k_delta(RootSystemType(fam, rk))


def test_l_eff_quotient_cases():
    for fam, rk, want in [
        ("A", 1, "Z2"),
        ("B", 2, "Z2"),
        ("B", 4, "Z2"),
        ("BC", 1, "Z2"),
        ("BC", 3, "Z2"),
        ("C", 3, "0"),
        ("A", 2, "0"),
        ("D", 4, "0"),
        ("F", 4, "0"),
        ("G", 2, "0"),
    ]:
        fp, images = l_eff_quotient(build(fam, rk))
        assert fp.descriptor() == want, (fam, rk)
        if want == "Z2":
            rs = build(fam, rk)
            for i in range(len(rs.roots)):
                if rs.lengths[i] == SHORT:
                    assert images[i] == (1,)
                else:
                    assert images[i] == (0,)


def test_doubled_lattice_inside_l_eff():
    for fam, rk in [("A", 1), ("A", 4), ("B", 3), ("C", 4), ("D", 5), ("E", 6), ("F", 4), ("G", 2), ("BC", 2)]:
        assert doubled_lattice_inside_l_eff(build(fam, rk))


def test_invariant_form_values():
    rs = build("B", 2)
    f = invariant_form(rs)
    a, b = short_long_basis(rs)
    assert dot(rs.roots[a], mat_vec(f, rs.roots[a])) == 1
    assert dot(rs.roots[a], mat_vec(f, rs.roots[b])) == -1
    # A2: normalize the symmetrized form by the gcd over all root pairs
    rs = build("A", 2)
    f = invariant_form(rs)
    from math import gcd

    g = 0
    vals = []
    for x in rs.roots:
        for y in rs.roots:
            v = dot(x, mat_vec(f, y))
            vals.append(v)
            g = gcd(g, v)
    assert g == 1
    assert dot(rs.roots[rs.basis[0]], mat_vec(f, rs.roots[rs.basis[0]])) == 2


def test_invariant_form_invariance_and_perp():
    for fam, rk in [("A", 2), ("B", 3), ("G", 2), ("D", 4)]:
        rs = build(fam, rk)
        f = invariant_form(rs)
        for k in range(rs.rank):
            m = rs._basis_reflections[k]
            # m^T f m == f
            lhs = mat_mul(mat_mul(tuple(zip(*m)), f), m)
            assert lhs == f
        for i in range(len(rs.roots)):
            for j in range(len(rs.roots)):
                if rs.perpendicular(i, j):
                    assert dot(rs.roots[i], mat_vec(f, rs.roots[j])) == 0


def test_invariant_form_unique_up_to_scale():
    rs = build("B", 3)
    f = invariant_form(rs)
    g = tuple(tuple(5 * x for x in row) for row in f)
    # solve the scale on basis pairs
    scales = set()
    for i in range(rs.rank):
        for j in range(rs.rank):
            if f[i][j]:
                assert g[i][j] % f[i][j] == 0
                scales.add(g[i][j] // f[i][j])
    assert scales == {5}


def test_coxeter_evaluate():
    rs = build("A", 2)
    i, j = rs.basis
    assert coxeter_evaluate(rs, []).is_identity()
    assert coxeter_evaluate(rs, [i, i]).is_identity()
    assert coxeter_evaluate(rs, [i, j, i]) == coxeter_evaluate(rs, [j, i, j])
    assert coxeter_evaluate(rs, [i]).det() == -1
    assert coxeter_evaluate(rs, [i, j]).det() == 1


def test_conjugation_identity_all_types():
    # r_a r_b r_a = r_{r_a(b)} at matrix level
    for fam, rk in [("A", 3), ("B", 4), ("C", 3), ("D", 4), ("E", 6), ("F", 4), ("G", 2), ("BC", 2)]:
        rs = build(fam, rk)
        n = len(rs.roots)
        for a in range(n):
            ra = rs.weyl_generator(a)
            for b in range(n):
                lhs = ra * rs.weyl_generator(b) * ra
                rhs = rs.weyl_generator(rs.index_of(rs.reflect(a, rs.roots[b])))
                assert lhs == rhs


def test_dynkin_adjacency():
    rs = build("B", 3)
    adj = rs.dynkin_adjacency
    assert adj[0][1] == 1 and adj[1][2] == 2 and adj[0][2] == 0
    rs = build("G", 2)
    assert rs.dynkin_adjacency[0][1] == 3


def test_weyl_matrices_preserve_pairing():
    rs = build("C", 3)
    for k in range(rs.rank):
        w = rs.weyl_generator(rs.basis[k])
        for i in rs.basis:
            for j in rs.basis:
                assert rs.pairing(i, rs.roots[j]) == dot(
                    mat_vec(tuple(zip(*rs.pairing_matrix)), w.coapply(rs.coroots[i])),
                    w.apply(rs.roots[j]),
                )


def test_build_errors_and_cache():
    with pytest.raises(RootSystemError):
        build("B", 1)
    assert build("A", 2) is build("A", 2)


def test_reduction_keeps_lattice_and_reflections():
    # dropping divisible roots changes neither the root lattice nor the
    # reflection set
    from extweyl.intlinalg import hermite_rows

    for l in (1, 2, 3):
        rs = build("BC", l)
        red = rs.reduced_root_indices()
        full_span = hermite_rows([rs.roots[i] for i in range(len(rs.roots))])
        red_span = hermite_rows([rs.roots[i] for i in red])
        assert full_span == red_span
        refl_all = {rs.weyl_generator(i) for i in range(len(rs.roots))}
        refl_red = {rs.weyl_generator(i) for i in red}
        assert refl_all == refl_red


def test_coroot_effective_quotient_is_dual():
    # the coroot lattice behaves like the dual type: torsion moves from
    # the B side to the C side
    from extweyl.intlinalg import FPAbelianGroup
    from extweyl.root_core import coroot_l_eff_lattice

    for fam, rk, want in [("A", 1, "Z2"), ("B", 2, "Z2"), ("B", 3, "0"), ("C", 3, "Z2"), ("G", 2, "0")]:
        rs = build(fam, rk)
        fp = FPAbelianGroup(rs.rank, coroot_l_eff_lattice(rs))
        assert fp.descriptor() == want, (fam, rk)
