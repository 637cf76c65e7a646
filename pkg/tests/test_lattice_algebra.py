import json
import pathlib

from extweyl.intlinalg import lattice_contains, hermite_rows
from extweyl.lattice_algebra import (
    box_quotient,
    boxtimes_form,
    coinvariants,
    inclusion_indices,
    lattice_embedding_matrix,
    root_box_form,
    _tensor_of,
)
from extweyl.root_core import LONG, SHORT, build, k_delta

GOLDEN = pathlib.Path(__file__).parent / "golden" / "tensor_types.json"


def test_coinvariants_examples():
    assert coinvariants(build("A", 2), "root", "root").descriptor() == "Z"
    assert coinvariants(build("B", 2), "root", "root").descriptor() == "Z x Z2"
    assert coinvariants(build("B", 3), "root", "coroot").descriptor() == "Z"
    assert coinvariants(build("BC", 2), "root", "root").descriptor() == "Z x Z2"
    assert coinvariants(build("BC", 2), "root", "coroot").descriptor() == "Z x Z2"


def test_coinvariants_symmetry():
    # the swap map induces the identity: e_i x e_j - e_j x e_i dies
    for fam, rk in [("A", 2), ("B", 2), ("G", 2)]:
        rs = build(fam, rk)
        fp = coinvariants(rs, "root", "root")
        l = rs.rank
        for i in range(l):
            for j in range(l):
                diff = [0] * (l * l)
                diff[i * l + j] += 1
                diff[j * l + i] -= 1
                assert fp.is_zero(diff)


def test_root_combination_identities():
    # 2 a (x) b = <a^, b> a (x) a, and the non-adjacent swap identity
    for fam, rk in [("A", 2), ("B", 2), ("G", 2)]:
        rs = build(fam, rk)
        fp = coinvariants(rs, "root", "root")
        n = len(rs.roots)
        for a in range(n):
            ta = _tensor_of(rs, "root", "root", a, a)
            for b in range(n):
                m = rs.pairing(a, rs.roots[b])
                tab = _tensor_of(rs, "root", "root", a, b)
                diff = tuple(2 * x - m * y for x, y in zip(tab, ta))
                assert fp.is_zero(diff)


def test_nonadjacent_basis_tensors_vanish():
    rs = build("A", 3)
    fp = coinvariants(rs, "root", "root")
    l = rs.rank
    i, k = rs.basis[0], rs.basis[2]
    assert rs.pairing(i, rs.roots[k]) == 0
    t = _tensor_of(rs, "root", "root", i, k)
    assert fp.is_zero(t)


def test_generating_set_claim():
    # projections of {a x a : a short} u {a x r_b(a) : a short} span
    for fam, rk in [("B", 2), ("C", 3), ("G", 2), ("A", 2)]:
        rs = build(fam, rk)
        fp = coinvariants(rs, "root", "root")
        shorts = [i for i in range(len(rs.roots)) if rs.lengths[i] == SHORT]
        images = []
        for a in shorts:
            images.append(fp.project(_tensor_of(rs, "root", "root", a, a)))
            for b in range(len(rs.roots)):
                rb = rs.index_of(rs.reflect(b, rs.roots[a]))
                images.append(fp.project(_tensor_of(rs, "root", "root", a, rb)))
        # the image subgroup of Z^free x prod Z_d must be everything
        width = fp.free_rank + len(fp.torsion)
        rows = [list(f) + list(t) for f, t in images]
        for i, d in enumerate(fp.torsion):
            rows.append([0] * fp.free_rank + [0] * i + [d] + [0] * (len(fp.torsion) - i - 1))
        h = hermite_rows(rows)
        for j in range(width):
            assert lattice_contains(h, tuple(int(t == j) for t in range(width)))


def test_box_quotients_are_z():
    for fam, rk in [("A", 1), ("B", 2), ("C", 3), ("G", 2), ("BC", 2), ("D", 4)]:
        rs = build(fam, rk)
        for pair in (("root", "root"), ("root", "coroot"), ("coroot", "coroot")):
            assert box_quotient(rs, *pair).descriptor() == "Z", (fam, rk, pair)


def test_box_form_kills_perpendicular_pairs():
    # includes long pairs, which are not imposed as relations
    for fam, rk in [("D", 4), ("B", 3), ("A", 3)]:
        rs = build(fam, rk)
        f = root_box_form(rs)
        for i in range(len(rs.roots)):
            for j in range(len(rs.roots)):
                if rs.perpendicular(i, j):
                    assert f.value_roots(i, j) == 0


def test_box_form_invariance():
    for fam, rk in [("B", 2), ("G", 2), ("BC", 2)]:
        rs = build(fam, rk)
        f = boxtimes_form(rs)
        from extweyl.intlinalg import mat_mul

        for k in range(rs.rank):
            m = rs._basis_coreflections[k]
            assert mat_mul(mat_mul(tuple(zip(*m)), f.gram), m) == f.gram


def test_box_form_symmetric_and_gcd_one():
    from math import gcd

    for fam, rk in [("A", 1), ("B", 2), ("C", 3), ("G", 2)]:
        f = boxtimes_form(build(fam, rk))
        g = 0
        for i, row in enumerate(f.gram):
            for j, x in enumerate(row):
                assert x == f.gram[j][i]
                g = gcd(g, x)
        assert g == 1


def test_a1_box_generator():
    rs = build("A", 1)
    f = root_box_form(rs)
    # single generator a x a with unit projection, positive by convention
    assert f.value_roots(rs.basis[0], rs.basis[0]) == 1


def test_box_anchor_sign():
    for fam, rk in [("B", 2), ("C", 3), ("F", 4), ("G", 2)]:
        rs = build(fam, rk)
        anchor = next(b for b in rs.basis if rs.lengths[b] == LONG)
        assert boxtimes_form(rs).value(rs.coroots[anchor], rs.coroots[anchor]) > 0


def test_lattice_embedding_chain():
    # k * (coroot lattice) <= image(phi) <= coroot lattice
    for fam, rk in [("B", 2), ("B", 3), ("C", 3), ("F", 4), ("G", 2)]:
        rs = build(fam, rk)
        k = k_delta(rs.rs_type)
        phi = lattice_embedding_matrix(rs)
        image = hermite_rows(list(zip(*phi)))
        l = rs.rank
        for j in range(l):
            scaled = tuple(k * int(i == j) for i in range(l))
            assert lattice_contains(image, scaled)
        # the image is the span of the short-root coroots
        shorts = hermite_rows(
            [rs.coroots[i] for i in range(len(rs.roots)) if rs.lengths[i] == SHORT]
        )
        assert image == shorts


def test_inclusion_indices_positive():
    for fam, rk in [("B", 2), ("B", 4), ("C", 3), ("F", 4), ("G", 2)]:
        phi, psi = inclusion_indices(build(fam, rk))
        assert phi > 0 and psi > 0


def test_inclusion_indices_reject_single_length():
    import pytest
    from extweyl.root_core import RootSystemError

    for fam, rk in [("A", 2), ("D", 4), ("BC", 2)]:
        with pytest.raises(RootSystemError):
            inclusion_indices(build(fam, rk))


def test_golden_tensor_types():
    data = json.loads(GOLDEN.read_text())
    for entry in data["entries"]:
        rs = build(entry["family"], entry["rank"])
        left, right = entry["pair"].split(",")
        fp = coinvariants(rs, left, right)
        assert fp.descriptor() == entry["descriptor"], entry
        assert fp.invariant_factors == entry["invariant_factors"], entry
    for entry in data["box_values"]:
        rs = build(entry["family"], entry["rank"])
        f = boxtimes_form(rs)
        anchor = next(
            (b for b in rs.basis if rs.lengths[b] == LONG), rs.basis[0]
        )
        assert f.value(rs.coroots[anchor], rs.coroots[anchor]) == entry["value"]
    for entry in data["inclusion_indices"]:
        assert list(inclusion_indices(build(entry["family"], entry["rank"]))) == entry["indices"]
