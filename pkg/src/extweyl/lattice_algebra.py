"""Coinvariant and box quotients of lattice tensor squares.

For a root system with Weyl group V this module presents quotients of
L (x) L' by the diagonal V-action, L, L' being the root or the coroot
lattice, and computes their invariant factors by Smith reduction.  The
box quotient additionally kills the tensors of perpendicular reflection
pairs; it is infinite cyclic for every type, and its projection to Z is
the bilinear form that powers the Weyl-group cocycle.

Presentations use the simple reflections only: they generate the Weyl
group, and the relation subgroup they span is the full one because it
is closed under the group action.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from extweyl.intlinalg import (
    FPAbelianGroup,
    Matrix,
    Vector,
    dot,
    freeze,
    mat_vec,
    smith_normal_form,
    transpose,
)
from extweyl.root_core import (
    LONG,
    SHORT,
    FiniteRootSystem,
    RootSystemError,
    k_delta,
)

ROOT = "root"
COROOT = "coroot"


def _side_data(rs: FiniteRootSystem, side: str):
    """(vectors per root index, reflection matrices per basis position)."""
    if side == ROOT:
        return rs.roots, rs._basis_reflections
    if side == COROOT:
        return rs.coroots, rs._basis_coreflections
    raise ValueError(f"side must be 'root' or 'coroot', got {side!r}")


def _tensor_index(l: int, i: int, j: int) -> int:
    return i * l + j


def _coinvariant_relations(rs: FiniteRootSystem, left: str, right: str) -> list[Vector]:
    l = rs.rank
    _, refl_left = _side_data(rs, left)
    _, refl_right = _side_data(rs, right)
    rels = []
    for k in range(l):
        a = refl_left[k]
        b = refl_right[k]
        for i in range(l):
            for j in range(l):
                # (v.e_i) (x) (v.e_j) - e_i (x) e_j, flattened
                row = [0] * (l * l)
                for p in range(l):
                    if a[p][i] == 0:
                        continue
                    for q in range(l):
                        if b[q][j]:
                            row[_tensor_index(l, p, q)] += a[p][i] * b[q][j]
                row[_tensor_index(l, i, j)] -= 1
                rels.append(tuple(row))
    return rels


def _tensor_of(rs: FiniteRootSystem, left: str, right: str, i: int, j: int) -> Vector:
    l = rs.rank
    vec_left, _ = _side_data(rs, left)
    vec_right, _ = _side_data(rs, right)
    x, y = vec_left[i], vec_right[j]
    row = [0] * (l * l)
    for p in range(l):
        if x[p] == 0:
            continue
        for q in range(l):
            if y[q]:
                row[_tensor_index(l, p, q)] += x[p] * y[q]
    return tuple(row)


def coinvariants(rs: FiniteRootSystem, left: str, right: str) -> FPAbelianGroup:
    """L (x)_V L' presented on the l*l basis tensors."""
    l = rs.rank
    return FPAbelianGroup(l * l, _coinvariant_relations(rs, left, right))


def _perp_relation_pairs(rs: FiniteRootSystem, left: str, right: str):
    """Root index pairs whose tensors are killed in the box quotient.

    Same-side quotients kill short perpendicular pairs (short on the
    side in question); the mixed quotient kills all perpendicular pairs.
    """
    n = len(rs.roots)
    if left == right:
        if left == ROOT:
            pool = [i for i in range(n) if rs.lengths[i] == SHORT]
        else:
            pool = [i for i in range(n) if rs.coroot_length_class(i) == SHORT]
    else:
        pool = list(range(n))
    for i in pool:
        for j in pool:
            if rs.perpendicular(i, j):
                yield i, j


def box_quotient(rs: FiniteRootSystem, left: str, right: str) -> FPAbelianGroup:
    """L [x] L': the coinvariants modulo perpendicular reflection pairs."""
    rels = _coinvariant_relations(rs, left, right)
    for i, j in _perp_relation_pairs(rs, left, right):
        rels.append(_tensor_of(rs, left, right, i, j))
    return FPAbelianGroup(rs.rank * rs.rank, rels)


class BoxForm:
    """The projection of L [x] L' onto its infinite cyclic quotient.

    Carries a Gram matrix over basis coordinates: value(x, y) is the
    image of x (x) y under the canonical generator.  The generator sign
    makes the diagonal value at the first long (or only) simple root
    positive.
    """

    def __init__(self, rs: FiniteRootSystem, left: str, right: str):
        fp = box_quotient(rs, left, right)
        if fp.free_rank != 1 or fp.torsion:
            raise RootSystemError(
                f"box quotient of {rs.rs_type} ({left},{right}) is {fp.descriptor()}, "
                "expected Z"
            )
        l = rs.rank
        gram = [[0] * l for _ in range(l)]
        for i in range(l):
            for j in range(l):
                e = [0] * (l * l)
                e[_tensor_index(l, i, j)] = 1
                gram[i][j] = fp.project(e)[0][0]
        anchor = None
        for b in rs.basis:
            if rs.lengths[b] == LONG:
                anchor = b
                break
        if anchor is None:
            anchor = rs.basis[0]
        vecs_l, _ = _side_data(rs, left)
        vecs_r, _ = _side_data(rs, right)
        val = dot(vecs_l[anchor], mat_vec(freeze(gram), vecs_r[anchor]))
        if val == 0:
            raise RootSystemError("degenerate box form anchor")
        if val < 0:
            gram = [[-x for x in row] for row in gram]
        self.rs = rs
        self.left = left
        self.right = right
        self.gram: Matrix = freeze(gram)
        self.fp = fp

    def value(self, x: Vector, y: Vector) -> int:
        return dot(x, mat_vec(self.gram, y))

    def value_roots(self, i: int, j: int) -> int:
        vecs_l, _ = _side_data(self.rs, self.left)
        vecs_r, _ = _side_data(self.rs, self.right)
        return self.value(vecs_l[i], vecs_r[j])


@lru_cache(maxsize=None)
def _box_form_cached(family: str, rank: int, left: str, right: str) -> BoxForm:
    from extweyl.root_core import build

    return BoxForm(build(family, rank), left, right)


def boxtimes_form(rs: FiniteRootSystem) -> BoxForm:
    """The coroot-side box form, the scalar form behind the cocycle."""
    return _box_form_cached(rs.rs_type.family, rs.rs_type.rank, COROOT, COROOT)


def root_box_form(rs: FiniteRootSystem) -> BoxForm:
    return _box_form_cached(rs.rs_type.family, rs.rs_type.rank, ROOT, ROOT)


def mixed_box_form(rs: FiniteRootSystem) -> BoxForm:
    return _box_form_cached(rs.rs_type.family, rs.rs_type.rank, ROOT, COROOT)


def lattice_embedding_matrix(rs: FiniteRootSystem) -> Matrix:
    """Matrix of the embedding of the root lattice into the coroot lattice.

    A short root goes to its coroot and a long one to k_delta times its
    coroot; this is the unique equivariant scaling (k_delta times the
    identity once both lattices sit in the ambient space), and its image
    is the span of the short-root coroots, squeezed between k_delta
    times the coroot lattice and the coroot lattice itself.  Columns are
    coroot coordinates of the images of the simple roots.  Only defined
    for reduced non-simply-laced types.
    """
    if rs.rs_type.is_single_length() or not rs.rs_type.is_reduced():
        raise RootSystemError(
            f"lattice embedding needs a reduced non-simply-laced type, got {rs.rs_type}"
        )
    k = k_delta(rs.rs_type)
    cols = []
    for b in rs.basis:
        scale = 1 if rs.lengths[b] == SHORT else k
        cols.append(tuple(scale * x for x in rs.coroots[b]))
    return transpose(freeze(cols))


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(x, y) with x*a + y*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _unit_combination(gram: Matrix) -> dict[tuple[int, int], int]:
    """Coefficients c with sum c[i,j]*gram[i][j] = 1 (gram entries have gcd 1)."""
    combo: dict[tuple[int, int], int] = {}
    g = 0
    for i, row in enumerate(gram):
        for j, v in enumerate(row):
            if v == 0:
                continue
            if g == 0:
                g, combo = v, {(i, j): 1}
            elif v % g != 0:
                x, y = _bezout(g, v)
                combo = {k: x * c for k, c in combo.items()}
                combo[(i, j)] = combo.get((i, j), 0) + y
                g = gcd(g, v)
            if g == 1:
                break
        if g == 1:
            break
    if g == -1:
        combo = {k: -c for k, c in combo.items()}
        g = 1
    if g != 1:
        raise RootSystemError("projection does not generate Z")
    return combo


def inclusion_indices(rs: FiniteRootSystem) -> tuple[int, int]:
    """Indices of L [x] L -> L [x] Lv -> Lv [x] Lv under the lattice embedding.

    Each map is multiplication by an integer once the quotients are
    identified with Z; both integers must be nonzero (injectivity), and
    with the canonical generator signs they come out positive.
    """
    phi = lattice_embedding_matrix(rs)
    f_ll = root_box_form(rs)
    f_lc = mixed_box_form(rs)
    f_cc = boxtimes_form(rs)
    l = rs.rank

    def basis_vec(i: int) -> Vector:
        return tuple(int(t == i) for t in range(l))

    combo = _unit_combination(f_ll.gram)
    index_phi = sum(
        c * f_lc.value(basis_vec(i), mat_vec(phi, basis_vec(j)))
        for (i, j), c in combo.items()
    )
    combo2 = _unit_combination(f_lc.gram)
    index_psi = sum(
        c * f_cc.value(mat_vec(phi, basis_vec(i)), basis_vec(j))
        for (i, j), c in combo2.items()
    )
    return index_phi, index_psi


def _dual_family(family: str, rank: int) -> str:
    if family == "B" and rank >= 3:
        return "C"
    if family == "C":
        return "B"
    return family


def expected_tensor_descriptor(rs_type, left: str, right: str) -> str:
    """Expected classification of the coinvariant quotients."""
    fam, l = rs_type.family, rs_type.rank
    if left != right:
        return "Z x Z2" if (fam == "BC" and l >= 2) else "Z"
    eff = fam if left == ROOT else _dual_family(fam, l)
    return "Z x Z2" if (eff in ("B", "BC") and l >= 2) else "Z"


# smith_normal_form and FPAbelianGroup are part of this module's
# surface; they live in intlinalg and are re-exported by the import above.
IntMatrix = Matrix
