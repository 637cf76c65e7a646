"""Exact linear algebra over the integers.

Vectors are tuples of ints, matrices are tuples of row tuples.  All
arithmetic uses Python's arbitrary-precision integers; intermediate
entries in eliminations may grow and that is fine at the scales this
package works with (matrices of a few hundred rows).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((0,) * ncols for _ in range(nrows))


def dims(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]]) -> Vector:
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Sequence[int]) -> Vector:
    return tuple(-x for x in u)


def vec_scale(c: int, u: Sequence[int]) -> Vector:
    return tuple(c * x for x in u)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def outer(u: Sequence[int], v: Sequence[int]) -> Matrix:
    return tuple(tuple(x * y for y in v) for x in u)


def is_zero_vec(v: Sequence[int]) -> bool:
    return all(x == 0 for x in v)


def is_zero_mat(m: Sequence[Sequence[int]]) -> bool:
    return all(is_zero_vec(r) for r in m)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inv(m: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of an integer matrix that is invertible over the integers.

    Raises ValueError if the matrix is singular or the inverse is not
    integral (determinant not a unit).
    """
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = a[i][j]
            if x.denominator != 1:
                raise ValueError("inverse is not integral")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms: returns (d, p, q), p*m*q = d.

    d is diagonal with nonnegative entries d1 | d2 | ..., and p, q are
    unimodular.  Works for any rectangular integer matrix, including
    empty ones.
    """
    nr, nc = dims(m)
    a = [list(row) for row in m]
    p = [list(row) for row in identity(nr)]
    q = [list(row) for row in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]

    t = 0
    while True:
        # find the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)

        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                f = a[i][t] // a[t][t]
                add_row(t, i, -f)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                f = a[t][j] // a[t][t]
                add_col(t, j, -f)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry for the divisor chain
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
        if t >= min(nr, nc):
            break

    return freeze(a), freeze(p), freeze(q)


def kernel_basis(m: Sequence[Sequence[int]]) -> list[Vector]:
    """Integer basis of {x : m @ x = 0} (column vectors, returned as tuples)."""
    nr, nc = dims(m)
    if nc == 0:
        return []
    d, _, q = smith_normal_form(m)
    rank = sum(1 for i in range(min(nr, nc)) if d[i][i] != 0)
    qt = transpose(q)
    return [qt[j] for j in range(rank, nc)]


def solve_integer(m: Sequence[Sequence[int]], w: Sequence[int]) -> Vector | None:
    """One integer solution x of m @ x = w, or None if there is none."""
    nr, nc = dims(m)
    d, p, q = smith_normal_form(m)
    pw = mat_vec(p, w)
    y = [0] * nc
    for i in range(nr):
        di = d[i][i] if i < min(nr, nc) else 0
        if di == 0:
            if pw[i] != 0:
                return None
        else:
            if pw[i] % di != 0:
                return None
            y[i] = pw[i] // di
    return mat_vec(q, y)


# ---------------------------------------------------------------------------
# Row Hermite form: lattices as row spans
# ---------------------------------------------------------------------------


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[Vector]:
    """Canonical echelon basis of the integer row span of `rows`.

    Rows come back with strictly increasing pivot columns, positive
    pivots, and entries above each pivot reduced into [0, pivot).  Two
    generating sets span the same lattice iff they produce identical
    output.  Rows are folded in one at a time, so large redundant
    generating sets stay cheap.
    """
    pivots: dict[int, list[int]] = {}
    ncols = len(rows[0]) if rows else 0
    for row in rows:
        r = list(row)
        while True:
            pcol = next((k for k, x in enumerate(r) if x != 0), None)
            if pcol is None:
                break
            if pcol not in pivots:
                if r[pcol] < 0:
                    r = [-x for x in r]
                pivots[pcol] = r
                break
            b = pivots[pcol]
            if abs(r[pcol]) < abs(b[pcol]):
                pivots[pcol], r = ([-x for x in r] if r[pcol] < 0 else r), b
                b = pivots[pcol]
            f = r[pcol] // b[pcol]
            if f:
                r = [x - f * y for x, y in zip(r, b)]
            if r[pcol] != 0:
                # remainder nonzero only when signs made // round down;
                # one more pass fixes it
                continue
    basis = [pivots[c] for c in sorted(pivots)]
    # normalize entries above each pivot; increasing pivot order keeps
    # already-normalized earlier columns untouched
    for i in range(len(basis)):
        prow = basis[i]
        pcol = next(k for k in range(ncols) if prow[k] != 0)
        for j in range(i):
            f = basis[j][pcol] // prow[pcol]
            if f:
                for k in range(ncols):
                    basis[j][k] -= f * prow[k]
    return [tuple(r) for r in basis]


def lattice_reduce(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    """Canonical representative of v modulo the lattice spanned by hnf rows."""
    out = list(v)
    for row in hnf:
        pcol = next(k for k in range(len(row)) if row[k] != 0)
        f = out[pcol] // row[pcol]
        if f:
            for k in range(len(out)):
                out[k] -= f * row[k]
    return tuple(out)


def lattice_contains(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return is_zero_vec(lattice_reduce(hnf, v))


def lattice_subset(a_hnf: Sequence[Sequence[int]], b_hnf: Sequence[Sequence[int]]) -> bool:
    """Whether the lattice spanned by a_hnf lies inside the one spanned by b_hnf."""
    return all(lattice_contains(b_hnf, row) for row in a_hnf)


def lattice_intersection(
    a_rows: Sequence[Sequence[int]], b_rows: Sequence[Sequence[int]]
) -> list[Vector]:
    """Basis (hermite rows) of the intersection of two row-span lattices."""
    a = [tuple(r) for r in a_rows]
    b = [tuple(r) for r in b_rows]
    if not a or not b:
        return []
    stacked = freeze(list(a) + [vec_neg(r) for r in b])
    # left kernel of `stacked`: rows (u | v) with u @ a == v @ b
    lk = kernel_basis(transpose(stacked))
    gens = []
    for w in lk:
        u = w[: len(a)]
        gens.append(vec_mat(u, freeze(a)))
    return hermite_rows(gens)


def quotient_reps(hnf: Sequence[Sequence[int]]) -> list[Vector]:
    """All canonical representatives of Z^n modulo a full-rank lattice.

    `hnf` must be a full-rank hermite_rows output (n rows, n columns).
    """
    n = len(hnf)
    assert n == 0 or len(hnf[0]) == n, "full-rank square lattice required"
    diag = []
    for row in hnf:
        pcol = next(k for k in range(n) if row[k] != 0)
        diag.append((pcol, row[pcol]))
    diag.sort()
    reps = set()
    stack = [()]
    for _, d in diag:
        stack = [t + (r,) for t in stack for r in range(d)]
    for t in stack:
        v = [0] * n
        for (pcol, _), x in zip(diag, t):
            v[pcol] = x
        reps.add(lattice_reduce(hnf, v))
    return sorted(reps)


class FPAbelianGroup:
    """Finitely presented abelian group Z^n / (row span of relations).

    The canonical form (free rank plus invariant factors d1 | d2 | ...)
    comes from the Smith normal form of the relation matrix; the
    projection map sends a generator-coordinate vector to its image in
    Z^rank x prod Z_{di}.
    """

    def __init__(self, n_generators: int, relations: Sequence[Sequence[int]]):
        self.n_generators = n_generators
        # reduce the (possibly huge, redundant) relation list to a
        # lattice basis first; the Smith reduction then works on a
        # matrix no larger than n_generators squared
        rel = hermite_rows([tuple(r) for r in relations])
        if not rel:
            rel_matrix: Matrix = zeros(0, n_generators)
        else:
            rel_matrix = freeze(rel)
        self.relations = rel_matrix
        # quotient Z^n / im(rel^T): run SNF on the transpose so the
        # column transform acts on generator coordinates
        n = n_generators
        rt = transpose(rel_matrix) if rel_matrix else zeros(n, 0)
        if dims(rt) == (n, 0):
            rt = zeros(n, 1)
        d, p, _ = smith_normal_form(rt)
        diag = [d[i][i] for i in range(min(dims(d)))]
        self._p = p
        self._diag = diag
        self.torsion = tuple(x for x in diag if x > 1)
        self.free_rank = n - sum(1 for x in diag if x != 0)
        self.invariant_factors = list(self.torsion) + [0] * self.free_rank

    def project(self, coords: Sequence[int]) -> tuple[Vector, Vector]:
        """Image of a generator-coordinate vector: (free part, torsion part)."""
        y = mat_vec(self._p, coords)
        free = []
        tors = []
        for i, x in enumerate(y):
            di = self._diag[i] if i < len(self._diag) else 0
            if di == 0:
                free.append(x)
            elif di > 1:
                tors.append(x % di)
        return tuple(free), tuple(tors)

    def is_zero(self, coords: Sequence[int]) -> bool:
        free, tors = self.project(coords)
        return is_zero_vec(free) and is_zero_vec(tors)

    def descriptor(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"

    def __repr__(self) -> str:  # pragma: no cover
        return f"FPAbelianGroup({self.descriptor()})"
