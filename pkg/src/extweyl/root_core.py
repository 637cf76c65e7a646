"""Irreducible finite root systems over the integers.

Roots are stored as coordinate vectors over the simple-root basis and
coroots as coordinate vectors over a fixed basis of the coroot lattice,
so every number in sight is an integer (the usual ambient realizations
of F4 and the E series need half-integers, the basis coordinates never
do).  For the non-reduced BC types the coroot lattice is strictly larger
than the span of the simple coroots; its basis replaces the short simple
coroot by the coroot of the divisible root, which keeps all coordinates
integral.

Conventions:
  * cartan[i][j] = <alpha_i^vee, alpha_j> (rows indexed by the coroot).
  * reflect(alpha, lam) = lam - <alpha^vee, lam> alpha.
  * simply laced systems have a single length class, called "short".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from extweyl.intlinalg import (
    Matrix,
    Vector,
    dot,
    freeze,
    identity,
    mat_inv,
    mat_mul,
    mat_vec,
    hermite_rows,
    lattice_contains,
    transpose,
    vec_sub,
)

SHORT = "short"
LONG = "long"
EXTRALONG = "extralong"

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")

_RANK_OK = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 3,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
    "BC": lambda l: l >= 1,
}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise RootSystemError(
                f"rank {self.rank} is not admissible for family {self.family}"
            )

    def is_simply_laced(self) -> bool:
        """A(rank >= 2), D and E only; A1 is handled separately."""
        f, l = self.family, self.rank
        return (f == "A" and l >= 2) or f == "D" or f == "E"

    def is_single_length(self) -> bool:
        """One root length: the simply laced types together with A1."""
        return self.is_simply_laced() or (self.family == "A" and self.rank == 1)

    def is_reduced(self) -> bool:
        return self.family != "BC"

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def k_delta(rs_type: RootSystemType) -> int:
    """Lacing number: 2 for B, C, F4 and BC, 3 for G2."""
    if rs_type.family in ("B", "C", "F", "BC"):
        return 2
    if rs_type.family == "G":
        return 3
    raise RootSystemError(f"k_delta is undefined for {rs_type} (single root length)")


# Cartan matrices cartan[i][j] = <alpha_i^vee, alpha_j>, Bourbaki numbering,
# together with the symmetrizers d (integer, (alpha_i|alpha_i) = 2 d_i up to
# one global scale).


def _chain(l: int) -> list[list[int]]:
    a = [[0] * l for _ in range(l)]
    for i in range(l):
        a[i][i] = 2
        if i + 1 < l:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    return a


def _cartan_and_symmetrizer(family: str, rank: int) -> tuple[Matrix, Vector]:
    l = rank
    if family == "A":
        return freeze(_chain(l)), (1,) * l
    if family in ("B", "BC"):
        if l == 1:
            return freeze([[2]]), (1,)
        a = _chain(l)
        a[l - 1][l - 2] = -2  # short simple root pairs doubly against the chain
        return freeze(a), (2,) * (l - 1) + (1,)
    if family == "C":
        a = _chain(l)
        a[l - 2][l - 1] = -2
        return freeze(a), (1,) * (l - 1) + (2,)
    if family == "D":
        a = _chain(l - 1)
        for row in a:
            row.append(0)
        a.append([0] * l)
        a[l - 1][l - 1] = 2
        a[l - 1][l - 3] = -1
        a[l - 3][l - 1] = -1
        return freeze(a), (1,) * l
    if family == "E":
        # nodes 1-3-4-5-6(-7)(-8) with node 2 hanging off node 4
        a = [[0] * l for _ in range(l)]
        for i in range(l):
            a[i][i] = 2
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if l >= 7:
            edges.append((6, 7))
        if l == 8:
            edges.append((7, 8))
        for i, j in edges:
            a[i - 1][j - 1] = -1
            a[j - 1][i - 1] = -1
        return freeze(a), (1,) * l
    if family == "F":
        a = [
            [2, -1, 0, 0],
            [-1, 2, -1, 0],
            [0, -2, 2, -1],
            [0, 0, -1, 2],
        ]
        return freeze(a), (2, 2, 1, 1)
    if family == "G":
        # alpha_1 short, alpha_2 long
        return freeze([[2, -3], [-1, 2]]), (1, 3)
    raise RootSystemError(family)


_ROOT_COUNT = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
    "F": lambda l: 48,
    "G": lambda l: 12,
    "BC": lambda l: 2 * l * l + 2 * l,
}


class FiniteRootSystem:
    """A finite irreducible root system with explicit coroots.

    Attributes:
      rs_type: the (family, rank) label.
      roots: tuple of root vectors in simple-root coordinates.
      coroots: parallel tuple of coroot vectors over the coroot basis.
      basis: indices of the simple roots inside `roots`.
      lengths: parallel tuple of length classes.
      cartan: <alpha_i^vee, alpha_j> over the simple roots.
      pairing_matrix: <m_i, alpha_j> for the coroot-lattice basis m_i;
        equals `cartan` except for BC, where the short simple coroot is
        halved to reach the full coroot lattice.
    """

    def __init__(self, rs_type: RootSystemType):
        self.rs_type = rs_type
        l = rs_type.rank
        cartan, sym = _cartan_and_symmetrizer(rs_type.family, l)
        self.cartan = cartan
        self._symmetrizer = sym
        # Gram matrix of the invariant form on root coordinates (one
        # global integer scale, normalized later by invariant_form()).
        self._gram = freeze(
            [[sym[i] * cartan[i][j] for j in range(l)] for i in range(l)]
        )

        if rs_type.family == "BC":
            pairing = [list(row) for row in cartan]
            pairing[l - 1] = [x // 2 for x in cartan[l - 1]]
            self.pairing_matrix = freeze(pairing)
            basis_coroot_coords = [
                tuple(2 if (i == j == l - 1) else int(i == j) for j in range(l))
                for i in range(l)
            ]
        else:
            self.pairing_matrix = cartan
            basis_coroot_coords = [tuple(int(i == j) for j in range(l)) for i in range(l)]
        self._basis_coroot_coords = tuple(basis_coroot_coords)

        refl, corefl = [], []
        for k in range(l):
            qk = basis_coroot_coords[k]
            row = tuple(
                sum(qk[i] * self.pairing_matrix[i][j] for i in range(l))
                for j in range(l)
            )
            refl.append(
                freeze(
                    [
                        [int(i == j) - (1 if i == k else 0) * row[j] for j in range(l)]
                        for i in range(l)
                    ]
                )
            )
            col = tuple(self.pairing_matrix[i][k] for i in range(l))
            corefl.append(
                freeze(
                    [
                        [int(i == j) - qk[i] * col[j] for j in range(l)]
                        for i in range(l)
                    ]
                )
            )
        self._basis_reflections = tuple(refl)
        self._basis_coreflections = tuple(corefl)

        seeds = [
            (tuple(int(i == k) for i in range(l)), basis_coroot_coords[k])
            for k in range(l)
        ]
        if rs_type.family == "BC":
            # the divisible root 2*alpha_l, whose coroot is half of the
            # short simple coroot
            double = tuple(2 * int(i == l - 1) for i in range(l))
            half = tuple(int(i == l - 1) for i in range(l))
            seeds.append((double, half))
        seen = {}
        queue = list(seeds)
        while queue:
            root, coroot = queue.pop()
            if root in seen:
                continue
            seen[root] = coroot
            for k in range(l):
                nr = mat_vec(refl[k], root)
                if nr not in seen:
                    queue.append((nr, mat_vec(corefl[k], coroot)))
        pairs = sorted(seen.items())
        self.roots: tuple[Vector, ...] = tuple(r for r, _ in pairs)
        self.coroots: tuple[Vector, ...] = tuple(c for _, c in pairs)
        self._index = {r: i for i, r in enumerate(self.roots)}
        expected = _ROOT_COUNT[rs_type.family](l)
        if len(self.roots) != expected:
            raise RootSystemError(
                f"{rs_type}: generated {len(self.roots)} roots, expected {expected}"
            )

        self.basis = tuple(
            self._index[tuple(int(i == k) for i in range(l))] for k in range(l)
        )
        norms = [self._norm(r) for r in self.roots]
        levels = sorted(set(norms))
        if rs_type.family == "BC":
            # BC1 has no long class, only the divisible roots
            assert levels[-1] == 4 * levels[0]
            label = {levels[0]: SHORT, levels[-1]: EXTRALONG}
            if len(levels) == 3:
                label[levels[1]] = LONG
        elif len(levels) == 1:
            label = {levels[0]: SHORT}
        else:
            assert len(levels) == 2
            label = {levels[0]: SHORT, levels[1]: LONG}
        self.lengths: tuple[str, ...] = tuple(label[n] for n in norms)

        adj = [[0] * l for _ in range(l)]
        for i in range(l):
            for j in range(l):
                if i != j:
                    adj[i][j] = cartan[i][j] * cartan[j][i]
        self.dynkin_adjacency = freeze(adj)

    # -- basic queries ----------------------------------------------------

    @property
    def rank(self) -> int:
        return self.rs_type.rank

    def index_of(self, root: Vector) -> int:
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise RootSystemError(f"{tuple(root)} is not a root of {self.rs_type}")

    def is_root(self, v: Vector) -> bool:
        return tuple(v) in self._index

    def length_class(self, i: int) -> str:
        return self.lengths[i]

    def coroot_length_class(self, i: int) -> str:
        """Length class of coroots[i] inside the coroot system."""
        if self.rs_type.is_single_length():
            return SHORT
        cls = self.lengths[i]
        if self.rs_type.family == "BC":
            return {SHORT: EXTRALONG, LONG: LONG, EXTRALONG: SHORT}[cls]
        return {SHORT: LONG, LONG: SHORT}[cls]

    def reduced_root_indices(self) -> tuple[int, ...]:
        """Indices of indivisible roots (drops 2*alpha for BC)."""
        half = set()
        for i, r in enumerate(self.roots):
            if all(x % 2 == 0 for x in r):
                h = tuple(x // 2 for x in r)
                if h in self._index:
                    half.add(i)
        return tuple(i for i in range(len(self.roots)) if i not in half)

    def divisible_root_indices(self) -> tuple[int, ...]:
        red = set(self.reduced_root_indices())
        return tuple(i for i in range(len(self.roots)) if i not in red)

    def _norm(self, x: Vector) -> int:
        return dot(x, mat_vec(self._gram, x))

    # -- pairing and reflections ------------------------------------------

    def pairing(self, coroot_of: int, at: Vector) -> int:
        """<alpha^vee, lam> for alpha = roots[coroot_of] and lam in the root lattice."""
        y = self.coroots[coroot_of]
        return dot(mat_vec(transpose(self.pairing_matrix), y), at)

    def copairing(self, mu: Vector, root_of: int) -> int:
        """<mu, alpha> for mu in coroot coordinates and alpha = roots[root_of]."""
        return dot(mat_vec(self.pairing_matrix, self.roots[root_of]), mu)

    def reflect(self, alpha: int, lam: Vector) -> Vector:
        c = self.pairing(alpha, lam)
        return vec_sub(lam, tuple(c * x for x in self.roots[alpha]))

    def reflect_coroot(self, alpha: int, mu: Vector) -> Vector:
        c = self.copairing(mu, alpha)
        return vec_sub(mu, tuple(c * x for x in self.coroots[alpha]))

    def reflect_root_index(self, alpha: int, beta: int) -> int:
        return self.index_of(self.reflect(alpha, self.roots[beta]))

    def reflection_matrix(self, i: int) -> Matrix:
        x = self.roots[i]
        row = mat_vec(transpose(self.pairing_matrix), self.coroots[i])
        n = self.rank
        return freeze(
            [[int(r == c) - x[r] * row[c] for c in range(n)] for r in range(n)]
        )

    def coreflection_matrix(self, i: int) -> Matrix:
        y = self.coroots[i]
        col = mat_vec(self.pairing_matrix, self.roots[i])
        n = self.rank
        return freeze(
            [[int(r == c) - y[r] * col[c] for c in range(n)] for r in range(n)]
        )

    def weyl_generator(self, i: int) -> "WeylElement":
        cache = getattr(self, "_gen_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_gen_cache", cache)
        w = cache.get(i)
        if w is None:
            w = WeylElement(self.reflection_matrix(i), self.coreflection_matrix(i))
            cache[i] = w
        return w

    def perpendicular(self, i: int, j: int) -> bool:
        """Distinct commuting reflections: r_i != r_j and <alpha_i^vee, alpha_j> = 0."""
        if self.same_reflection(i, j):
            return False
        return self.pairing(i, self.roots[j]) == 0

    def same_reflection(self, i: int, j: int) -> bool:
        ri, rj = self.roots[i], self.roots[j]
        for mult in ((1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)):
            if tuple(mult[0] * x for x in ri) == tuple(mult[1] * x for x in rj):
                return True
        return False

    def __repr__(self) -> str:  # pragma: no cover
        return f"FiniteRootSystem({self.rs_type}, {len(self.roots)} roots)"


class WeylElement:
    """An element of the Weyl group, as matrices on both lattices.

    `matrix` acts on root coordinates, `comatrix` on coroot coordinates;
    the two are kept in lockstep so the pairing stays invariant.
    """

    __slots__ = ("matrix", "comatrix")

    def __init__(self, matrix: Matrix, comatrix: Matrix):
        self.matrix = matrix
        self.comatrix = comatrix

    @staticmethod
    def identity(rank: int) -> "WeylElement":
        return WeylElement(identity(rank), identity(rank))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            mat_mul(self.matrix, other.matrix), mat_mul(self.comatrix, other.comatrix)
        )

    def inv(self) -> "WeylElement":
        return WeylElement(mat_inv(self.matrix), mat_inv(self.comatrix))

    def apply(self, x: Vector) -> Vector:
        return mat_vec(self.matrix, x)

    def coapply(self, y: Vector) -> Vector:
        return mat_vec(self.comatrix, y)

    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))

    def det(self) -> int:
        from extweyl.intlinalg import determinant

        return determinant(self.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:  # pragma: no cover
        return f"WeylElement({self.matrix})"


@lru_cache(maxsize=None)
def _build_cached(family: str, rank: int) -> FiniteRootSystem:
    return FiniteRootSystem(RootSystemType(family, rank))


def build(rs_type: RootSystemType | str, rank: int | None = None) -> FiniteRootSystem:
    """Construct the root system; accepts build('B', 2) or build(RootSystemType('B', 2))."""
    if isinstance(rs_type, str):
        if rank is None:
            raise RootSystemError("rank required when passing the family as a string")
        rs_type = RootSystemType(rs_type, rank)
    return _build_cached(rs_type.family, rs_type.rank)


def pairing(rs: FiniteRootSystem, coroot_of: int, at: Vector) -> int:
    return rs.pairing(coroot_of, at)


def reflect(rs: FiniteRootSystem, alpha: int, lam: Vector) -> Vector:
    return rs.reflect(alpha, lam)


def reflect_coroot(rs: FiniteRootSystem, alpha: int, mu: Vector) -> Vector:
    return rs.reflect_coroot(alpha, mu)


def coxeter_evaluate(rs: FiniteRootSystem, word: list[int]) -> WeylElement:
    """Product of the reflections named by root indices; [] gives the identity."""
    out = WeylElement.identity(rs.rank)
    for i in word:
        out = out * rs.weyl_generator(i)
    return out


def l_eff_quotient(rs: FiniteRootSystem):
    """The quotient of the root lattice by the span of all v.l - l.

    Returns (fp, images): fp is the FPAbelianGroup of the quotient and
    images maps each root index to its torsion coordinates there.
    """
    from extweyl.intlinalg import FPAbelianGroup

    l = rs.rank
    rels = []
    for k in range(l):
        m = rs._basis_reflections[k]
        for j in range(l):
            col = tuple(m[i][j] - int(i == j) for i in range(l))
            rels.append(col)
    fp = FPAbelianGroup(l, rels)
    images = {i: fp.project(rs.roots[i])[1] for i in range(len(rs.roots))}
    return fp, images


def l_eff_lattice(rs: FiniteRootSystem) -> list[Vector]:
    """Hermite basis of the sublattice spanned by v.l - l in root coordinates."""
    l = rs.rank
    gens = []
    for k in range(l):
        m = rs._basis_reflections[k]
        for j in range(l):
            gens.append(tuple(m[i][j] - int(i == j) for i in range(l)))
    return hermite_rows(gens)


def coroot_l_eff_lattice(rs: FiniteRootSystem) -> list[Vector]:
    """Same as l_eff_lattice but on the coroot lattice."""
    l = rs.rank
    gens = []
    for k in range(l):
        m = rs._basis_coreflections[k]
        for j in range(l):
            gens.append(tuple(m[i][j] - int(i == j) for i in range(l)))
    return hermite_rows(gens)


def invariant_form(rs: FiniteRootSystem) -> Matrix:
    """The invariant symmetric form on root coordinates, value gcd 1.

    Unique up to sign once normalized; the positive-definite choice is
    taken, so (alpha|alpha) > 0.
    """
    g = 0
    for row in rs._gram:
        for x in row:
            g = gcd(g, x)
    return freeze([[x // g for x in row] for row in rs._gram])


def doubled_lattice_inside_l_eff(rs: FiniteRootSystem) -> bool:
    """Check 2L ⊆ L_eff, needed for the fixed-point lemma."""
    leff = l_eff_lattice(rs)
    l = rs.rank
    return all(
        lattice_contains(leff, tuple(2 * int(i == j) for i in range(l)))
        for j in range(l)
    )


def pairing_value_sets(rs: FiniteRootSystem) -> dict[tuple[str, str], frozenset[int]]:
    """Value sets <coroot-class x, root-class y> over all root pairs.

    The first index refers to the length class of the coroot inside the
    coroot system (for non-simply-laced types the coroot of a short root
    is long, and vice versa).
    """
    out: dict[tuple[str, str], set[int]] = {}
    n = len(rs.roots)
    for b in range(n):
        cx = rs.coroot_length_class(b)
        for g in range(n):
            key = (cx, rs.lengths[g])
            out.setdefault(key, set()).add(rs.pairing(b, rs.roots[g]))
    return {k: frozenset(v) for k, v in out.items()}
