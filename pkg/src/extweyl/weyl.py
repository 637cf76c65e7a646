"""The Weyl group of an extended root system as a cocycle extension.

Elements are triples (z, k, v): v in the finite Weyl group, k in the
translation part, and z a central coordinate in the second exterior
power of the extension group, tensored against the infinite cyclic box
quotient of the coroot lattice.  The multiplication twists the central
part by the alternating bihomomorphism

    c(g (x) mu, h (x) nu) = (g /\\ h) * b(mu, nu),

b being the box form.  Because b kills perpendicular reflection pairs
and g /\\ g = 0, the generator images square to the identity and satisfy
the conjugation axiom, so this really is a reflection group over the
labels.

Orbit classification, the abelianization layers, and the word-problem
decider live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass

from extweyl.ext_root import ExtRootError, ExtRootSystem, check_twist
from extweyl.intlinalg import (
    FPAbelianGroup,
    Matrix,
    Vector,
    freeze,
    hermite_rows,
    is_zero_mat,
    lattice_reduce,
    mat_mul,
    solve_integer,
    transpose,
    vec_scale,
    zeros,
)
from extweyl.lattice_algebra import boxtimes_form
from extweyl.refl_groups import (
    AElement,
    ReflectionLabel,
    label_k_part,
)
from extweyl.root_core import SHORT, WeylElement

ZPart = Matrix  # antisymmetric n x n integer matrix


def cocycle(ers: ExtRootSystem, k1: Matrix, k2: Matrix) -> ZPart:
    """c(k1, k2) as an antisymmetric matrix over the group basis.

    Expanding k = sum_a e_a (x) mu_a, the value is the antisymmetric
    part of the matrix of box-form values between the rows.
    """
    n = ers.n
    if len(k1) != n or len(k2) != n:
        raise ExtRootError("K-matrix rows must match the group rank")
    gram = boxtimes_form(ers.delta).gram
    x = mat_mul(mat_mul(k1, gram), transpose(k2))
    return freeze(
        [[x[a][b] - x[b][a] for b in range(n)] for a in range(n)]
    )


def _zero_z(n: int) -> ZPart:
    return zeros(n, n)


class WElement:
    """An element (z, k, v) of the cocycle-extended Weyl group."""

    __slots__ = ("z", "k", "v", "_ers")

    def __init__(self, ers: ExtRootSystem, z: ZPart, k: Matrix, v: WeylElement):
        self._ers = ers
        self.z = z
        self.k = k
        self.v = v

    @staticmethod
    def identity(ers: ExtRootSystem) -> "WElement":
        return WElement(
            ers,
            _zero_z(ers.n),
            zeros(ers.n, ers.delta.rank),
            WeylElement.identity(ers.delta.rank),
        )

    def __mul__(self, other: "WElement") -> "WElement":
        moved = mat_mul(other.k, transpose(self.v.comatrix))
        zc = cocycle(self._ers, self.k, moved)
        z = tuple(
            tuple(a + b + c for a, b, c in zip(r1, r2, r3))
            for r1, r2, r3 in zip(self.z, other.z, zc)
        )
        k = tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.k, moved)
        )
        return WElement(self._ers, z, k, self.v * other.v)

    def inv(self) -> "WElement":
        vi = self.v.inv()
        k = tuple(
            tuple(-x for x in row) for row in mat_mul(self.k, transpose(vi.comatrix))
        )
        z = tuple(tuple(-x for x in row) for row in self.z)
        return WElement(self._ers, z, k, vi)

    def is_identity(self) -> bool:
        return is_zero_mat(self.z) and is_zero_mat(self.k) and self.v.is_identity()

    def a_part(self) -> AElement:
        return AElement(self.k, self.v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WElement)
            and self.z == other.z
            and self.k == other.k
            and self.v == other.v
        )

    def __hash__(self) -> int:
        return hash((self.z, self.k, self.v))

    def __repr__(self) -> str:  # pragma: no cover
        return f"WElement(z={self.z}, k={self.k}, v={self.v.matrix})"


def w_generator(ers: ExtRootSystem, t: ReflectionLabel) -> WElement:
    return WElement(
        ers, _zero_z(ers.n), label_k_part(ers, t), ers.delta.weyl_generator(t.root)
    )


def w_mul(a: WElement, b: WElement) -> WElement:
    return a * b


def w_inv(a: WElement) -> WElement:
    return a.inv()


def evaluate_word_in_w(ers: ExtRootSystem, word) -> WElement:
    out = WElement.identity(ers)
    for t in word:
        out = out * w_generator(ers, t)
    return out


# ---------------------------------------------------------------------------
# Orbits of extended roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClass:
    length_class: str
    coset: Vector


def orbit_row_lattice(ers: ExtRootSystem, cls: str) -> list[Vector]:
    """The subgroup H with orbits (h + H) inside the given length class.

    The closed-form table applies to reduced tame systems whose slices
    equal their spans; brute force is the arbiter beyond that.
    """
    fam = ers.delta.rs_type.family
    l = ers.delta.rank
    n = ers.n
    grp = ers.group
    full = [grp.basis_vector(i) for i in range(n)]
    two_g = [vec_scale(2, v) for v in full]
    two_g1_plus_g2 = [vec_scale(2, grp.basis_vector(i)) for i in grp.g1] + [
        grp.basis_vector(i) for i in grp.g2
    ]
    if fam == "A" and l == 1:
        return hermite_rows(two_g)
    if fam == "B" and l == 2:
        return hermite_rows(two_g1_plus_g2 if cls == SHORT else two_g)
    if fam == "B":
        return hermite_rows(two_g1_plus_g2)
    if fam == "C":
        return hermite_rows(full if cls == SHORT else two_g)
    return hermite_rows(full)


def _orbit_row_cached(ers: ExtRootSystem, cls: str):
    cache = getattr(ers, "_orbit_rows", None)
    if cache is None:
        cache = {}
        ers._orbit_rows = cache
    row = cache.get(cls)
    if row is None:
        row = orbit_row_lattice(ers, cls)
        cache[cls] = row
    return row


def orbit_of(ers: ExtRootSystem, g, root_idx: int) -> OrbitClass:
    """The orbit class of an extended root (g, beta) under the full group.

    Two extended roots lie in one orbit iff they share a length class
    and a coset modulo the row lattice of that class.
    """
    if not ers.delta.rs_type.is_reduced():
        raise ExtRootError("orbit classification needs a reduced type; trim first")
    g = tuple(int(x) for x in g)
    if not ers.membership(g, root_idx):
        raise ExtRootError(f"({g}, root {root_idx}) is not in the extended system")
    cls = ers.delta.lengths[root_idx]
    return OrbitClass(cls, lattice_reduce(_orbit_row_cached(ers, cls), g))


_BRUTE_MODULUS = {"A": 2, "B": 2, "C": 2, "D": 2, "E": 2, "F": 2, "G": 6}


def default_brute_modulus(ers: ExtRootSystem) -> int:
    """A scalar m with m*G inside every orbit subgroup, so closures in
    G/mG never merge distinct orbits."""
    return _BRUTE_MODULUS[ers.delta.rs_type.family]


def slice_residues_mod(ers: ExtRootSystem, cls: str, mod_h) -> set[Vector]:
    """Image of the slice S_cls in the finite quotient by a sublattice."""
    s = ers.s_sets[cls]
    residues = {lattice_reduce(mod_h, v) for v in s.cosets}
    frontier = list(residues)
    while frontier:
        nxt = []
        for v in frontier:
            for hrow in s.h_basis:
                for sgn in (1, -1):
                    w = lattice_reduce(
                        mod_h, tuple(x + sgn * y for x, y in zip(v, hrow))
                    )
                    if w not in residues:
                        residues.add(w)
                        nxt.append(w)
        frontier = nxt
    return residues


def _slice_residues(ers: ExtRootSystem, cls: str, m: int) -> set[Vector]:
    n = ers.n
    mod_h = hermite_rows([vec_scale(m, ers.group.basis_vector(i)) for i in range(n)])
    return slice_residues_mod(ers, cls, mod_h)


def orbit_bruteforce(
    ers: ExtRootSystem, g, root_idx: int, modulus: int | None = None
) -> set[tuple[Vector, int]]:
    """Closure of one extended root under all generator reflections,
    computed in the finite quotient G/mG.

    This is the independent oracle for orbit_of: the closure collects
    exactly the orbit as long as m*G sits inside the orbit subgroup.
    """
    if not ers.delta.rs_type.is_reduced():
        raise ExtRootError("orbit closure needs a reduced type; trim first")
    m = modulus if modulus is not None else default_brute_modulus(ers)
    rs = ers.delta
    n = ers.n
    mod_h = hermite_rows([vec_scale(m, ers.group.basis_vector(i)) for i in range(n)])
    letters = []
    for k in range(rs.rank):
        alpha = rs.basis[k]
        cls = rs.lengths[alpha]
        for d in _slice_residues(ers, cls, m):
            letters.append((alpha, d))
    start = (lattice_reduce(mod_h, tuple(g)), root_idx)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for h, beta in frontier:
            for alpha, d in letters:
                c = rs.pairing(alpha, rs.roots[beta])
                h2 = lattice_reduce(
                    mod_h, tuple(x - c * y for x, y in zip(h, d))
                )
                state = (h2, rs.reflect_root_index(alpha, beta))
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return seen


def orbit_partitions_agree(ers: ExtRootSystem, modulus: int | None = None) -> bool:
    """Compare orbit_of classes against brute-force closures on the whole
    quotient grid of valid extended roots."""
    m = modulus if modulus is not None else default_brute_modulus(ers)
    rs = ers.delta
    states = []
    for beta in range(len(rs.roots)):
        for d in _slice_residues(ers, rs.lengths[beta], m):
            states.append((d, beta))
    by_class: dict[OrbitClass, set] = {}
    for d, beta in states:
        by_class.setdefault(orbit_of(ers, d, beta), set()).add((d, beta))
    remaining = set(states)
    while remaining:
        d, beta = next(iter(remaining))
        closure = orbit_bruteforce(ers, d, beta, m)
        if closure != by_class[orbit_of(ers, d, beta)]:
            return False
        remaining -= closure
    return True


# ---------------------------------------------------------------------------
# Abelianization layers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UabVector:
    """A parity vector over orbit classes: the set of classes with odd count."""

    odd_classes: frozenset

    def is_zero(self) -> bool:
        return not self.odd_classes

    def __add__(self, other: "UabVector") -> "UabVector":
        return UabVector(self.odd_classes ^ other.odd_classes)


def uab_of_word(ers: ExtRootSystem, word) -> UabVector:
    odd: set[OrbitClass] = set()
    for t in word:
        cls = orbit_of(ers, t.g, t.root)
        if cls in odd:
            odd.remove(cls)
        else:
            odd.add(cls)
    return UabVector(frozenset(odd))


class AbKGroup:
    """K / K_eff for a tame reduced system, with its projection map."""

    def __init__(self, ers: ExtRootSystem):
        rs = ers.delta
        if not rs.rs_type.is_reduced():
            raise ExtRootError("the abelianized translation part needs a reduced type")
        n, l = ers.n, rs.rank
        gens: list[Vector] = []
        for cls in ers.classes():
            span = ers.span_s(cls)
            roots_in_cls = [i for i in range(len(rs.roots)) if rs.lengths[i] == cls]
            for u in span:
                for i in roots_in_cls:
                    mat = [[u[a] * rs.coroots[i][b] for b in range(l)] for a in range(n)]
                    gens.append(tuple(x for row in mat for x in row))
        basis = hermite_rows(gens)
        self._k_basis = freeze(basis)
        self._n, self._l = n, l
        eff_rows = []
        for b in basis:
            mat = [list(b[a * l : (a + 1) * l]) for a in range(n)]
            for k in range(l):
                r = rs._basis_coreflections[k]
                moved = mat_mul(freeze(mat), transpose(r))
                diff = tuple(
                    mat[a][c] - moved[a][c] for a in range(n) for c in range(l)
                )
                coords = self._coords(diff)
                eff_rows.append(coords)
        self.fp = FPAbelianGroup(len(basis), eff_rows)

    def _coords(self, flat: Vector) -> Vector:
        if not self._k_basis:
            return ()
        sol = solve_integer(transpose(self._k_basis), flat)
        if sol is None:
            raise ExtRootError("matrix outside the translation lattice")
        return sol

    def project_k(self, k: Matrix) -> tuple[Vector, Vector]:
        flat = tuple(x for row in k for x in row)
        return self.fp.project(self._coords(flat))

    def descriptor(self) -> str:
        return self.fp.descriptor()


def ab_k(ers: ExtRootSystem) -> AbKGroup:
    return AbKGroup(ers)


def expected_ab_k_descriptor(ers: ExtRootSystem) -> str:
    """Closed form for K / K_eff of the standard tame systems."""
    fam = ers.delta.rs_type.family
    l = ers.delta.rank
    n1, n2 = len(ers.group.g1), len(ers.group.g2)
    n = ers.n
    if fam == "A" and l == 1:
        count = n
    elif fam == "B" and l == 2:
        count = n
    elif fam == "B":
        count = n1
    elif fam == "C":
        count = n2
    else:
        count = 0
    return " x ".join(["Z2"] * count) if count else "0"


def ab_a_properness(ers: ExtRootSystem) -> bool:
    """Exhaustively verify that distinct orbit classes stay distinct in
    the abelianized terminal group.

    The image of a reflection class there is (k mod K_eff, length
    class); the finite part alone already separates length classes and
    never vanishes, so the content of the check is that the projection
    of g (x) alpha^vee separates the cosets within each class, and that
    it is constant on each class.
    """
    abk = ab_k(ers)
    by_image: dict = {}
    for cls in ers.classes():
        root = next(
            i for i in range(len(ers.delta.roots)) if ers.delta.lengths[i] == cls
        )
        row_h = hermite_rows(orbit_row_lattice(ers, cls))
        reps = sorted(slice_residues_mod(ers, cls, row_h))
        for rep in reps:
            t = ReflectionLabel.make(ers, rep, root)
            image = (cls, abk.project_k(label_k_part(ers, t)))
            oc = orbit_of(ers, rep, root)
            if image in by_image and by_image[image] != oc:
                return False
            by_image[image] = oc
            # well-definedness: shifting the representative inside its
            # orbit coset must not move the image
            for shift in row_h:
                moved = tuple(x + y for x, y in zip(rep, shift))
                if not ers.membership(moved, root):
                    continue
                t2 = ReflectionLabel.make(ers, moved, root)
                image2 = (cls, abk.project_k(label_k_part(ers, t2)))
                if image2 != image:
                    return False
    return True


# ---------------------------------------------------------------------------
# The word problem
# ---------------------------------------------------------------------------


@dataclass
class Decision:
    trivial: bool
    failing_layer: str | None
    witness: dict

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "trivial": self.trivial,
            "failing_layer": self.failing_layer,
            "witness": self.witness,
        }


def _require_decidable(ers: ExtRootSystem):
    if not ers.delta.rs_type.is_reduced():
        raise ExtRootError("the decider needs a reduced type; trim first")
    if not ers.delta.rs_type.is_single_length():
        if not check_twist(ers).ok:
            raise ExtRootError("the decider needs a tame system (twist check failed)")


def decide_word(ers: ExtRootSystem, word) -> Decision:
    """Trivial iff the evaluation in the extended Weyl group is the
    identity and the orbit parity vector vanishes.

    The failing layer mirrors the layered structure: the finite part V,
    then the translation part K, then the central part Z, and finally
    the parity obstruction Uab.
    """
    _require_decidable(ers)
    w = evaluate_word_in_w(ers, word)
    if not w.v.is_identity():
        return Decision(False, "V", {"v_matrix": [list(r) for r in w.v.matrix]})
    if not is_zero_mat(w.k):
        return Decision(False, "K", {"k_matrix": [list(r) for r in w.k]})
    if not is_zero_mat(w.z):
        return Decision(False, "Z", {"z_matrix": [list(r) for r in w.z]})
    parity = uab_of_word(ers, word)
    if not parity.is_zero():
        odd = sorted(
            (c.length_class, list(c.coset)) for c in parity.odd_classes
        )
        return Decision(False, "Uab", {"odd_classes": odd})
    return Decision(True, None, {})


def remark_conditions(ers: ExtRootSystem, word) -> tuple[bool, bool, bool]:
    """The three layer conditions checked separately.

    (i) the image in the finite Weyl group is trivial; (ii) the ordered
    product of the translation parts t^K (with no conjugation applied)
    is trivial, including its central coordinate; (iii) the parity
    vector vanishes.  These are cross-checked against decide_word but
    never trusted as the decider.
    """
    _require_decidable(ers)
    v = WeylElement.identity(ers.delta.rank)
    for t in word:
        v = v * ers.delta.weyl_generator(t.root)
    c1 = v.is_identity()
    n, l = ers.n, ers.delta.rank
    total_k = zeros(n, l)
    total_z = _zero_z(n)
    for t in word:
        kp = label_k_part(ers, t)
        zc = cocycle(ers, total_k, kp)
        total_z = tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(total_z, zc)
        )
        total_k = tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(total_k, kp)
        )
    c2 = is_zero_mat(total_k) and is_zero_mat(total_z)
    c3 = uab_of_word(ers, word).is_zero()
    return c1, c2, c3


def cross_check_remark(ers: ExtRootSystem, words) -> dict:
    """Compare the conjunction of the three conditions with decide_word.

    Returns counts; discrepancies are tallied, not raised, because the
    unconjugated product in condition (ii) is not obviously the layer
    value of the evaluated word once prefixes act nontrivially.
    """
    agree = disagree = 0
    examples = []
    for word in words:
        d = decide_word(ers, word)
        c1, c2, c3 = remark_conditions(ers, word)
        if d.trivial == (c1 and c2 and c3):
            agree += 1
        else:
            disagree += 1
            if len(examples) < 3:
                examples.append([(list(t.g), t.root) for t in word])
    return {"agree": agree, "disagree": disagree, "examples": examples}


# ---------------------------------------------------------------------------
# Kernel witnesses: words trivial in W but not in U
# ---------------------------------------------------------------------------


def _wedge(u: Vector, v: Vector) -> Matrix:
    n = len(u)
    return freeze(
        [[u[a] * v[b] - u[b] * v[a] for b in range(n)] for a in range(n)]
    )


def build_uab_kernel_word(ers: ExtRootSystem, max_subset: int = 8):
    """Search for a word that is trivial in the extended Weyl group but
    has nonzero orbit parity, witnessing the kernel of the presentation.

    Works over a single short root: a subset of short-class cosets with
    even size, zero sum modulo the orbit subgroup, and even pairwise
    wedge sums folds to an element with trivial finite and translation
    parts; the central part is then cancelled by parity-neutral
    four-letter commutator blocks.  Returns the word or None.
    """
    _require_decidable(ers)
    rs = ers.delta
    cls = SHORT
    root = next(i for i in range(len(rs.roots)) if rs.lengths[i] == cls)
    row_h = hermite_rows(orbit_row_lattice(ers, cls))
    if len(row_h) < ers.n:
        return None
    reps = sorted(slice_residues_mod(ers, cls, row_h))
    if len(reps) < 2:
        return None

    from itertools import combinations

    n = ers.n
    for size in range(2, min(len(reps), max_subset) + 1, 2):
        for combo in combinations(reps, size):
            total = tuple(sum(c[i] for c in combo) for i in range(n))
            if not _in_lattice(row_h, total):
                continue
            wedge_sum = [[0] * n for _ in range(n)]
            for x in range(size):
                for y in range(x + 1, size):
                    w = _wedge(combo[x], combo[y])
                    for a in range(n):
                        for b in range(n):
                            wedge_sum[a][b] += w[a][b]
            if any(
                wedge_sum[a][b] % 2 for a in range(n) for b in range(n)
            ):
                continue
            word = _assemble_kernel_word(ers, root, list(combo), row_h)
            if word is not None:
                return word
    return None


def _in_lattice(hnf, v) -> bool:
    from extweyl.intlinalg import lattice_contains

    return lattice_contains(hnf, v)


def _assemble_kernel_word(ers: ExtRootSystem, root: int, reps: list[Vector], row_h):
    n = ers.n
    s = ers.s_sets[SHORT]
    letters = [ReflectionLabel.make(ers, g, root) for g in reps]
    w = evaluate_word_in_w(ers, letters)
    if not w.v.is_identity():
        return None
    # repair the translation part: the alternating fold leaves a defect
    # in the orbit subgroup; absorb it into one letter at an even slot
    if not is_zero_mat(w.k):
        coroot = ers.delta.coroots[root]
        defect = _k_defect_vector(w.k, coroot, n)
        if defect is None:
            return None
        fixed = tuple(x - y for x, y in zip(reps[0], defect))
        if not s.contains(fixed):
            return None
        letters[0] = ReflectionLabel.make(ers, fixed, root)
        w = evaluate_word_in_w(ers, letters)
        if not w.v.is_identity() or not is_zero_mat(w.k):
            return None
    # cancel the central part with parity-neutral blocks
    for a in range(n):
        for b in range(a + 1, n):
            z_ab = w.z[a][b]
            if z_ab == 0:
                continue
            chosen, step = None, 0
            for flip in (False, True):
                blk = _central_block(ers, root, a, b, flip)
                if blk is None:
                    continue
                st = evaluate_word_in_w(ers, blk).z[a][b]
                if st != 0 and z_ab % st == 0 and z_ab // st < 0:
                    chosen, step = blk, st
                    break
            if chosen is None:
                return None
            for _ in range(-(z_ab // step)):
                letters.extend(chosen)
            w = evaluate_word_in_w(ers, letters)
    if not w.is_identity():
        return None
    if uab_of_word(ers, letters).is_zero():
        return None
    return letters


def _k_defect_vector(k: Matrix, coroot: Vector, n: int):
    """Solve k = defect (x) coroot for the defect in G, if possible."""
    pivot = next((i for i, x in enumerate(coroot) if x != 0), None)
    if pivot is None:
        return None
    defect = []
    for a in range(n):
        if k[a][pivot] % coroot[pivot] != 0:
            return None
        defect.append(k[a][pivot] // coroot[pivot])
    expect = [[defect[a] * coroot[b] for b in range(len(coroot))] for a in range(n)]
    if freeze(expect) != k:
        return None
    return tuple(defect)


def _central_block(ers: ExtRootSystem, root: int, a: int, b: int, positive: bool):
    """Four parity-neutral letters whose fold is central in position (a, b)."""
    n = ers.n
    s = ers.s_sets[SHORT]
    zero = (0,) * n
    u = tuple(int(i == a) for i in range(n))
    h = tuple(int(i == b) for i in range(n))
    if positive:
        u, h = h, u
    pts = [zero, h, tuple(x + 2 * y for x, y in zip(h, u)), tuple(2 * y for y in u)]
    if not all(s.contains(p) for p in pts):
        return None
    return [ReflectionLabel.make(ers, p, root) for p in pts]


def random_label(ers: ExtRootSystem, rng) -> ReflectionLabel:
    """A uniform-ish random reflection label with small shift part."""
    rs = ers.delta
    root = rng.randrange(len(rs.roots))
    s = ers.s_of_root(root)
    c = s.cosets[rng.randrange(len(s.cosets))]
    g = list(c)
    for hrow in s.h_basis:
        f = rng.randint(-2, 2)
        for i in range(len(g)):
            g[i] += f * hrow[i]
    return ReflectionLabel.make(ers, tuple(g), root)


def relator_word(ers: ExtRootSystem, t1: ReflectionLabel, t2: ReflectionLabel):
    """The defining relator t1 t2 t1 (t1.t2) of the presentation."""
    from extweyl.refl_groups import conj_reflect

    return [t1, t2, t1, conj_reflect(ers, t1, t2)]


def conjugated_relator_product(ers: ExtRootSystem, rng, n_relators: int = 2, conj_len: int = 2):
    """A random product of conjugated defining relators; trivial by design."""
    word: list[ReflectionLabel] = []
    for _ in range(n_relators):
        t1 = random_label(ers, rng)
        t2 = random_label(ers, rng)
        core = relator_word(ers, t1, t2)
        conj = [random_label(ers, rng) for _ in range(rng.randint(0, conj_len))]
        word.extend(conj + core + list(reversed(conj)))
    return word
