"""Pairwise-comparison matrices over a group.

A PC matrix is an n x n grid of group elements with identity diagonal and
the reciprocity law a[j][i] = a[i][j]^-1.  Entries may be absent ("gaps")
when the matrix is assembled from an incomplete comparison graph; the gap
pattern is symmetric and the diagonal is never gapped.

The module provides validation, the two consistency notions (covariant
a_ij * a_jk = a_ik and contravariant a_jk * a_ij = a_ik), triad holonomy,
the classical triad indicator ii3 with its chain variant, the group-valued
indicator built from an indicator map, and the gauge-vector factorization
a_ij = lam_i^-1 * lam_j of consistent matrices together with its converse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import GapError, InconsistentMatrixError, NonCompactGroupError
from .groups import Element, Group, as_generator

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"

ALGEBRA_TOL = 1e-12  # tolerance for algebraic identities on float carriers

Triad = tuple[int, int, int]
Indicator = Callable[[Element], float]


class PCMatrix:
    """Immutable n x n grid of optional group elements.

    ``entries`` is any nested sequence; ``None`` marks a gap.  Carrier
    values are canonicalized through the group on construction.
    """

    __slots__ = ("group", "n", "variance", "entries")

    def __init__(self, group: Group, entries, variance: str = COVARIANT):
        if variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"variance must be covariant or contravariant, got {variance!r}")
        rows = [list(r) for r in entries]
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise ValueError("entries must form a square grid with n >= 2")
        grid = tuple(
            tuple(None if e is None else group.check(e) for e in row) for row in rows
        )
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "variance", variance)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("PCMatrix is immutable")

    def entry(self, i: int, j: int) -> Element | None:
        return self.entries[i][j]

    @property
    def gap_free(self) -> bool:
        return all(e is not None for row in self.entries for e in row)

    def gaps(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if self.entries[i][j] is None
        ]

    def triads(self):
        """All index triples i < j < k."""
        return itertools.combinations(range(self.n), 3)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PCMatrix)
            and other.group == self.group
            and other.variance == self.variance
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.group, self.variance, self.entries))

    def __repr__(self) -> str:
        gaps = sum(1 for row in self.entries for e in row if e is None)
        extra = f", gaps={gaps}" if gaps else ""
        return f"PCMatrix({self.group.tag}, n={self.n}, {self.variance}{extra})"


def identity_matrix(group: Group, n: int, variance: str = COVARIANT) -> PCMatrix:
    e = group.identity
    return PCMatrix(group, [[e] * n for _ in range(n)], variance)


def from_upper_triangle(group: Group, values: Sequence[Element], variance: str = COVARIANT) -> PCMatrix:
    """Build a matrix from its strict upper triangle, row-major.

    ``values`` has length n(n-1)/2; the diagonal is set to the identity and
    the lower triangle to the inverses.
    """
    m = len(values)
    n = round((1 + (1 + 8 * m) ** 0.5) / 2)
    if n * (n - 1) // 2 != m:
        raise ValueError(f"{m} values do not fill a strict upper triangle")
    grid = [[None] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        grid[i][i] = group.identity
        for j in range(i + 1, n):
            v = group.check(next(it))
            grid[i][j] = v
            grid[j][i] = group.inverse(v)
    return PCMatrix(group, grid, variance)


def validate(A: PCMatrix) -> list[tuple[int, int, str]]:
    """Check the PC matrix axioms.

    Returns an empty list when the matrix is valid; otherwise one
    ``(i, j, axiom)`` tuple per violation, with axiom one of "diagonal",
    "reciprocity", "gap symmetry".
    """
    G = A.group
    out = []
    for i in range(A.n):
        d = A.entry(i, i)
        if d is None:
            out.append((i, i, "diagonal"))
        elif G.distance(d, G.identity) > ALGEBRA_TOL:
            out.append((i, i, "diagonal"))
    for i in range(A.n):
        for j in range(i + 1, A.n):
            a, b = A.entry(i, j), A.entry(j, i)
            if (a is None) != (b is None):
                out.append((i, j, "gap symmetry"))
            elif a is not None and G.distance(b, G.inverse(a)) > ALGEBRA_TOL:
                out.append((j, i, "reciprocity"))
    return out


def dualize(A: PCMatrix) -> PCMatrix:
    """Transpose the matrix (b_ij = a_ji) and flip its variance.

    An involution; maps covariant-consistent matrices to
    contravariant-consistent ones and back.
    """
    flipped = CONTRAVARIANT if A.variance == COVARIANT else COVARIANT
    grid = [[A.entry(j, i) for j in range(A.n)] for i in range(A.n)]
    return PCMatrix(A.group, grid, flipped)


def _require_gap_free(A: PCMatrix, message: str) -> None:
    if not A.gap_free:
        raise GapError(message)


def triad_entries(A: PCMatrix, i: int, j: int, k: int) -> tuple[Element, Element, Element]:
    """The upper-triangle triad (x, y, z) = (a_ij, a_ik, a_jk)."""
    x, y, z = A.entry(i, j), A.entry(i, k), A.entry(j, k)
    if x is None or y is None or z is None:
        raise GapError(f"gap on the triangle ({i},{j},{k})")
    return x, y, z


@dataclass(frozen=True)
class ConsistencyCheck:
    consistent: bool
    worst_triad: Triad | None
    worst_defect: float

    def __bool__(self) -> bool:
        return self.consistent


def is_consistent(A: PCMatrix, tol: float = 1e-9) -> ConsistencyCheck:
    """Test the consistency law recorded on the matrix.

    Covariant matrices must satisfy a_ij * a_jk = a_ik for every triad,
    contravariant ones a_jk * a_ij = a_ik; the defect is the group distance
    between the two sides, and the worst triad is reported as witness.
    """
    _require_gap_free(A, "consistency undefined with gaps")
    G = A.group
    worst: Triad | None = None
    worst_defect = 0.0
    for (i, j, k) in A.triads():
        x, y, z = triad_entries(A, i, j, k)
        comp = G.multiply(x, z) if A.variance == COVARIANT else G.multiply(z, x)
        defect = G.distance(comp, y)
        if worst is None or defect > worst_defect:
            worst, worst_defect = (i, j, k), defect
    return ConsistencyCheck(worst_defect <= tol, worst, worst_defect)


def triad_holonomy(A: PCMatrix, i: int, j: int, k: int) -> Element:
    """Loop product around the triad (i, j, k), i < j < k.

    Contravariant matrices use a_ki * a_jk * a_ij, covariant ones the
    reversed product a_ij * a_jk * a_ki; either equals the identity exactly
    when the triad satisfies its consistency law.
    """
    if not i < j < k:
        raise ValueError(f"triad indices must be strictly increasing, got ({i},{j},{k})")
    x, y, z = triad_entries(A, i, j, k)
    G = A.group
    y_inv = G.inverse(y)  # a_ki
    if A.variance == CONTRAVARIANT:
        return G.multiply(G.multiply(y_inv, z), x)
    return G.multiply(G.multiply(x, z), y_inv)


def ii3(x: float, y: float, z: float) -> float:
    """Triad inconsistency 1 - min(y/(xz), xz/y) for positive reals.

    Zero exactly when y = x*z; always in [0, 1).
    """
    if min(x, y, z) <= 0:
        raise ValueError("triad values must be positive")
    r = y / (x * z)
    return 1.0 - min(r, 1.0 / r)


def _require_rplus(A: PCMatrix, what: str) -> None:
    if A.group.tag != "rplus":
        raise ValueError(f"{what} is defined for positive-real matrices, not {A.group.tag}")


def ii3_matrix(A: PCMatrix) -> tuple[float, Triad | None]:
    """Worst-triad ii3 over all C(n,3) triads, with its argmax.

    Ties resolve to the lexicographically smallest triad; matrices with
    n < 3 have no triads and score 0.
    """
    _require_rplus(A, "ii3")
    _require_gap_free(A, "ii3 undefined with gaps")
    best_val, best_triad = 0.0, None
    for (i, j, k) in A.triads():
        x, y, z = triad_entries(A, i, j, k)
        v = ii3(x, y, z)
        if best_triad is None or v > best_val:
            best_val, best_triad = v, (i, j, k)
    return best_val, best_triad


def ii_n_chain(A: PCMatrix) -> float:
    """Chain inconsistency: worst mismatch between a_ij and the product of
    consecutive entries a_i,i+1 * ... * a_j-1,j, as 1 - min(r, 1/r)."""
    _require_rplus(A, "chain inconsistency")
    _require_gap_free(A, "chain inconsistency undefined with gaps")
    worst = 1.0
    for i in range(A.n):
        prod = 1.0
        for j in range(i + 1, A.n):
            prod *= A.entry(j - 1, j)
            r = A.entry(i, j) / prod
            worst = min(worst, r, 1.0 / r)
    return 1.0 - worst


def default_indicator(group: Group) -> Indicator:
    """The metric indicator map g -> d(1, g^-1); zero exactly at the identity."""

    def indicator(g: Element) -> float:
        return group.distance(group.identity, group.inverse(g))

    return indicator


def _checked_indicator(group: Group, indicator: Indicator | None) -> Indicator:
    if indicator is None:
        return default_indicator(group)
    if abs(indicator(group.identity)) > ALGEBRA_TOL:
        raise ValueError("not an indicator map: In(identity) != 0")
    return indicator


def ii_indicator(A: PCMatrix, indicator: Indicator | None = None) -> tuple[float, Triad | None]:
    """Supremum of In(triad holonomy) over all triads, with its argmax.

    With the default metric indicator this is the group-valued
    generalization of ii3: on positive-real matrices the two are linked by
    ii3 = 1 - exp(-ii_In) triad by triad.
    """
    _require_gap_free(A, "indicator undefined with gaps; use the simplicial assembly")
    ind = _checked_indicator(A.group, indicator)
    best_val, best_triad = 0.0, None
    for (i, j, k) in A.triads():
        v = float(ind(triad_holonomy(A, i, j, k)))
        if best_triad is None or v > best_val:
            best_val, best_triad = v, (i, j, k)
    return best_val, best_triad


def from_gauge_vector(group: Group, lam: Sequence[Element]) -> PCMatrix:
    """The covariant-consistent matrix a_ij = lam_i^-1 * lam_j.

    Invariant under a global left translation of ``lam``.
    """
    lam = [group.check(v) for v in lam]
    n = len(lam)
    if n < 2:
        raise ValueError("gauge vector needs at least 2 components")
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = group.identity
        inv_i = group.inverse(lam[i])
        for j in range(i + 1, n):
            v = group.multiply(inv_i, lam[j])
            grid[i][j] = v
            grid[j][i] = group.inverse(v)
    return PCMatrix(group, grid, COVARIANT)


def normalize_gauge(group: Group, lam: Sequence[Element]) -> tuple[Element, ...]:
    """Left-translate so the first component is the identity."""
    lam = [group.check(v) for v in lam]
    shift = group.inverse(lam[0])
    return (group.identity,) + tuple(group.multiply(shift, v) for v in lam[1:])


def gauge_extract(A: PCMatrix, tol: float = 1e-9) -> tuple[Element, ...]:
    """Recover the normalized gauge vector of a covariant-consistent matrix.

    Returns lam with lam_0 = identity and lam_j = a_0j, so that
    ``from_gauge_vector`` reproduces the matrix within ``tol``.
    """
    if A.variance != COVARIANT:
        raise ValueError("gauge extraction expects a covariant matrix; dualize first")
    _require_gap_free(A, "gauge extraction undefined with gaps")
    chk = is_consistent(A, tol)
    if not chk:
        raise InconsistentMatrixError(
            f"no gauge vector exists: worst triad {chk.worst_triad} has defect {chk.worst_defect:.3g}",
            witness=chk.worst_triad,
        )
    return (A.group.identity,) + tuple(A.entry(0, j) for j in range(1, A.n))


def gauge_transform(A: PCMatrix, mu: Sequence[Element]) -> PCMatrix:
    """Vertex gauge action on a PC matrix.

    Contravariant matrices transform as a_ij -> mu_j * a_ij * mu_i^-1 and
    covariant ones by the dual action a_ij -> mu_i^-1 * a_ij * mu_j; each
    conjugates the matching triad holonomy, so indicator values built from
    a bi-invariant distance are unchanged.  Gaps are preserved.
    """
    G = A.group
    mu = [G.check(v) for v in mu]
    if len(mu) != A.n:
        raise ValueError(f"gauge length {len(mu)} does not match matrix size {A.n}")
    inv = [G.inverse(v) for v in mu]
    grid = [[None] * A.n for _ in range(A.n)]
    for i in range(A.n):
        grid[i][i] = G.identity
        for j in range(i + 1, A.n):
            a = A.entry(i, j)
            if a is None:
                continue
            if A.variance == CONTRAVARIANT:
                v = G.multiply(G.multiply(mu[j], a), inv[i])
            else:
                v = G.multiply(G.multiply(inv[i], a), mu[j])
            grid[i][j] = v
            grid[j][i] = G.inverse(v)
    return PCMatrix(G, grid, A.variance)


def random_pc_matrix(group: Group, n: int, rng, variance: str = COVARIANT) -> PCMatrix:
    """Upper-triangle entries i.i.d. Haar, reciprocity below, identity diagonal.

    ``rng`` is an integer seed or a ``numpy.random.Generator``; entries are
    drawn in row-major upper-triangle order, so results are reproducible.
    """
    if not group.compact:
        raise NonCompactGroupError(f"{group.tag}: no normalized Haar measure")
    gen = as_generator(rng)
    upper = [group.haar_sample(gen) for _ in range(n * (n - 1) // 2)]
    return from_upper_triangle(group, upper, variance)
