"""Edge-holonomy fields on 2-dimensional simplicial complexes.

A complex stores vertices, canonically oriented edges (i < j), and
triangles (i < j < k); an :class:`EdgeField` assigns a group element to
every oriented edge, with reversal acting by inversion.  Path holonomy
composes contravariantly: the product of a concatenated path is
Hol(second) * Hol(first), so the last edge sits leftmost.

From these come the spanning-tree gauge, the pairwise-comparison matrix of
a field (with gaps where the comparison graph has no edge), per-triangle
curvature, the global worst-triangle indicator, and vertex gauge
transformations.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import MissingEdgeError
from .groups import Element, Group
from .pcmatrix import CONTRAVARIANT, Indicator, PCMatrix, _checked_indicator

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class SimplicialComplex2:
    """Vertices 0..V-1 with oriented edges and triangles.

    Stored edges have i < j and triangles i < j < k; every triangle's three
    edges must be present.  The base vertex anchors gauge paths; vertices
    outside its connected component are allowed but based constructions
    reject them.
    """

    def __init__(
        self,
        vertices: int,
        edges: Iterable[Sequence[int]],
        triangles: Iterable[Sequence[int]] = (),
        base: int = 0,
    ):
        if vertices < 1:
            raise ValueError("complex needs at least one vertex")
        if not 0 <= base < vertices:
            raise ValueError(f"base vertex {base} out of range")
        edge_set: set[Edge] = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j or not (0 <= i < vertices and 0 <= j < vertices):
                raise ValueError(f"bad edge ({i},{j})")
            key = (min(i, j), max(i, j))
            if key in edge_set:
                raise ValueError(f"duplicate edge {key}")
            edge_set.add(key)
        tri_set: set[Triangle] = set()
        for t in triangles:
            i, j, k = sorted(int(v) for v in t)
            if len({i, j, k}) != 3:
                raise ValueError(f"degenerate triangle {tuple(t)}")
            if (i, j, k) in tri_set:
                raise ValueError(f"duplicate triangle ({i},{j},{k})")
            for a, b in ((i, j), (i, k), (j, k)):
                if (a, b) not in edge_set:
                    raise ValueError(f"triangle ({i},{j},{k}) missing edge ({a},{b})")
            tri_set.add((i, j, k))

        self.vertices = vertices
        self.base = base
        self.edges: tuple[Edge, ...] = tuple(sorted(edge_set))
        self.triangles: tuple[Triangle, ...] = tuple(sorted(tri_set))
        self._edge_set = edge_set
        self._tri_set = tri_set
        adj: dict[int, list[int]] = {v: [] for v in range(vertices)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        self._adj = {v: sorted(ns) for v, ns in adj.items()}
        self._parents = self._bfs_parents()

    def _bfs_parents(self) -> dict[int, int | None]:
        # breadth first from the base, neighbors in increasing order
        parents: dict[int, int | None] = {self.base: None}
        queue = [self.base]
        while queue:
            v = queue.pop(0)
            for w in self._adj[v]:
                if w not in parents:
                    parents[w] = v
                    queue.append(w)
        return parents

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    def has_triangle(self, t: Sequence[int]) -> bool:
        return tuple(sorted(int(v) for v in t)) in self._tri_set

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    @property
    def is_connected(self) -> bool:
        return len(self._parents) == self.vertices

    def reachable(self, v: int) -> bool:
        return v in self._parents

    def tree_path(self, v: int) -> tuple[int, ...]:
        """Vertex sequence base -> v along the breadth-first spanning tree."""
        if v not in self._parents:
            raise ValueError(f"vertex {v} unreachable from base {self.base}")
        path = [v]
        while self._parents[path[-1]] is not None:
            path.append(self._parents[path[-1]])
        return tuple(reversed(path))

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex2(V={self.vertices}, E={len(self.edges)}, "
            f"T={len(self.triangles)}, base={self.base})"
        )


def full_simplex(n: int, base: int = 0) -> SimplicialComplex2:
    """The full n-simplex skeleton: n+1 vertices, all edges, all triangles."""
    import itertools

    v = n + 1
    return SimplicialComplex2(
        v,
        itertools.combinations(range(v), 2),
        itertools.combinations(range(v), 3),
        base=base,
    )


def grid_complex(m: int, base: int = 0) -> SimplicialComplex2:
    """An m x m square grid, each cell split into two triangles by the
    down-right diagonal; (m+1)^2 vertices indexed row-major."""
    if m < 1:
        raise ValueError("grid needs m >= 1")
    w = m + 1
    idx = lambda r, c: r * w + c
    edges = []
    triangles = []
    for r in range(w):
        for c in range(w):
            if c < m:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r < m:
                edges.append((idx(r, c), idx(r + 1, c)))
            if r < m and c < m:
                v00, v01 = idx(r, c), idx(r, c + 1)
                v10, v11 = idx(r + 1, c), idx(r + 1, c + 1)
                edges.append((v00, v11))
                triangles.append((v00, v01, v11))
                triangles.append((v00, v10, v11))
    return SimplicialComplex2(w * w, edges, triangles, base=base)


class EdgeField:
    """Assignment of a group element to every oriented edge.

    Keys may be given in either orientation; they are stored canonically
    with i < j and looked up with inversion on reversal.
    """

    def __init__(self, group: Group, values: Mapping[Edge, Element]):
        self.group = group
        store: dict[Edge, Element] = {}
        for (i, j), v in values.items():
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-edge ({i},{j}) has no holonomy")
            key = (i, j) if i < j else (j, i)
            if key in store:
                raise ValueError(f"duplicate value for edge {key}")
            store[key] = group.check(v) if i < j else group.inverse(v)
        self._values = store

    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self._values))

    def value(self, i: int, j: int) -> Element:
        """Holonomy of the oriented edge i -> j."""
        key = (i, j) if i < j else (j, i)
        if key not in self._values:
            raise MissingEdgeError(min(i, j), max(i, j))
        v = self._values[key]
        return v if i < j else self.group.inverse(v)

    def items(self):
        return sorted(self._values.items())


def identity_field(K: SimplicialComplex2, group: Group) -> EdgeField:
    return EdgeField(group, {e: group.identity for e in K.edges})


def field_from_gauge(K: SimplicialComplex2, group: Group, lam: Sequence[Element]) -> EdgeField:
    """The flat field h_ij = lam_j * lam_i^-1; every triangle has identity
    curvature and the induced matrix is contravariant-consistent."""
    lam = [group.check(v) for v in lam]
    if len(lam) != K.vertices:
        raise ValueError(f"gauge length {len(lam)} does not match {K.vertices} vertices")
    return EdgeField(
        group,
        {(i, j): group.multiply(lam[j], group.inverse(lam[i])) for (i, j) in K.edges},
    )


def path_holonomy(K: SimplicialComplex2, F: EdgeField, path: Sequence[int]) -> Element:
    """Ordered edge product along a vertex path, last edge leftmost.

    Empty and single-vertex paths give the identity; concatenation
    satisfies Hol(p * q) = Hol(q) * Hol(p).
    """
    G = F.group
    acc = G.identity
    for v, w in zip(path, path[1:]):
        if not K.has_edge(v, w):
            raise ValueError(f"non-adjacent step {v}->{w}")
        acc = G.multiply(F.value(v, w), acc)
    return acc


def spanning_tree_gauge(K: SimplicialComplex2, F: EdgeField) -> tuple[Element, ...]:
    """Holonomy from the base to every vertex along the breadth-first tree.

    g[base] is the identity and g[child] = h(parent->child) * g[parent];
    values on non-tree edges never enter.
    """
    if not K.is_connected:
        raise ValueError("disconnected complex: no gauge paths reach every vertex")
    G = F.group
    g: dict[int, Element] = {K.base: G.identity}
    queue = [K.base]
    while queue:
        v = queue.pop(0)
        for w in K.neighbors(v):
            if w not in g:
                g[w] = G.multiply(F.value(v, w), g[v])
                queue.append(w)
    return tuple(g[v] for v in range(K.vertices))


def holonomy_pc_matrix(K: SimplicialComplex2, F: EdgeField) -> PCMatrix:
    """The contravariant PC matrix of a field, with gaps off the edge graph.

    Entry (i, j) is g_j * Hol(gamma_i * [i,j] * gamma_j^-1) * g_i^-1 for the
    tree gauge g; with that gauge the conjugations telescope and the entry
    reduces to the edge holonomy itself, which keeps the construction
    numerically tame on large complexes.
    """
    if not K.is_connected:
        raise ValueError("disconnected complex: holonomy matrix needs gauge paths")
    G = F.group
    g = spanning_tree_gauge(K, F)
    n = K.vertices
    grid: list[list[Element | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = G.identity
    for (i, j) in K.edges:
        path = K.tree_path(i) + (j,) + tuple(reversed(K.tree_path(j)))[1:]
        hol = path_holonomy(K, F, path)
        a = G.multiply(G.multiply(g[j], hol), G.inverse(g[i]))
        grid[i][j] = a
        grid[j][i] = G.inverse(a)
    return PCMatrix(G, grid, CONTRAVARIANT)


def _as_triangle(K: SimplicialComplex2, t: Sequence[int]) -> Triangle:
    tri = tuple(sorted(int(v) for v in t))
    if tri not in K._tri_set:
        raise ValueError(f"unknown triangle {tuple(t)}")
    return tri


def plaquette(K: SimplicialComplex2, F: EdgeField, t: Sequence[int]) -> Element:
    """Local boundary product h_ki * h_jk * h_ij of a triangle."""
    i, j, k = _as_triangle(K, t)
    G = F.group
    return G.multiply(G.multiply(F.value(k, i), F.value(j, k)), F.value(i, j))


def triangle_curvature(K: SimplicialComplex2, F: EdgeField, t: Sequence[int]) -> Element:
    """Holonomy of the boundary loop of a triangle, based at the complex base.

    The based loop runs gamma_i * [i,j] * [j,k] * [k,i] * gamma_i^-1, so the
    result is the plaquette conjugated along the tree path; triangles
    unreachable from the base fall back to the bare plaquette, which has the
    same distance to the identity.
    """
    i, j, k = _as_triangle(K, t)
    if not K.reachable(i):
        return plaquette(K, F, (i, j, k))
    approach = K.tree_path(i)
    loop = approach + (j, k, i) + tuple(reversed(approach))[1:]
    return path_holonomy(K, F, loop)


def global_ii(
    K: SimplicialComplex2, F: EdgeField, indicator: Indicator | None = None
) -> tuple[float, Triangle | None]:
    """Worst In(curvature) over all triangles, with the argmax triangle.

    The indicator sees the plaquette; basing only conjugates it, which a
    bi-invariant indicator cannot see.  Complexes without triangles score 0
    with no triangle.
    """
    ind = _checked_indicator(F.group, indicator)
    best_val, best_tri = 0.0, None
    for t in K.triangles:
        v = float(ind(plaquette(K, F, t)))
        if best_tri is None or v > best_val:
            best_val, best_tri = v, t
    return best_val, best_tri


def gauge_transform_field(
    K: SimplicialComplex2, F: EdgeField, mu: Sequence[Element]
) -> EdgeField:
    """Vertex action h_ij -> mu_j * h_ij * mu_i^-1.

    Conjugates every curvature, so bi-invariant indicator values are
    unchanged.
    """
    G = F.group
    mu = [G.check(v) for v in mu]
    if len(mu) != K.vertices:
        raise ValueError(f"gauge length {len(mu)} does not match {K.vertices} vertices")
    return EdgeField(
        G,
        {
            (i, j): G.multiply(G.multiply(mu[j], F.value(i, j)), G.inverse(mu[i]))
            for (i, j) in K.edges
        },
    )
