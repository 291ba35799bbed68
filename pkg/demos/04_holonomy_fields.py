"""Edge fields on simplicial complexes and their comparison matrices.

Assign a group element to every edge of a complex; loops pick up holonomy,
triangles measure curvature, and the whole field flattens into a
pairwise-comparison matrix with gaps wherever the comparison graph has no
edge.  Vertex gauges move everything around without changing any score.
"""

import numpy as np

from holopc import (
    SU2,
    U1,
    EdgeField,
    field_from_gauge,
    full_simplex,
    gauge_transform_field,
    global_ii,
    grid_complex,
    holonomy_pc_matrix,
    is_consistent,
    path_holonomy,
    spanning_tree_gauge,
    triangle_curvature,
    validate,
)

print("a single triangle with angles 0.3, 0.5 and direct edge 0.1:")
K = full_simplex(2)
F = EdgeField(U1, {(0, 1): 0.3, (1, 2): 0.5, (0, 2): 0.1})
print("  holonomy of path 0->1->2:", path_holonomy(K, F, (0, 1, 2)))
print("  curvature of the triangle:", triangle_curvature(K, F, (0, 1, 2)))
print("  worst triangle:", global_ii(K, F))

print("\nflat fields give consistent matrices:")
rng = np.random.default_rng(3)
K4 = full_simplex(3)
lam = [SU2.haar_sample(rng) for _ in range(K4.vertices)]
flat = field_from_gauge(K4, SU2, lam)
A = holonomy_pc_matrix(K4, flat)
print("  validates:", validate(A) == [])
print("  consistent:", bool(is_consistent(A, tol=1e-10)))

print("\na grid complex leaves gaps:")
G = grid_complex(2)
random_field = EdgeField(U1, {e: U1.haar_sample(rng) for e in G.edges})
M = holonomy_pc_matrix(G, random_field)
print("  vertices:", G.vertices, " gaps:", len(M.gaps()))
print("  tree gauge at the far corner:", spanning_tree_gauge(G, random_field)[-1])

print("\ngauge moves change the field but not the score:")
mu = [U1.haar_sample(rng) for _ in range(G.vertices)]
moved = gauge_transform_field(G, random_field, mu)
print("  before:", global_ii(G, random_field)[0])
print("  after: ", global_ii(G, moved)[0])
