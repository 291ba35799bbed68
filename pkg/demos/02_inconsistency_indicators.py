"""Scoring the inconsistency of comparison matrices.

A triad (x, y, z) of positive comparisons is consistent when y = x*z; the
classical indicator ii3 measures the worst triad, and its group-valued
cousin scores the distance of each triad's loop product from the identity.
"""

import numpy as np

from holopc import (
    SU2,
    U1,
    from_gauge_vector,
    from_upper_triangle,
    ii3,
    ii3_matrix,
    ii_indicator,
    ii_n_chain,
    is_consistent,
    triad_holonomy,
)
from holopc.groups import RPLUS

print("single triads:")
for triad in [(2, 8, 4), (1, 2, 1), (2, 4, 4), (2, 4, 8)]:
    print(f"  ii3{triad} = {ii3(*triad)}")

print("\na 4x4 with two bad triads:")
A = from_upper_triangle(RPLUS, [2.0, 4.0, 8.0, 2.0, 4.0, 4.0])
value, worst = ii3_matrix(A)
print("  ii3 =", value, "worst triad:", worst)
print("  chain variant:", ii_n_chain(A))
print("  consistent?", bool(is_consistent(A)))

print("\nthe same machinery on the circle group:")
U = from_upper_triangle(U1, [0.3, 0.1, 0.5])
print("  triad loop angle:", triad_holonomy(U, 0, 1, 2))
print("  ii_In =", ii_indicator(U))

print("\nand on unit quaternions:")
rng = np.random.default_rng(1)
lam = [SU2.haar_sample(rng) for _ in range(4)]
Q = from_gauge_vector(SU2, lam)
print("  built from a gauge vector -> ii_In =", ii_indicator(Q)[0])
grid = [list(r) for r in Q.entries]
grid[0][1] = SU2.multiply(grid[0][1], SU2.exp_coords([0.2, 0.0, 0.0]))
grid[1][0] = SU2.inverse(grid[0][1])
from holopc import PCMatrix

bumped = PCMatrix(SU2, grid)
print("  after bumping one entry ->", ii_indicator(bumped))
