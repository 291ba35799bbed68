"""A tour of the four built-in groups and their shared interface.

Every group offers the same small vocabulary: multiply, inverse, a
bi-invariant distance, exp/log coordinates, and (for the compact ones)
Haar sampling.  The script walks each group through that vocabulary.
"""

import math

import numpy as np

from holopc import RPLUS, SU2, U1, zmod

rng = np.random.default_rng(0)

print("=== positive reals ===")
print("2 * 4 =", RPLUS.multiply(2.0, 4.0))
print("inverse of 4:", RPLUS.inverse(4.0))
print("d(2, 8) = |ln(2/8)| =", RPLUS.distance(2.0, 8.0))
print("exp/log round trip of 8:", RPLUS.exp_coords(RPLUS.log_coords(8.0)))

print("\n=== circle group ===")
print("3.0 + 1.0 wraps to", U1.multiply(3.0, 1.0), "(canonical branch (-pi, pi])")
print("d(0.1, -0.1) =", U1.distance(0.1, -0.1))
sample = U1.haar_sample(rng)
print("one Haar angle:", sample)

print("\n=== unit quaternions ===")
q = SU2.exp_coords([0.1, 0.2, 0.3])
print("exp([0.1, 0.2, 0.3]) =", q)
print("log back:", SU2.log_coords(q))
print("distance to identity:", SU2.distance(SU2.identity, q))
print("antipode is as far as it gets:", SU2.distance(SU2.identity, (-1.0, 0.0, 0.0, 0.0)), "= pi")

print("\n=== cyclic group z5 ===")
z5 = zmod(5)
print("3 + 4 =", z5.multiply(3, 4), "(mod 5)")
print("inverse of 2:", z5.inverse(2))
print("d(0, 2) =", z5.distance(0, 2), "= 2pi * 2/5")

print("\n=== Haar means ===")
for group in (U1, SU2):
    vals = [group.distance(group.identity, group.haar_sample(rng)) for _ in range(20000)]
    print(f"E d(1, Haar) on {group.tag}: {np.mean(vals):.4f}  (analytic value {math.pi/2:.4f})")
