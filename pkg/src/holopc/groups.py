"""The concrete groups behind every comparison and holonomy computation.

Elements are plain Python values, one carrier per group:

* positive reals ``"rplus"``  -- strictly positive finite floats,
* circle group ``"u1"``       -- angles in (-pi, pi],
* unit quaternions ``"su2"``  -- 4-tuples (w, x, y, z) of unit norm,
* cyclic groups ``"zmod:m"``  -- integer residues modulo m.

A :class:`Group` instance supplies the group law, a bi-invariant distance,
exponential/logarithm coordinates on the Lie algebra, and Haar sampling for
the compact groups.  Everything is a pure function of its inputs; random
sampling draws from an explicit ``numpy.random.Generator``.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import GroupMismatchError, LogBranchError, NonCompactGroupError

Element = float | int | tuple[float, float, float, float]

TAU = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Reduce an angle to the canonical branch (-pi, pi]; ties go to +pi."""
    t = math.remainder(theta, TAU)
    if t <= -math.pi:
        t += TAU
    return t


class Group:
    """Group operations on raw carrier values.

    Subclasses fix the carrier and implement the abstract methods.  All of
    them renormalize their outputs so the carrier invariants (positivity,
    canonical angle branch, unit quaternion norm, reduced residue) hold
    after every operation.
    """

    tag: str
    dim: int
    compact: bool
    identity: Element

    def check(self, a: Element) -> Element:
        """Return the canonicalized element, or raise :class:`GroupMismatchError`."""
        raise NotImplementedError

    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inverse(self, a: Element) -> Element:
        raise NotImplementedError

    def distance(self, a: Element, b: Element) -> float:
        """Bi-invariant metric: d(gx, gy) = d(xg, yg) = d(x, y)."""
        raise NotImplementedError

    def exp_coords(self, v: Sequence[float]) -> Element:
        """Exponential of a Lie-algebra coordinate vector of length ``dim``."""
        raise NotImplementedError

    def log_coords(self, g: Element) -> np.ndarray:
        """Principal logarithm as a coordinate vector; inverse of exp_coords
        near the identity.  Raises :class:`LogBranchError` at the cut locus."""
        raise NotImplementedError

    def haar_sample(self, rng: np.random.Generator) -> Element:
        if not self.compact:
            raise NonCompactGroupError(f"{self.tag}: no normalized Haar measure")
        raise NotImplementedError

    def element_to_obj(self, a: Element):
        """JSON-ready representation of an element."""
        raise NotImplementedError

    def element_from_obj(self, obj) -> Element:
        """Parse the representation written by :meth:`element_to_obj`."""
        raise NotImplementedError

    def _coords(self, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float).reshape(-1)
        if arr.shape != (self.dim,):
            raise ValueError(f"{self.tag}: expected {self.dim} coordinates, got {arr.shape}")
        return arr

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and other.tag == self.tag

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return f"<group {self.tag}>"


def _as_real(tag: str, a) -> float:
    if isinstance(a, bool) or not isinstance(a, (int, float, np.integer, np.floating)):
        raise GroupMismatchError(f"group mismatch: {a!r} is not a {tag} element")
    x = float(a)
    if not math.isfinite(x):
        raise GroupMismatchError(f"group mismatch: non-finite {tag} element {a!r}")
    return x


class PositiveReals(Group):
    """Multiplicative group of strictly positive reals."""

    tag = "rplus"
    dim = 1
    compact = False
    identity = 1.0

    def check(self, a):
        x = _as_real(self.tag, a)
        if x <= 0.0:
            raise GroupMismatchError(f"group mismatch: {a!r} is not a positive real")
        return x

    def multiply(self, a, b):
        p = self.check(a) * self.check(b)
        if p <= 0.0 or not math.isfinite(p):
            raise ValueError(f"positive-real product left (0, inf): {a!r} * {b!r}")
        return p

    def inverse(self, a):
        return 1.0 / self.check(a)

    def distance(self, a, b):
        return abs(math.log(self.check(a) / self.check(b)))

    def exp_coords(self, v):
        return math.exp(self._coords(v)[0])

    def log_coords(self, g):
        return np.array([math.log(self.check(g))])

    def element_to_obj(self, a):
        return self.check(a)

    def element_from_obj(self, obj):
        return self.check(obj)


class CircleGroup(Group):
    """U(1) stored as an angle on the canonical branch (-pi, pi]."""

    tag = "u1"
    dim = 1
    compact = True
    identity = 0.0

    def check(self, a):
        return wrap_angle(_as_real(self.tag, a))

    def multiply(self, a, b):
        return wrap_angle(self.check(a) + self.check(b))

    def inverse(self, a):
        return wrap_angle(-self.check(a))

    def distance(self, a, b):
        return abs(wrap_angle(self.check(a) - self.check(b)))

    def exp_coords(self, v):
        return wrap_angle(self._coords(v)[0])

    def log_coords(self, g):
        return np.array([self.check(g)])

    def haar_sample(self, rng):
        return wrap_angle(float(rng.uniform(-math.pi, math.pi)))

    def element_to_obj(self, a):
        return {"theta": self.check(a)}

    def element_from_obj(self, obj):
        if not isinstance(obj, dict) or "theta" not in obj:
            raise GroupMismatchError(f"group mismatch: {obj!r} is not a u1 element")
        return self.check(obj["theta"])


class UnitQuaternions(Group):
    """SU(2) realized as unit quaternions (w, x, y, z)."""

    tag = "su2"
    dim = 3
    compact = True
    identity = (1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def _normalize(q):
        n = math.sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3])
        return (q[0] / n, q[1] / n, q[2] / n, q[3] / n)

    def check(self, a):
        if isinstance(a, np.ndarray):
            a = tuple(a.tolist())
        if not isinstance(a, (tuple, list)) or len(a) != 4:
            raise GroupMismatchError(f"group mismatch: {a!r} is not a quaternion")
        try:
            q = tuple(float(c) for c in a)
        except (TypeError, ValueError) as exc:
            raise GroupMismatchError(f"group mismatch: {a!r} is not a quaternion") from exc
        if not all(math.isfinite(c) for c in q):
            raise GroupMismatchError(f"group mismatch: non-finite quaternion {a!r}")
        n2 = sum(c * c for c in q)
        if abs(n2 - 1.0) > 1e-6:
            raise GroupMismatchError(f"group mismatch: quaternion norm {math.sqrt(n2):.6g} != 1")
        return self._normalize(q)

    def multiply(self, a, b):
        w1, x1, y1, z1 = self.check(a)
        w2, x2, y2, z2 = self.check(b)
        q = (
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )
        return self._normalize(q)

    def inverse(self, a):
        w, x, y, z = self.check(a)
        return (w, -x, -y, -z)

    def distance(self, a, b):
        qa = self.check(a)
        qb = self.check(b)
        # 2*atan2(|a-b|, |a+b|) equals arccos(<a,b>) but stays accurate at
        # both ends of [0, pi].
        dm = math.sqrt(sum((qa[i] - qb[i]) ** 2 for i in range(4)))
        dp = math.sqrt(sum((qa[i] + qb[i]) ** 2 for i in range(4)))
        return 2.0 * math.atan2(dm, dp)

    def exp_coords(self, v):
        vx, vy, vz = self._coords(v)
        phi = math.sqrt(vx * vx + vy * vy + vz * vz)
        if phi < 1e-8:
            k = 1.0 - phi * phi / 6.0
        else:
            k = math.sin(phi) / phi
        return self._normalize((math.cos(phi), k * vx, k * vy, k * vz))

    def log_coords(self, g):
        w, x, y, z = self.check(g)
        s = math.sqrt(x * x + y * y + z * z)
        if s < 1e-15:
            if w > 0.0:
                return np.zeros(3)
            raise LogBranchError("log branch singularity: antipodal to identity")
        if w < 0.0 and s < 1e-9:
            raise LogBranchError("log branch singularity: within 1e-9 of the cut locus")
        phi = math.atan2(s, w)
        k = phi / s
        return np.array([k * x, k * y, k * z])

    def haar_sample(self, rng):
        # Four standard normals, normalized: uniform on the 3-sphere.
        while True:
            v = rng.normal(size=4)
            n = float(np.linalg.norm(v))
            if n > 1e-12:
                return (float(v[0] / n), float(v[1] / n), float(v[2] / n), float(v[3] / n))

    def element_to_obj(self, a):
        return {"q": list(self.check(a))}

    def element_from_obj(self, obj):
        if not isinstance(obj, dict) or "q" not in obj:
            raise GroupMismatchError(f"group mismatch: {obj!r} is not an su2 element")
        return self.check(obj["q"])


class CyclicGroup(Group):
    """Z_m with additive notation; exact integer arithmetic throughout."""

    dim = 0
    compact = True
    identity = 0

    def __init__(self, m: int):
        m = int(m)
        if m < 1:
            raise ValueError(f"cyclic group order must be >= 1, got {m}")
        self.m = m
        self.tag = f"zmod:{m}"

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, (int, np.integer)):
            raise GroupMismatchError(f"group mismatch: {a!r} is not a {self.tag} residue")
        return int(a) % self.m

    def multiply(self, a, b):
        return (self.check(a) + self.check(b)) % self.m

    def inverse(self, a):
        return (-self.check(a)) % self.m

    def distance(self, a, b):
        k = abs(self.check(a) - self.check(b)) % self.m
        return TAU * min(k, self.m - k) / self.m

    def exp_coords(self, v):
        self._coords(v)
        return 0

    def log_coords(self, g):
        if self.check(g) != 0:
            raise LogBranchError("log branch singularity: finite group has no continuous log away from the identity")
        return np.zeros(0)

    def haar_sample(self, rng):
        return int(rng.integers(self.m))

    def element_to_obj(self, a):
        return self.check(a)

    def element_from_obj(self, obj):
        return self.check(obj)


RPLUS = PositiveReals()
U1 = CircleGroup()
SU2 = UnitQuaternions()


def zmod(m: int) -> CyclicGroup:
    return CyclicGroup(m)


def group_from_tag(tag: str) -> Group:
    """Resolve "rplus", "u1", "su2", or "zmod:<m>" to a group instance."""
    if tag == "rplus":
        return RPLUS
    if tag == "u1":
        return U1
    if tag == "su2":
        return SU2
    if isinstance(tag, str) and tag.startswith("zmod:"):
        try:
            return CyclicGroup(int(tag.split(":", 1)[1]))
        except ValueError as exc:
            raise ValueError(f"bad cyclic group tag {tag!r}") from exc
    raise ValueError(f"unknown group tag {tag!r}")


def as_generator(rng) -> np.random.Generator:
    """Accept either an integer seed or a ready Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
