"""Quaternion algebra and the rotation action on 3-vectors.

Quaternions are stored scalar-first as (w, x, y, z) with the basis products
i*i = j*j = k*k = i*j*k = -1.  Three-dimensional vectors are identified with
vector quaternions (zero scalar part); functions taking a 3-vector accept
anything ``np.asarray`` turns into shape (3,).

All values are immutable and all operations are pure, so instances can be
shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Inputs declared "unit" are accepted when | |Q| - 1 | is below this bound:
# loose enough for accumulated float error, tight enough to catch logic bugs.
UNIT_TOLERANCE = 1e-9


def as_vector3(r) -> np.ndarray:
    """Coerce to a float ndarray of shape (3,)."""
    arr = np.asarray(r, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls) -> "Quaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def zero(cls) -> "Quaternion":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_vector(cls, r) -> "Quaternion":
        """Embed a 3-vector as a vector quaternion (zero scalar part)."""
        v = as_vector3(r)
        return cls(0.0, v[0], v[1], v[2])

    @classmethod
    def from_array(cls, values) -> "Quaternion":
        arr = np.asarray(values, dtype=float)
        if arr.shape != (4,):
            raise DomainError(f"expected 4 components (w, x, y, z), got shape {arr.shape}")
        return cls(arr[0], arr[1], arr[2], arr[3])

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Quaternion":
        """Rotation by ``angle`` radians about a unit ``axis``.

        The result is cos(angle/2) + axis*sin(angle/2); its negation encodes
        the same rotation (double cover).
        """
        a = as_vector3(axis)
        n = math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
        if abs(n - 1.0) > UNIT_TOLERANCE:
            raise DomainError(f"rotation axis must be a unit vector, |axis| = {n}")
        half = 0.5 * float(angle)
        s = math.sin(half)
        return cls(math.cos(half), s * a[0], s * a[1], s * a[2])

    # -- views -------------------------------------------------------------

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def scalar(self) -> float:
        return self.w

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def imaginary(self) -> "Quaternion":
        """Vector part as a quaternion: (A - A*)/2."""
        return Quaternion(0.0, self.x, self.y, self.z)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            w1, x1, y1, z1 = self.w, self.x, self.y, self.z
            w2, x2, y2, z2 = other.w, other.x, other.y, other.z
            return Quaternion(
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            )
        if isinstance(other, (int, float)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(1.0 / float(other))
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_squared(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def dot(self, other: "Quaternion") -> float:
        """Euclidean inner product; equals Re(A B*) = Re(A* B)."""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def normalized(self) -> "Quaternion":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero quaternion")
        return self * (1.0 / n)

    def inverse(self) -> "Quaternion":
        """Multiplicative inverse A* / |A|^2."""
        n2 = self.norm_squared()
        if n2 == 0.0:
            raise DomainError("the zero quaternion has no inverse")
        return self.conjugate() * (1.0 / n2)

    def is_unit(self, tol: float = UNIT_TOLERANCE) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def rotate(self, r) -> np.ndarray:
        """Apply the rotation r -> Q r Q* of a unit quaternion to a 3-vector.

        Callers normalize explicitly; a non-unit quaternion is rejected
        rather than silently renormalized.
        """
        if not self.is_unit():
            raise DomainError(f"rotate requires a unit quaternion, |Q| = {self.norm()}")
        rq = Quaternion.from_vector(r)
        return (self * rq * self.conjugate()).vector
