"""Dual numbers and dual-quaternion algebra.

A dual quaternion is a pair of quaternions A + eps*B with the extra rule
eps^2 = 0, an 8-dimensional algebra.  Its norm is the dual number
|A| + eps*(B.A)/|A|, and normalization is the projection eta -> eta*|eta|^-1
onto the unit dual quaternions (|Q| = 1 and B.Q = 0).

Math note: expanding eta*|eta|^-1 gives Q/|Q| + eps*(B - (B.Q) Q/|Q|^2)/|Q|;
the tangential term carries the extra 1/|Q| factor, so dropping it is only
valid when |Q| = 1 already.  We always compute the definitional product with
exact dual-number arithmetic, which keeps normalization multiplicative for
every input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quat import UNIT_TOLERANCE, Quaternion


@dataclass(frozen=True, slots=True)
class DualNumber:
    """A value a + eps*b with real a, b and eps^2 = 0."""

    real: float
    dual: float

    def __post_init__(self):
        object.__setattr__(self, "real", float(self.real))
        object.__setattr__(self, "dual", float(self.dual))

    def __add__(self, other):
        other = _as_dual_number(other)
        if other is None:
            return NotImplemented
        return DualNumber(self.real + other.real, self.dual + other.dual)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_dual_number(other)
        if other is None:
            return NotImplemented
        return DualNumber(self.real - other.real, self.dual - other.dual)

    def __neg__(self) -> "DualNumber":
        return DualNumber(-self.real, -self.dual)

    def __mul__(self, other):
        other = _as_dual_number(other)
        if other is None:
            return NotImplemented
        return DualNumber(
            self.real * other.real,
            self.real * other.dual + self.dual * other.real,
        )

    __rmul__ = __mul__

    def inverse(self) -> "DualNumber":
        """(a + eps*b)^-1 = 1/a - eps*b/a^2; requires a != 0."""
        if self.real == 0.0:
            raise DomainError("dual number with zero real part has no inverse")
        inv = 1.0 / self.real
        return DualNumber(inv, -self.dual * inv * inv)

    def sqrt(self) -> "DualNumber":
        """sqrt(a + eps*b) = sqrt(a) + eps*b/(2 sqrt(a)); requires a > 0."""
        if self.real <= 0.0:
            raise DomainError("dual number sqrt requires a positive real part")
        root = math.sqrt(self.real)
        return DualNumber(root, self.dual / (2.0 * root))

    def as_tuple(self) -> tuple[float, float]:
        return (self.real, self.dual)


def _as_dual_number(value):
    if isinstance(value, DualNumber):
        return value
    if isinstance(value, (int, float)):
        return DualNumber(float(value), 0.0)
    return None


@dataclass(frozen=True, slots=True)
class DualQuaternion:
    """A pair of quaternions real + eps*dual with eps^2 = 0."""

    real: Quaternion
    dual: Quaternion

    def __post_init__(self):
        if not isinstance(self.real, Quaternion) or not isinstance(self.dual, Quaternion):
            raise TypeError("DualQuaternion components must be Quaternion instances")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls) -> "DualQuaternion":
        return cls(Quaternion.identity(), Quaternion.zero())

    @classmethod
    def zero(cls) -> "DualQuaternion":
        return cls(Quaternion.zero(), Quaternion.zero())

    @classmethod
    def from_array(cls, values) -> "DualQuaternion":
        arr = np.asarray(values, dtype=float)
        if arr.shape != (8,):
            raise DomainError(f"expected 8 components, got shape {arr.shape}")
        return cls(Quaternion.from_array(arr[:4]), Quaternion.from_array(arr[4:]))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.real.as_array(), self.dual.as_array()])

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "DualQuaternion") -> "DualQuaternion":
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return DualQuaternion(self.real + other.real, self.dual + other.dual)

    def __sub__(self, other: "DualQuaternion") -> "DualQuaternion":
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return DualQuaternion(self.real - other.real, self.dual - other.dual)

    def __neg__(self) -> "DualQuaternion":
        return DualQuaternion(-self.real, -self.dual)

    def __mul__(self, other):
        if isinstance(other, DualQuaternion):
            # (A1 + eps B1)(A2 + eps B2) = A1 A2 + eps (A1 B2 + B1 A2)
            return DualQuaternion(
                self.real * other.real,
                self.real * other.dual + self.dual * other.real,
            )
        if isinstance(other, DualNumber):
            # Dual numbers commute with every dual quaternion.
            return DualQuaternion(
                self.real * other.real,
                self.real * other.dual + self.dual * other.real,
            )
        if isinstance(other, (int, float)):
            s = float(other)
            return DualQuaternion(self.real * s, self.dual * s)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, DualNumber)):
            return self.__mul__(other)
        return NotImplemented

    def conjugate(self) -> "DualQuaternion":
        """Quaternion conjugation A* + eps*B*; reverses products."""
        return DualQuaternion(self.real.conjugate(), self.dual.conjugate())

    def eps_conjugate(self) -> "DualQuaternion":
        """The other conjugation A - eps*B (flips the sign of eps)."""
        return DualQuaternion(self.real, -self.dual)

    def norm(self) -> DualNumber:
        """Dual-number norm |A| + eps*(B.A)/|A|; requires a nonzero real part."""
        n2 = self.real.norm_squared()
        if n2 == 0.0:
            raise DomainError("norm undefined for a dual quaternion with zero real part")
        n = math.sqrt(n2)
        return DualNumber(n, self.dual.dot(self.real) / n)

    def inverse(self) -> "DualQuaternion":
        """Multiplicative inverse Q^-1 - eps*Q^-1 B Q^-1; requires Q != 0."""
        qinv = self.real.inverse()
        return DualQuaternion(qinv, -(qinv * self.dual * qinv))

    def normalized(self) -> "DualQuaternion":
        """Projection eta -> eta*|eta|^-1 onto the unit dual quaternions."""
        return self * self.norm().inverse()

    def dot(self, other: "DualQuaternion") -> float:
        """Euclidean inner product of the 8 components."""
        return self.real.dot(other.real) + self.dual.dot(other.dual)

    def re(self) -> DualNumber:
        """Scalar parts of both components as a dual number."""
        return DualNumber(self.real.w, self.dual.w)

    def im(self) -> "DualQuaternion":
        """Vector part (eta - eta*)/2, always a vector dual quaternion."""
        return DualQuaternion(self.real.imaginary(), self.dual.imaginary())

    def is_unit(self, tol: float = UNIT_TOLERANCE) -> bool:
        """True when |Q| = 1 and B.Q = 0 within ``tol``."""
        return abs(self.real.norm() - 1.0) <= tol and abs(self.dual.dot(self.real)) <= tol

    def is_vector(self, tol: float = UNIT_TOLERANCE) -> bool:
        """True when both components have (near) zero scalar part."""
        return abs(self.real.w) <= tol and abs(self.dual.w) <= tol
