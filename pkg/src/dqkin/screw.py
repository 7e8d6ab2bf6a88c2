"""Closed-form exponential and principal logarithm of vector dual quaternions.

exp maps a constant twist theta = w/2 + eps*v/2 to the pose reached after
one time unit: a rotation by |w| about the axis a = w/|w| combined with a
translation v1 along the axis and a circular arc of radius v2/|w| in the
perpendicular plane (a straight line when w = 0).  log inverts it on its
principal branch, the one with the smallest rotation angle.

slerp(eta1, eta2, t) = eta1 * exp(t * log(eta1* eta2)) interpolates between
two poses with a constant body twist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dual import DualQuaternion
from .errors import DomainError
from .pose import require_unit, require_vector
from .quat import Quaternion

# Below this angular speed the sin(w/2)/w style coefficients switch to their
# Taylor series; the direct quotients lose all relative accuracy there while
# the series are exact to double precision.
_SMALL_ANGLE = 1e-8

# A unit vector component with |a_i| below this is treated as "not parallel"
# when picking a deterministic perpendicular direction.
_PARALLEL_BOUND = 0.9


def _perpendicular_unit(a: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to unit ``a``.

    Gram-Schmidt of the first standard basis vector that is comfortably
    non-parallel to ``a``.
    """
    for i in range(3):
        if abs(a[i]) < _PARALLEL_BOUND:
            e = np.zeros(3)
            e[i] = 1.0
            b = e - a[i] * a
            return b / np.linalg.norm(b)
    raise AssertionError("unreachable: a unit vector has a component below 0.9")


@dataclass(frozen=True)
class ScrewDecomposition:
    """Unit dual quaternion written as c + s*a + eps*(x + y1*a + y2*b).

    a and b are orthonormal; for a unit input c^2 + s^2 = 1 and
    c*x + s*y1 = 0.  When s = 0 the axis a is taken from the translation
    direction (or fixed to e_x for the identity) and y2 = 0 with b a
    deterministic unit vector orthogonal to a.
    """

    c: float
    s: float
    axis: np.ndarray
    x: float
    y1: float
    y2: float
    axis_perp: np.ndarray

    def reconstruct(self) -> DualQuaternion:
        real = Quaternion(self.c, *(self.s * self.axis))
        dual_vec = self.y1 * self.axis + self.y2 * self.axis_perp
        return DualQuaternion(real, Quaternion(self.x, *dual_vec))


def decompose(eta: DualQuaternion) -> ScrewDecomposition:
    """Split a unit dual quaternion into its screw components."""
    require_unit(eta)
    c = eta.real.w
    svec = eta.real.vector
    s = float(np.linalg.norm(svec))
    x = eta.dual.w
    y = eta.dual.vector

    if s > 0.0:
        a = svec / s
    else:
        ynorm = float(np.linalg.norm(y))
        a = y / ynorm if ynorm > 0.0 else np.array([1.0, 0.0, 0.0])

    y1 = float(y @ a)
    y_perp = y - y1 * a
    y2 = float(np.linalg.norm(y_perp))
    b = y_perp / y2 if y2 > 0.0 else _perpendicular_unit(a)
    return ScrewDecomposition(c, s, a, x, y1, y2, b)


def _sin_half_over(w: float) -> float:
    """sin(w/2)/w, stable through w = 0."""
    if w < _SMALL_ANGLE:
        w2 = w * w
        return 0.5 - w2 / 48.0 + w2 * w2 / 3840.0
    return math.sin(0.5 * w) / w


def _cos_correction(w: float) -> float:
    """(cos(w/2)/2 - sin(w/2)/w) / w^2, stable through w = 0."""
    if w < _SMALL_ANGLE:
        return -1.0 / 24.0 + w * w / 960.0
    return (0.5 * math.cos(0.5 * w) - math.sin(0.5 * w) / w) / (w * w)


def exp(theta: DualQuaternion) -> DualQuaternion:
    """Exponential of a vector dual quaternion; always a unit pose.

    Closed form, equal to the power series sum theta^k / k!.  Writing
    wv = 2*Im(real part) and v = 2*Im(dual part):

        exp(theta) = cos(w/2) + g*wv
                     + eps*( -(g/2)*(v.wv) + g*v + h*(v.wv)*wv )

    with w = |wv|, g = sin(w/2)/w and h = (cos(w/2)/2 - g)/w^2; both
    coefficients go over to their series for small w, which also covers the
    pure-translation case exp(eps*v/2) = 1 + eps*v/2.
    """
    require_vector(theta, "screw")
    wv = 2.0 * theta.real.vector
    v = 2.0 * theta.dual.vector
    w = float(np.linalg.norm(wv))

    g = _sin_half_over(w)
    h = _cos_correction(w)
    v_dot_w = float(v @ wv)

    real = Quaternion(math.cos(0.5 * w), *(g * wv))
    dual = Quaternion(-0.5 * g * v_dot_w, *(g * v + h * v_dot_w * wv))
    return DualQuaternion(real, dual)


def log(eta: DualQuaternion) -> DualQuaternion:
    """Principal logarithm of a unit dual quaternion.

    With the screw split eta = c + s*a + eps*(x + y1*a + y2*b) and
    t = atan2(s, c):

        log(eta) = t*a + eps*(c*y1 - s*x)*a + eps*(t*y2/s)*b

    where y2/s is taken as 0 when s = 0.  Undefined near eta = -1 (every
    axis gives a half-turn) and at t = pi with translation, where the screw
    axis is ill-conditioned.
    """
    require_unit(eta)
    d = decompose(eta)
    if d.c <= -1.0 + 1e-9:
        raise DomainError("log undefined at a dual quaternion with real part -1")
    t = math.atan2(d.s, d.c)
    if abs(t - math.pi) <= 1e-9:
        raise DomainError("screw axis ill-conditioned at a half-turn with translation")
    perp = t * d.y2 / d.s if d.s > 0.0 else 0.0
    real = Quaternion(0.0, *(t * d.axis))
    dual = Quaternion(0.0, *((d.c * d.y1 - d.s * d.x) * d.axis + perp * d.axis_perp))
    return DualQuaternion(real, dual)


def slerp(eta1: DualQuaternion, eta2: DualQuaternion, t: float) -> DualQuaternion:
    """Constant-twist interpolation from eta1 (t = 0) to eta2 (t = 1).

    Uses the principal logarithm of eta1* eta2, so it errors where log does.
    Apply :func:`shortest_path` first when the two inputs may sit on opposite
    sides of the double cover.
    """
    require_unit(eta1)
    require_unit(eta2)
    relative = eta1.conjugate() * eta2
    return eta1 * exp(log(relative) * float(t))


def shortest_path(eta1: DualQuaternion, eta2: DualQuaternion,
                  ) -> tuple[DualQuaternion, DualQuaternion]:
    """Flip the sign of eta2 if needed so slerp takes the short way around.

    After the flip the real part of eta1 eta2^-1 has non-negative scalar
    component; both returned values still represent the original poses.
    """
    require_unit(eta1)
    require_unit(eta2)
    if eta1.real.dot(eta2.real) < 0.0:
        return eta1, -eta2
    return eta1, eta2
