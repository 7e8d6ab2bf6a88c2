"""Rigid motions as unit dual quaternions.

A pose with rotation Q (unit quaternion) and translation t is the unit dual
quaternion Q + (1/2)*eps*t*Q.  Composition is the dual-quaternion product and
a point r maps to (Q r + 2B) Q*.

Functions here validate unitness of their pose arguments and never
renormalize silently.
"""

from __future__ import annotations

import numpy as np

from .dual import DualQuaternion
from .errors import DomainError
from .quat import UNIT_TOLERANCE, Quaternion, as_vector3

_MATRIX_TOLERANCE = 1e-9


def require_unit(eta: DualQuaternion, what: str = "pose") -> DualQuaternion:
    if not eta.is_unit():
        raise DomainError(f"{what} must be a unit dual quaternion")
    return eta


def require_vector(theta: DualQuaternion, what: str = "argument") -> DualQuaternion:
    if not theta.is_vector():
        raise DomainError(f"{what} must be a vector dual quaternion")
    return theta


def identity() -> DualQuaternion:
    return DualQuaternion.identity()


def from_qt(rotation: Quaternion, translation) -> DualQuaternion:
    """Build the pose Q + (1/2)*eps*t*Q from a unit quaternion and a 3-vector."""
    if not rotation.is_unit():
        raise DomainError(f"rotation must be a unit quaternion, |Q| = {rotation.norm()}")
    t = Quaternion.from_vector(translation)
    return DualQuaternion(rotation, (t * rotation) * 0.5)


def to_qt(eta: DualQuaternion) -> tuple[Quaternion, np.ndarray]:
    """Recover (Q, t) with t = 2 B Q*.

    Returns the stored quaternion representative unchanged; use
    :func:`canonicalize` first if a fixed sign is wanted.
    """
    require_unit(eta)
    t = (eta.dual * eta.real.conjugate()) * 2.0
    return eta.real, t.vector


def compose(first: DualQuaternion, second: DualQuaternion) -> DualQuaternion:
    """Compose two poses (right to left, like matrix multiplication)."""
    require_unit(first)
    require_unit(second)
    return first * second


def act(eta: DualQuaternion, point) -> np.ndarray:
    """Image of a 3-vector under the pose: (Q r + 2B) Q*."""
    require_unit(eta)
    r = Quaternion.from_vector(point)
    return ((eta.real * r + eta.dual * 2.0) * eta.real.conjugate()).vector


def canonicalize(eta: DualQuaternion) -> DualQuaternion:
    """Pick the double-cover representative with Q.w > 0.

    Ties (Q.w == 0) are broken by making the first nonzero component of
    (x, y, z) positive.  The represented pose is unchanged.
    """
    q = eta.real
    for component in (q.w, q.x, q.y, q.z):
        if component > 0.0:
            return eta
        if component < 0.0:
            return -eta
    return eta


def to_matrix(eta: DualQuaternion) -> np.ndarray:
    """Homogeneous 4x4 matrix of the pose."""
    rotation, translation = to_qt(eta)
    w, x, y, z = rotation.w, rotation.x, rotation.y, rotation.z
    m = np.eye(4)
    m[0, 0] = 1.0 - 2.0 * (y * y + z * z)
    m[0, 1] = 2.0 * (x * y - w * z)
    m[0, 2] = 2.0 * (x * z + w * y)
    m[1, 0] = 2.0 * (x * y + w * z)
    m[1, 1] = 1.0 - 2.0 * (x * x + z * z)
    m[1, 2] = 2.0 * (y * z - w * x)
    m[2, 0] = 2.0 * (x * z - w * y)
    m[2, 1] = 2.0 * (y * z + w * x)
    m[2, 2] = 1.0 - 2.0 * (x * x + y * y)
    m[:3, 3] = translation
    return m


def from_matrix(matrix) -> DualQuaternion:
    """Pose from a rigid homogeneous matrix.

    The rotation block must be orthogonal with determinant 1 (tolerance
    1e-9) and the last row (0, 0, 0, 1); anything else is rejected, there
    is no repair step.  The quaternion is extracted with the
    largest-diagonal branch method and canonicalized to Q.w >= 0.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
    if np.max(np.abs(m[3] - np.array([0.0, 0.0, 0.0, 1.0]))) > _MATRIX_TOLERANCE:
        raise DomainError("matrix last row must be (0, 0, 0, 1)")
    r = m[:3, :3]
    if np.max(np.abs(r.T @ r - np.eye(3))) > _MATRIX_TOLERANCE:
        raise DomainError("rotation block is not orthogonal")
    if abs(np.linalg.det(r) - 1.0) > _MATRIX_TOLERANCE:
        raise DomainError("rotation block must have determinant 1")

    trace = r[0, 0] + r[1, 1] + r[2, 2]
    if trace >= max(r[0, 0], r[1, 1], r[2, 2]):
        s = 2.0 * np.sqrt(1.0 + trace)
        q = Quaternion(0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s)
    elif r[0, 0] >= r[1, 1] and r[0, 0] >= r[2, 2]:
        s = 2.0 * np.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2])
        q = Quaternion((r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s)
    elif r[1, 1] >= r[2, 2]:
        s = 2.0 * np.sqrt(1.0 + r[1, 1] - r[0, 0] - r[2, 2])
        q = Quaternion((r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s)
    else:
        s = 2.0 * np.sqrt(1.0 + r[2, 2] - r[0, 0] - r[1, 1])
        q = Quaternion((r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s)
    pose = from_qt(q.normalized(), m[:3, 3])
    return canonicalize(pose)


def lie_difference(eta: DualQuaternion, eta_ref: DualQuaternion) -> DualQuaternion:
    """Vector dual quaternion Im(eta_ref* eta) measuring eta relative to eta_ref.

    First-order accurate for nearby poses and antisymmetric in its arguments.
    """
    require_unit(eta)
    require_unit(eta_ref, "reference pose")
    return (eta_ref.conjugate() * eta).im()


def perturb(eta_ref: DualQuaternion, theta: DualQuaternion) -> DualQuaternion:
    """Move off a reference pose: eta_ref * normalized(1 + theta)."""
    require_unit(eta_ref, "reference pose")
    require_vector(theta, "perturbation")
    return eta_ref * (DualQuaternion.identity() + theta).normalized()
