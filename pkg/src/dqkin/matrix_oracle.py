"""Independent 4x4-matrix implementation of rigid motions, used as a test oracle.

Deliberately self-contained: it never imports the quaternion or dual modules,
so a disagreement between the two representations localizes the bug.  Poses
are homogeneous matrices [[R, t], [0, 1]] acting as r -> R r + t.

Not intended for production use; only exact rotations are converted (no
projection or repair of non-rigid matrices).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_RIGID_TOLERANCE = 1e-9


def check_rigid(matrix, tol: float = _RIGID_TOLERANCE) -> np.ndarray:
    m = np.asarray(matrix, dtype=float)
    if m.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
    r = m[:3, :3]
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
        raise DomainError("rotation block is not orthogonal")
    if abs(np.linalg.det(r) - 1.0) > tol:
        raise DomainError("rotation block must have determinant 1")
    if np.max(np.abs(m[3] - np.array([0.0, 0.0, 0.0, 1.0]))) > tol:
        raise DomainError("matrix last row must be (0, 0, 0, 1)")
    return m


def compose(first, second) -> np.ndarray:
    return check_rigid(first) @ check_rigid(second)


def act(matrix, point) -> np.ndarray:
    m = check_rigid(matrix)
    r = np.asarray(point, dtype=float)
    return m[:3, :3] @ r + m[:3, 3]


def _skew(v: np.ndarray) -> np.ndarray:
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def rotation_from_quat(q) -> np.ndarray:
    """3x3 rotation matrix of a unit quaternion given as (w, x, y, z).

    Uses the outer-product form (w^2 - u.u) I + 2 u u^T + 2 w [u]_x, which is
    arithmetically different from the component formula used elsewhere.
    """
    arr = np.asarray(q, dtype=float)
    if arr.shape != (4,):
        raise DomainError(f"expected 4 quaternion components, got shape {arr.shape}")
    if abs(np.linalg.norm(arr) - 1.0) > _RIGID_TOLERANCE:
        raise DomainError("only unit quaternions are converted")
    w, u = arr[0], arr[1:]
    return (w * w - u @ u) * np.eye(3) + 2.0 * np.outer(u, u) + 2.0 * w * _skew(u)


def from_qt(q, t) -> np.ndarray:
    m = np.eye(4)
    m[:3, :3] = rotation_from_quat(q)
    m[:3, 3] = np.asarray(t, dtype=float)
    return m


def twist(r, t, r_dot, t_dot, tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
    """Body-frame (w, v) from a rotation/translation pair and its derivatives.

    Reads w off the antisymmetric part of R^-1 R_dot and v = R^-1 t_dot;
    rejects a velocity that is not tangent (R^-1 R_dot far from antisymmetric).
    """
    r = np.asarray(r, dtype=float)
    omega = r.T @ np.asarray(r_dot, dtype=float)
    if np.max(np.abs(omega + omega.T)) / 2.0 > tol:
        raise DomainError("R^-1 R_dot is not antisymmetric; derivative is not tangent")
    w = np.array([
        (omega[2, 1] - omega[1, 2]) / 2.0,
        (omega[0, 2] - omega[2, 0]) / 2.0,
        (omega[1, 0] - omega[0, 1]) / 2.0,
    ])
    v = r.T @ np.asarray(t_dot, dtype=float)
    return w, v
