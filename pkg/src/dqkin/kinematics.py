"""Twists and wrenches: pose kinematics in dual-quaternion form.

A body-frame twist (w, v) of a pose trajectory eta(t) is the vector dual
quaternion phi = eta^-1 eta_dot = w/2 + eps*v/2; the spatial twist is the
reversed product eta_dot eta^-1.  A wrench with torque q and force p is
encoded tau = 2q + 2*eps*p so that the work rate is the plain 8-dim dot
product tau . phi = q.w + p.v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .dual import DualQuaternion
from .errors import DomainError, InputError, NumericError
from .pose import require_unit
from .quat import Quaternion, as_vector3

# Finite-difference derivatives are expected as inputs, so the tangency test
# is looser than the unit-pose tolerance.
TANGENT_TOLERANCE = 1e-6


def _frozen_vector(v) -> np.ndarray:
    arr = as_vector3(v).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Twist:
    """Body-frame velocity pair: angular w (rad/s) and linear v (m/s)."""

    w: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", _frozen_vector(self.w))
        object.__setattr__(self, "v", _frozen_vector(self.v))

    @classmethod
    def zero(cls) -> "Twist":
        return cls(np.zeros(3), np.zeros(3))

    @classmethod
    def from_dual_quaternion(cls, phi: DualQuaternion) -> "Twist":
        if not phi.is_vector():
            raise DomainError("a twist must be a vector dual quaternion")
        return cls(2.0 * phi.real.vector, 2.0 * phi.dual.vector)

    def as_dual_quaternion(self) -> DualQuaternion:
        return DualQuaternion(
            Quaternion.from_vector(0.5 * self.w),
            Quaternion.from_vector(0.5 * self.v),
        )


@dataclass(frozen=True)
class Wrench:
    """Torque/force pair applied at the origin of the moving frame."""

    torque: np.ndarray
    force: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "torque", _frozen_vector(self.torque))
        object.__setattr__(self, "force", _frozen_vector(self.force))

    @classmethod
    def from_dual_quaternion(cls, tau: DualQuaternion) -> "Wrench":
        if not tau.is_vector():
            raise DomainError("a wrench must be a vector dual quaternion")
        return cls(0.5 * tau.real.vector, 0.5 * tau.dual.vector)

    def as_dual_quaternion(self) -> DualQuaternion:
        return DualQuaternion(
            Quaternion.from_vector(2.0 * self.torque),
            Quaternion.from_vector(2.0 * self.force),
        )


def _twist_from_product(product: DualQuaternion, tol: float) -> Twist:
    if abs(product.real.w) > tol or abs(product.dual.w) > tol:
        raise DomainError(
            "pose derivative is not tangent: eta^-1 eta_dot has scalar parts "
            f"({product.real.w:.3e}, {product.dual.w:.3e})"
        )
    return Twist(2.0 * product.real.vector, 2.0 * product.dual.vector)


def body_twist(eta: DualQuaternion, eta_dot: DualQuaternion,
               tol: float = TANGENT_TOLERANCE) -> Twist:
    """Body-frame twist eta^-1 eta_dot of a unit pose and its derivative."""
    require_unit(eta)
    return _twist_from_product(eta.conjugate() * eta_dot, tol)


def spatial_twist(eta: DualQuaternion, eta_dot: DualQuaternion,
                  tol: float = TANGENT_TOLERANCE) -> Twist:
    """Fixed-frame twist eta_dot eta^-1."""
    require_unit(eta)
    return _twist_from_product(eta_dot * eta.conjugate(), tol)


def pose_derivative(eta: DualQuaternion, twist: Twist) -> DualQuaternion:
    """eta_dot = eta * phi for a body-frame twist."""
    require_unit(eta)
    return eta * twist.as_dual_quaternion()


TwistFunction = Union[Twist, Callable[[float], Twist]]


def integrate_twist(eta0: DualQuaternion, twist: TwistFunction,
                    t_span: tuple[float, float], dt: float,
                    ) -> tuple[np.ndarray, list[DualQuaternion]]:
    """Integrate eta_dot = eta * phi(t) with RK4, renormalizing every step.

    Normalization is the projection back onto the unit dual quaternions, so
    the trajectory cannot drift off the pose manifold.  Returns the sampled
    times (t0, t0+dt, ..., t1) and the pose at each of them; the final step
    is shortened to land on t1 exactly.
    """
    require_unit(eta0, "initial pose")
    if not dt > 0.0:
        raise InputError(f"dt must be positive, got {dt}")
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 >= t0:
        raise InputError(f"t_span must be increasing, got {t_span}")

    if isinstance(twist, Twist):
        constant = twist.as_dual_quaternion()
        phi = lambda _t: constant  # noqa: E731
    else:
        phi = lambda t: twist(t).as_dual_quaternion()  # noqa: E731

    times = [t0]
    poses = [eta0]
    eta = eta0
    t = t0
    while t < t1 - 1e-12 * max(1.0, abs(t1)):
        h = min(dt, t1 - t)
        k1 = eta * phi(t)
        k2 = (eta + k1 * (0.5 * h)) * phi(t + 0.5 * h)
        k3 = (eta + k2 * (0.5 * h)) * phi(t + 0.5 * h)
        k4 = (eta + k3 * h) * phi(t + h)
        eta = (eta + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)).normalized()
        if not np.all(np.isfinite(eta.as_array())):
            raise NumericError(f"integration diverged at t = {t + h}")
        t = t + h
        times.append(t)
        poses.append(eta)
    return np.array(times), poses


def twist_about_com(twist: Twist, com) -> Twist:
    """Shift a twist to the center of mass at ``com`` (moving frame).

    The angular part is unchanged; the linear part gains w x r0.
    """
    r0 = as_vector3(com)
    return Twist(twist.w, twist.v + np.cross(twist.w, r0))


def wrench_about_com(wrench: Wrench, com) -> Wrench:
    """Shift a wrench to the center of mass: torque gains p x r0, force unchanged."""
    r0 = as_vector3(com)
    return Wrench(wrench.torque + np.cross(wrench.force, r0), wrench.force)


def work_rate(wrench: Wrench, twist: Twist) -> float:
    """Rate of work done: q.w + p.v, invariant under a common com shift."""
    return float(wrench.torque @ twist.w + wrench.force @ twist.v)


def hodge_star(w) -> np.ndarray:
    """Antisymmetric matrix with hodge_star(w) @ r = w x r."""
    v = as_vector3(w)
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def angular_velocity_from_rotation(r, r_dot, tol: float = TANGENT_TOLERANCE) -> np.ndarray:
    """Angular velocity w of a rotation trajectory, from R^-1 R_dot.

    R must be orthogonal with determinant 1; the product R^-1 R_dot must be
    antisymmetric within ``tol`` or the derivative is rejected.
    """
    rm = np.asarray(r, dtype=float)
    omega = rm.T @ np.asarray(r_dot, dtype=float)
    if np.max(np.abs(omega + omega.T)) / 2.0 > tol:
        raise DomainError("R^-1 R_dot is not antisymmetric; derivative is not tangent")
    return np.array([
        (omega[2, 1] - omega[1, 2]) / 2.0,
        (omega[0, 2] - omega[2, 0]) / 2.0,
        (omega[1, 0] - omega[0, 1]) / 2.0,
    ])
