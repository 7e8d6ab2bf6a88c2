"""Serial-chain forward kinematics and Newton-style inverse kinematics.

A chain is base * exp(q1*theta1) * ... * exp(qn*thetan) * tool, with every
joint a unit-speed screw expressed in the chain's zero-configuration frame.
The IK residual is the Lie difference between the current and target poses,
a 6-vector that linearizes pose error into a body twist; steps are damped
least squares, so singular configurations slow convergence instead of
crashing it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import screw
from .dual import DualQuaternion
from .errors import ConvergenceError, InputError
from .pose import lie_difference, require_unit
from .quat import UNIT_TOLERANCE, Quaternion, as_vector3


def _frozen(v) -> np.ndarray:
    arr = as_vector3(v).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class JointAxis:
    """Unit-speed joint screw (w, v) in the zero-configuration frame.

    Revolute joints need |w| = 1; v carries the axis offset (p x w for an
    axis through point p) and any pitch.  Prismatic joints need w = 0 and
    |v| = 1.
    """

    kind: str
    w: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", _frozen(self.w))
        object.__setattr__(self, "v", _frozen(self.v))
        if self.kind == "revolute":
            if abs(np.linalg.norm(self.w) - 1.0) > UNIT_TOLERANCE:
                raise InputError("revolute joint needs a unit angular axis")
        elif self.kind == "prismatic":
            if np.max(np.abs(self.w)) > UNIT_TOLERANCE:
                raise InputError("prismatic joint must have zero angular part")
            if abs(np.linalg.norm(self.v) - 1.0) > UNIT_TOLERANCE:
                raise InputError("prismatic joint needs a unit direction")
        else:
            raise InputError(f"unknown joint kind {self.kind!r}")

    @classmethod
    def revolute(cls, axis, point=(0.0, 0.0, 0.0), pitch: float = 0.0) -> "JointAxis":
        """Rotation about ``axis`` through ``point``, with optional pitch (m/rad)."""
        a = as_vector3(axis)
        p = as_vector3(point)
        return cls("revolute", a, np.cross(p, a) + float(pitch) * a)

    @classmethod
    def prismatic(cls, direction) -> "JointAxis":
        return cls("prismatic", np.zeros(3), as_vector3(direction))

    def screw_dq(self) -> DualQuaternion:
        return DualQuaternion(
            Quaternion.from_vector(0.5 * self.w),
            Quaternion.from_vector(0.5 * self.v),
        )


@dataclass(frozen=True)
class SerialChain:
    base: DualQuaternion
    joints: tuple[JointAxis, ...]
    tool: DualQuaternion

    def __post_init__(self):
        object.__setattr__(self, "joints", tuple(self.joints))
        if not self.joints:
            raise InputError("a chain needs at least one joint")
        require_unit(self.base, "base pose")
        require_unit(self.tool, "tool pose")

    def __len__(self) -> int:
        return len(self.joints)


@dataclass(frozen=True)
class IKResult:
    joint_values: np.ndarray
    iterations: int
    residual: float


def _check_values(chain: SerialChain, values) -> np.ndarray:
    q = np.asarray(values, dtype=float)
    if q.shape != (len(chain),):
        raise InputError(f"expected {len(chain)} joint values, got shape {q.shape}")
    return q


def forward(chain: SerialChain, values) -> DualQuaternion:
    """Tool pose at the given joint values; renormalized once to shed drift."""
    q = _check_values(chain, values)
    eta = chain.base
    for joint, qi in zip(chain.joints, q):
        eta = eta * screw.exp(joint.screw_dq() * float(qi))
    return (eta * chain.tool).normalized()


def jacobian(chain: SerialChain, values) -> np.ndarray:
    """Body-frame Jacobian: column i is the twist (w, v) of eta^-1 d(eta)/dq_i.

    Column i equals the joint screw conjugated into the tool frame by the
    suffix S_i = exp(q_i theta_i) ... exp(q_n theta_n) * tool.
    """
    q = _check_values(chain, values)
    n = len(chain)
    cols = np.empty((6, n))
    suffix = chain.tool
    for i in range(n - 1, -1, -1):
        theta = chain.joints[i].screw_dq()
        suffix = screw.exp(theta * float(q[i])) * suffix
        phi = suffix.conjugate() * theta * suffix
        cols[:3, i] = 2.0 * phi.real.vector
        cols[3:, i] = 2.0 * phi.dual.vector
    return cols


def _residual(chain: SerialChain, values: np.ndarray, target: DualQuaternion) -> np.ndarray:
    eta = forward(chain, values)
    # The two double-cover representatives are the same pose; align signs so
    # the residual stays consistent with the Jacobian.
    if eta.dot(target) < 0.0:
        eta = -eta
    theta = lie_difference(eta, target)
    return np.concatenate([2.0 * theta.real.vector, 2.0 * theta.dual.vector])


def solve_ik(chain: SerialChain, target: DualQuaternion, initial_guess,
             tol: float = 1e-10, max_iter: int = 50,
             damping: float = 1e-6) -> IKResult:
    """Damped least-squares IK driving the Lie-difference residual to zero.

    Deterministic given its inputs; step halving keeps the residual norm
    non-increasing.  Raises ConvergenceError (carrying the best iterate)
    when max_iter steps are not enough.
    """
    require_unit(target, "target pose")
    if not tol > 0.0:
        raise InputError(f"tolerance must be positive, got {tol}")
    q = _check_values(chain, initial_guess).copy()

    r = _residual(chain, q, target)
    r_norm = float(np.linalg.norm(r))
    best_q, best_norm = q.copy(), r_norm
    if r_norm <= tol:
        return IKResult(q, 0, r_norm)

    for iteration in range(1, max_iter + 1):
        j = jacobian(chain, q)
        step = np.linalg.solve(j.T @ j + damping * np.eye(len(chain)), -j.T @ r)
        scale = 1.0
        while scale > 1.0 / 1024.0:
            r_next = _residual(chain, q + scale * step, target)
            if np.linalg.norm(r_next) < r_norm:
                break
            scale *= 0.5
        q = q + scale * step
        r = _residual(chain, q, target)
        r_norm = float(np.linalg.norm(r))
        if r_norm < best_norm:
            best_q, best_norm = q.copy(), r_norm
        if r_norm <= tol:
            return IKResult(q, iteration, r_norm)

    raise ConvergenceError(
        f"IK did not reach {tol} in {max_iter} iterations (best residual {best_norm:.3e})",
        best_values=best_q, iterations=max_iter, residual=best_norm,
    )
