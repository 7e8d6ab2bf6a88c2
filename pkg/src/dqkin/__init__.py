"""Dual-quaternion rigid-motion kinematics.

Poses are unit dual quaternions, twists and wrenches are vector dual
quaternions, and everything composes through one bilinear product.  The
submodules:

- :mod:`dqkin.quat`       quaternion algebra and rotations
- :mod:`dqkin.dual`       dual numbers / dual quaternions, norm, normalization
- :mod:`dqkin.pose`       rigid motions: compose, act, matrix and (q, t) forms
- :mod:`dqkin.kinematics` twists, wrenches, work rate, twist integration
- :mod:`dqkin.screw`      screw exp/log, decomposition, slerp
- :mod:`dqkin.interp`     low-jerk spline trajectories through timed knots
- :mod:`dqkin.solver`     serial-chain forward/inverse kinematics
- :mod:`dqkin.matrix_oracle`  independent 4x4-matrix oracle used by the tests
- :mod:`dqkin.service`    FastAPI wrapper; :mod:`dqkin.cli` batch client
"""

from .dual import DualNumber, DualQuaternion
from .errors import (
    ConvergenceError,
    DomainError,
    InputError,
    KinematicsError,
    NumericError,
)
from .interp import KnotSequence, PoseTrajectory
from .kinematics import Twist, Wrench
from .quat import Quaternion
from .screw import ScrewDecomposition
from .solver import IKResult, JointAxis, SerialChain

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "DualNumber",
    "DualQuaternion",
    "IKResult",
    "InputError",
    "JointAxis",
    "KinematicsError",
    "KnotSequence",
    "NumericError",
    "PoseTrajectory",
    "Quaternion",
    "ScrewDecomposition",
    "SerialChain",
    "Twist",
    "Wrench",
    "__version__",
]
