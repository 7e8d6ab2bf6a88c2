"""Low-jerk pose trajectories through timed knots.

The knot poses are treated as points of R^8, interpolated with a natural
("free") cubic spline gamma(t) and normalized back onto the pose manifold:
eta(t) = normalized(gamma(t)).  Consecutive knots are sign-flipped first so
the spline never has to cross between antipodal representatives.

Variants: a split interpolation that splines the rotation quaternion (R^4)
and the translation (R^3) separately, so straight-line motions stay straight,
and a ramped reparameterization eta(s(t)) that freezes the trajectory outside
[t0, tn] while keeping the third derivative bounded at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .dual import DualQuaternion
from .errors import InputError, NumericError
from .pose import from_qt, to_qt
from .quat import Quaternion

# |Q(t)| below this counts as the spline passing through quaternion zero.
_ZERO_TOLERANCE = 1e-9


@dataclass(frozen=True)
class KnotSequence:
    """Strictly increasing times paired with unit poses (at least two)."""

    times: np.ndarray
    poses: tuple[DualQuaternion, ...]

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).copy()
        times.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "poses", tuple(self.poses))
        if times.ndim != 1 or len(times) < 2:
            raise InputError("need at least two knots")
        if len(times) != len(self.poses):
            raise InputError(f"{len(times)} times but {len(self.poses)} poses")
        if not np.all(np.diff(times) > 0.0):
            raise InputError("knot times must be strictly increasing")
        for i, eta in enumerate(self.poses):
            if not eta.is_unit():
                raise InputError(f"knot pose {i} is not a unit dual quaternion")

    def __len__(self) -> int:
        return len(self.poses)


class PoseTrajectory:
    """A lazily evaluated map from time to unit poses over a stated domain."""

    def __init__(self, fn: Callable[[float], DualQuaternion],
                 domain: tuple[float, float], kind: str = "interpolated"):
        self._fn = fn
        self.domain = (float(domain[0]), float(domain[1]))
        self.kind = kind

    def __call__(self, t: float) -> DualQuaternion:
        t = float(t)
        lo, hi = self.domain
        slack = 1e-9 * max(1.0, abs(lo), abs(hi))
        if t < lo - slack or t > hi + slack:
            raise InputError(f"time {t} outside trajectory domain [{lo}, {hi}]")
        return self._fn(min(max(t, lo), hi))

    def sample(self, times) -> list[DualQuaternion]:
        return [self(t) for t in np.asarray(times, dtype=float)]

    def translation(self, t: float) -> np.ndarray:
        return to_qt(self(t))[1]


def natural_cubic_spline(times, values) -> CubicSpline:
    """Natural (free) cubic spline through values at strictly increasing times.

    Second derivatives vanish at both ends; two knots degenerate to a line.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or len(t) < 2:
        raise InputError("need at least two knots")
    if not np.all(np.diff(t) > 0.0):
        raise InputError("knot times must be strictly increasing")
    return CubicSpline(t, np.asarray(values, dtype=float), axis=0, bc_type="natural")


def precondition_signs(rows: np.ndarray) -> np.ndarray:
    """Flip whole rows so consecutive rows have non-negative dot products.

    Each row holds the components of one knot (4 or 8); flipping a row keeps
    the represented rotation/pose unchanged but stops the interpolating curve
    from running between antipodal representatives.
    """
    out = np.array(rows, dtype=float)
    for i in range(1, len(out)):
        if out[i - 1] @ out[i] < 0.0:
            out[i] = -out[i]
    return out


def _pose_from_components(arr: np.ndarray) -> DualQuaternion:
    real = Quaternion.from_array(arr[:4])
    if real.norm() < _ZERO_TOLERANCE:
        raise NumericError("spline passes near quaternion zero; cannot normalize")
    return DualQuaternion(real, Quaternion.from_array(arr[4:])).normalized()


def _split_pose(q_spline: CubicSpline, t_spline: CubicSpline, t: float) -> DualQuaternion:
    q = Quaternion.from_array(q_spline(t))
    if q.norm() < _ZERO_TOLERANCE:
        raise NumericError("rotation spline passes near quaternion zero; cannot normalize")
    return from_qt(q.normalized(), t_spline(t))


def interpolate(knots: KnotSequence) -> PoseTrajectory:
    """Normalized cubic-spline interpolation of the 8 pose components.

    Reproduces every knot at its time (up to the double-cover sign) and is
    unit everywhere; fast and low-jerk but not constant-twist.
    """
    rows = precondition_signs(np.array([eta.as_array() for eta in knots.poses]))
    gamma = natural_cubic_spline(knots.times, rows)
    domain = (float(knots.times[0]), float(knots.times[-1]))
    return PoseTrajectory(lambda t: _pose_from_components(gamma(t)), domain)


def interpolate_split(knots: KnotSequence) -> PoseTrajectory:
    """Interpolate rotations (R^4, normalized) and translations (R^3) separately.

    A body whose frames translate along a straight line keeps a straight
    path even while rotating, which the combined 8-component spline does not
    guarantee.
    """
    qt = [to_qt(eta) for eta in knots.poses]
    q_rows = precondition_signs(np.array([q.as_array() for q, _ in qt]))
    t_rows = np.array([t for _, t in qt])
    q_spline = natural_cubic_spline(knots.times, q_rows)
    t_spline = natural_cubic_spline(knots.times, t_rows)
    domain = (float(knots.times[0]), float(knots.times[-1]))
    return PoseTrajectory(lambda t: _split_pose(q_spline, t_spline, t), domain, "split")


def ramp_f(u: float) -> float:
    """Ramp polynomial 1/2 + (2 - u) u^3 / 2.

    f(0) = 1/2, f(1) = f'(1) = 1 and f'(0) = f''(0) = f''(1) = 0, which is
    exactly what makes the reparameterization below C^2 with bounded jerk.
    """
    u = float(u)
    return 0.5 + 0.5 * (2.0 - u) * u ** 3


def ramp_s(t: float, times) -> float:
    """Reparameterized time: identity on [t1, t_{n-1}], ramps at the ends.

    Maps all of R into [ (t0+t1)/2, (t_{n-1}+tn)/2 ], holding constant before
    t0 and after tn, with s(tk) = tk for the interior knots.
    """
    times = np.asarray(times, dtype=float)
    if len(times) < 3:
        raise InputError("ramped time needs at least three knot times")
    t = float(t)
    t0, t1 = times[0], times[1]
    tn_prev, tn = times[-2], times[-1]
    if t < t0:
        return 0.5 * (t0 + t1)
    if t < t1:
        return t0 + (t1 - t0) * ramp_f((t - t0) / (t1 - t0))
    if t < tn_prev:
        return t
    if t < tn:
        return tn - (tn - tn_prev) * ramp_f((tn - t) / (tn - tn_prev))
    return 0.5 * (tn_prev + tn)


def interpolate_ramped(knots: KnotSequence, split: bool = False) -> PoseTrajectory:
    """Trajectory defined for all t, frozen outside [t0, tn], low jerk at the ends.

    The spline is built on the midpoint-shifted schedule
    (t0+t1)/2 < t1 < ... < t_{n-1} < (t_{n-1}+tn)/2 and evaluated at the
    ramped time s(t), so the end knots are reached exactly at t0 and tn and
    held beyond them.  Needs at least three knots; it is the caller's
    responsibility to leave t1 - t0 and tn - t_{n-1} long enough for the
    ramps to stay gentle.
    """
    if len(knots) < 3:
        raise InputError("ramped interpolation needs at least three knots")
    times = knots.times
    schedule = np.array(times)
    schedule[0] = 0.5 * (times[0] + times[1])
    schedule[-1] = 0.5 * (times[-2] + times[-1])

    if split:
        qt = [to_qt(eta) for eta in knots.poses]
        q_rows = precondition_signs(np.array([q.as_array() for q, _ in qt]))
        t_rows = np.array([t for _, t in qt])
        q_spline = natural_cubic_spline(schedule, q_rows)
        t_spline = natural_cubic_spline(schedule, t_rows)
        fn = lambda t: _split_pose(q_spline, t_spline, ramp_s(t, times))  # noqa: E731
    else:
        rows = precondition_signs(np.array([eta.as_array() for eta in knots.poses]))
        gamma = natural_cubic_spline(schedule, rows)
        fn = lambda t: _pose_from_components(gamma(ramp_s(t, times)))  # noqa: E731
    return PoseTrajectory(fn, (-np.inf, np.inf), "ramped")


def build_trajectory(knots: KnotSequence, split: bool = False,
                     ramped: bool = False) -> PoseTrajectory:
    """Dispatch on the two independent interpolation options."""
    if ramped:
        return interpolate_ramped(knots, split=split)
    return interpolate_split(knots) if split else interpolate(knots)
