"""Wire formats: JSON object forms, knot/sample CSV, and float formatting.

All text output goes through :func:`format_float` (17 significant digits),
which round-trips doubles exactly, so identical inputs always produce
byte-identical files.

Object forms:
  quaternion      [w, x, y, z]
  dual quaternion [qw, qx, qy, qz, bw, bx, by, bz]
  pose            {"dq": [8]} | {"q": [4], "t": [3]} | {"matrix": [[4x4]]}
                  (all accepted on input; "dq" is the canonical output)
  twist           {"w": [3], "v": [3]}      (physical units, not the
  wrench          {"q": [3], "p": [3]}       half/double-scaled encoding)
  knots           {"knots": [{"t": s, "pose": {...}}, ...]}
  chain           {"base": pose, "tool": pose,
                   "joints": [{"kind": "revolute", "screw": twist}, ...]}
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .dual import DualQuaternion
from .errors import DomainError, InputError
from .interp import KnotSequence
from .kinematics import Twist, Wrench
from .pose import from_matrix, from_qt, to_matrix, to_qt
from .quat import Quaternion
from .solver import JointAxis, SerialChain

KNOT_CSV_COLUMNS = ("t", "qw", "qx", "qy", "qz", "bw", "bx", "by", "bz")
SAMPLE_CSV_COLUMNS = KNOT_CSV_COLUMNS + ("tx", "ty", "tz")


def format_float(x: float) -> str:
    """Fixed 17-significant-digit form; parses back to the identical double."""
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """JSON text with every float written via :func:`format_float`."""
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if obj is None:
        return "null"
    return json.dumps(obj)


def _floats(values, count: int, what: str) -> list[float]:
    try:
        out = [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be a list of numbers") from exc
    if len(out) != count:
        raise InputError(f"{what} must have {count} entries, got {len(out)}")
    return out


# -- poses -----------------------------------------------------------------

def pose_to_obj(eta: DualQuaternion) -> dict:
    return {"dq": [float(c) for c in eta.as_array()]}


def pose_to_qt_obj(eta: DualQuaternion) -> dict:
    q, t = to_qt(eta)
    return {"q": [float(c) for c in q.as_array()], "t": [float(c) for c in t]}


def pose_to_matrix_obj(eta: DualQuaternion) -> dict:
    return {"matrix": [[float(c) for c in row] for row in to_matrix(eta)]}


def pose_from_obj(obj) -> DualQuaternion:
    """Parse any accepted pose form; the result must be a unit dual quaternion."""
    if not isinstance(obj, dict):
        raise InputError("pose must be a JSON object")
    try:
        if "dq" in obj:
            eta = DualQuaternion.from_array(_floats(obj["dq"], 8, "pose 'dq'"))
        elif "q" in obj and "t" in obj:
            q = Quaternion.from_array(_floats(obj["q"], 4, "pose 'q'"))
            eta = from_qt(q, _floats(obj["t"], 3, "pose 't'"))
        elif "matrix" in obj:
            eta = from_matrix(np.asarray(obj["matrix"], dtype=float))
        else:
            raise InputError("pose needs 'dq', 'q'+'t', or 'matrix'")
    except DomainError as exc:
        raise InputError(f"invalid pose: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"invalid pose: {exc}") from exc
    if not eta.is_unit():
        raise InputError("pose is not a unit dual quaternion")
    return eta


# -- twists and wrenches -----------------------------------------------------

def twist_to_obj(twist: Twist) -> dict:
    return {"w": [float(c) for c in twist.w], "v": [float(c) for c in twist.v]}


def twist_from_obj(obj) -> Twist:
    if not isinstance(obj, dict) or "w" not in obj or "v" not in obj:
        raise InputError("twist/screw needs 'w' and 'v' 3-vectors")
    return Twist(_floats(obj["w"], 3, "'w'"), _floats(obj["v"], 3, "'v'"))


def wrench_to_obj(wrench: Wrench) -> dict:
    return {"q": [float(c) for c in wrench.torque], "p": [float(c) for c in wrench.force]}


def wrench_from_obj(obj) -> Wrench:
    if not isinstance(obj, dict) or "q" not in obj or "p" not in obj:
        raise InputError("wrench needs 'q' and 'p' 3-vectors")
    return Wrench(_floats(obj["q"], 3, "'q'"), _floats(obj["p"], 3, "'p'"))


# -- knots and samples -------------------------------------------------------

def knots_from_obj(obj) -> KnotSequence:
    if not isinstance(obj, dict) or "knots" not in obj:
        raise InputError("knot file needs a top-level 'knots' list")
    entries = obj["knots"]
    if not isinstance(entries, list):
        raise InputError("'knots' must be a list")
    times, poses = [], []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "t" not in entry or "pose" not in entry:
            raise InputError(f"knot {i} needs 't' and 'pose'")
        try:
            times.append(float(entry["t"]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"knot {i} time must be a number") from exc
        poses.append(pose_from_obj(entry["pose"]))
    return KnotSequence(np.array(times), tuple(poses))


def knots_csv_to_obj(text: str) -> dict:
    """Parse the CSV knot form (t, qw..bz columns) into the JSON object form."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise InputError("empty knot CSV")
    header = tuple(name.strip() for name in lines[0].split(","))
    if header != KNOT_CSV_COLUMNS:
        raise InputError(f"knot CSV header must be {','.join(KNOT_CSV_COLUMNS)}")
    knots = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != len(KNOT_CSV_COLUMNS):
            raise InputError(f"knot CSV line {lineno} has {len(fields)} fields")
        try:
            values = [float(f) for f in fields]
        except ValueError as exc:
            raise InputError(f"knot CSV line {lineno}: {exc}") from exc
        knots.append({"t": values[0], "pose": {"dq": values[1:]}})
    return {"knots": knots}


def samples_to_csv(samples: Sequence[dict]) -> str:
    """CSV text for sampled trajectory rows {"t", "dq", "translation"}."""
    lines = [",".join(SAMPLE_CSV_COLUMNS)]
    for s in samples:
        row = [s["t"], *s["dq"], *s["translation"]]
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


# -- chains ------------------------------------------------------------------

def chain_from_obj(obj) -> SerialChain:
    if not isinstance(obj, dict):
        raise InputError("chain must be a JSON object")
    for key in ("base", "tool", "joints"):
        if key not in obj:
            raise InputError(f"chain needs '{key}'")
    if not isinstance(obj["joints"], list) or not obj["joints"]:
        raise InputError("'joints' must be a non-empty list")
    joints = []
    for i, joint in enumerate(obj["joints"]):
        if not isinstance(joint, dict) or "kind" not in joint or "screw" not in joint:
            raise InputError(f"joint {i} needs 'kind' and 'screw'")
        s = twist_from_obj(joint["screw"])
        joints.append(JointAxis(str(joint["kind"]), s.w, s.v))
    return SerialChain(pose_from_obj(obj["base"]), tuple(joints), pose_from_obj(obj["tool"]))


def chain_to_obj(chain: SerialChain) -> dict:
    return {
        "base": pose_to_obj(chain.base),
        "tool": pose_to_obj(chain.tool),
        "joints": [
            {"kind": j.kind, "screw": {"w": [float(c) for c in j.w], "v": [float(c) for c in j.v]}}
            for j in chain.joints
        ],
    }
