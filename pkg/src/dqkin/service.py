"""HTTP service exposing the kinematics library.

Request/response bodies are pydantic models over the same JSON forms the
files use (see :mod:`dqkin.serialization`).  Library errors map to a
structured payload {"detail": {"kind": ..., "message": ...}} with kind one
of "input", "domain", "numeric" or "convergence"; clients key off the kind.

Run it with ``uvicorn dqkin.service:app``.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from . import screw, serialization, solver
from .errors import ConvergenceError, DomainError, InputError, KinematicsError, NumericError
from .interp import build_trajectory
from .kinematics import Twist
from .pose import to_qt


# -- request/response models -------------------------------------------------

class PoseModel(BaseModel):
    dq: Optional[list[float]] = None
    q: Optional[list[float]] = None
    t: Optional[list[float]] = None
    matrix: Optional[list[list[float]]] = None

    def to_pose(self):
        return serialization.pose_from_obj(self.model_dump(exclude_none=True))


class ScrewModel(BaseModel):
    w: list[float]
    v: list[float]


class PoseOut(BaseModel):
    dq: list[float]


class ConvertRequest(BaseModel):
    pose: PoseModel
    to: Literal["dq", "qt", "matrix"] = "dq"


class ExpRequest(BaseModel):
    screw: ScrewModel


class LogRequest(BaseModel):
    pose: PoseModel


class ScrewResponse(BaseModel):
    screw: ScrewModel


class SampleOut(BaseModel):
    t: float
    dq: list[float]
    translation: list[float]


class SamplesResponse(BaseModel):
    samples: list[SampleOut]


class SlerpRequest(BaseModel):
    pose1: PoseModel
    pose2: PoseModel
    samples: int = Field(default=11, ge=2)
    shortest: bool = False


class KnotModel(BaseModel):
    t: float
    pose: PoseModel


class InterpRequest(BaseModel):
    knots: list[KnotModel]
    samples: Optional[int] = Field(default=None, ge=2)
    dt: Optional[float] = Field(default=None, gt=0.0)
    split: bool = False
    ramped: bool = False
    t_min: Optional[float] = None
    t_max: Optional[float] = None

    @model_validator(mode="after")
    def _one_density(self):
        if self.samples is not None and self.dt is not None:
            raise ValueError("give either 'samples' or 'dt', not both")
        return self


class JointModel(BaseModel):
    kind: Literal["revolute", "prismatic"]
    screw: ScrewModel


class ChainModel(BaseModel):
    base: PoseModel
    tool: PoseModel
    joints: list[JointModel]

    def to_chain(self) -> solver.SerialChain:
        return serialization.chain_from_obj(self.model_dump(exclude_none=True))


class FkRequest(BaseModel):
    chain: ChainModel
    joint_values: list[float]


class IkRequest(BaseModel):
    chain: ChainModel
    target: PoseModel
    initial_guess: Optional[list[float]] = None
    tolerance: float = Field(default=1e-10, gt=0.0)
    max_iterations: int = Field(default=50, ge=1)
    damping: float = Field(default=1e-6, ge=0.0)


class IkResponse(BaseModel):
    joint_values: list[float]
    iterations: int
    residual: float


# -- helpers -----------------------------------------------------------------

def _sample_obj(t: float, eta) -> dict:
    _, translation = to_qt(eta)
    return {
        "t": float(t),
        "dq": [float(c) for c in eta.as_array()],
        "translation": [float(c) for c in translation],
    }


def _sample_times(lo: float, hi: float, samples: Optional[int], dt: Optional[float]) -> np.ndarray:
    if dt is not None:
        n = int(np.floor((hi - lo) / dt * (1.0 + 1e-12)))
        return lo + dt * np.arange(n + 1)
    return np.linspace(lo, hi, samples if samples is not None else 11)


def _error_kind(exc: KinematicsError) -> str:
    if isinstance(exc, ConvergenceError):
        return "convergence"
    if isinstance(exc, NumericError):
        return "numeric"
    if isinstance(exc, DomainError):
        return "domain"
    return "input"


def create_app() -> FastAPI:
    app = FastAPI(title="dqkin", description="Dual-quaternion kinematics service")

    @app.exception_handler(KinematicsError)
    def _kinematics_error(request, exc: KinematicsError):
        kind = _error_kind(exc)
        detail = {"kind": kind, "message": str(exc)}
        if isinstance(exc, ConvergenceError):
            detail["iterations"] = exc.iterations
            detail["residual"] = exc.residual
            if exc.best_values is not None:
                detail["best_joint_values"] = [float(x) for x in exc.best_values]
        return JSONResponse(status_code=400 if kind == "input" else 422,
                            content={"detail": detail})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/pose/convert")
    def convert(req: ConvertRequest):
        eta = req.pose.to_pose()
        if req.to == "qt":
            return serialization.pose_to_qt_obj(eta)
        if req.to == "matrix":
            return serialization.pose_to_matrix_obj(eta)
        return serialization.pose_to_obj(eta)

    @app.post("/screw/exp", response_model=PoseOut)
    def screw_exp(req: ExpRequest):
        theta = Twist(req.screw.w, req.screw.v).as_dual_quaternion()
        return serialization.pose_to_obj(screw.exp(theta))

    @app.post("/screw/log", response_model=ScrewResponse)
    def screw_log(req: LogRequest):
        theta = screw.log(req.pose.to_pose())
        return {"screw": serialization.twist_to_obj(Twist.from_dual_quaternion(theta))}

    @app.post("/slerp", response_model=SamplesResponse)
    def slerp(req: SlerpRequest):
        eta1, eta2 = req.pose1.to_pose(), req.pose2.to_pose()
        if req.shortest:
            eta1, eta2 = screw.shortest_path(eta1, eta2)
        fractions = np.linspace(0.0, 1.0, req.samples)
        return {"samples": [_sample_obj(u, screw.slerp(eta1, eta2, u)) for u in fractions]}

    @app.post("/interp", response_model=SamplesResponse)
    def interp(req: InterpRequest):
        knots = serialization.knots_from_obj(
            {"knots": [k.model_dump(exclude_none=True) for k in req.knots]})
        trajectory = build_trajectory(knots, split=req.split, ramped=req.ramped)
        times = knots.times
        if req.ramped:
            # Default window shows the frozen stretches on both sides.
            lo = times[0] - (times[1] - times[0])
            hi = times[-1] + (times[-1] - times[-2])
        else:
            lo, hi = times[0], times[-1]
        lo = lo if req.t_min is None else req.t_min
        hi = hi if req.t_max is None else req.t_max
        if not hi > lo:
            raise InputError(f"empty sampling window [{lo}, {hi}]")
        sample_times = _sample_times(float(lo), float(hi), req.samples, req.dt)
        return {"samples": [_sample_obj(t, trajectory(t)) for t in sample_times]}

    @app.post("/chain/fk", response_model=PoseOut)
    def chain_fk(req: FkRequest):
        return serialization.pose_to_obj(solver.forward(req.chain.to_chain(), req.joint_values))

    @app.post("/chain/ik", response_model=IkResponse)
    def chain_ik(req: IkRequest):
        chain = req.chain.to_chain()
        guess = req.initial_guess if req.initial_guess is not None else [0.0] * len(chain)
        result = solver.solve_ik(chain, req.target.to_pose(), guess,
                                 tol=req.tolerance, max_iter=req.max_iterations,
                                 damping=req.damping)
        return {
            "joint_values": [float(x) for x in result.joint_values],
            "iterations": result.iterations,
            "residual": result.residual,
        }

    return app


app = create_app()
