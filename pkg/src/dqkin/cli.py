"""Batch command-line client for the kinematics service.

Each subcommand marshals files into one service request and formats the
response; no math happens here.  By default the service runs in-process, so
no server is needed; pass --server to talk to a running instance instead.

Exit codes: 0 success, 2 bad input, 3 numeric failure, 4 no convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .serialization import dumps, format_float, knots_csv_to_obj, samples_to_csv

_EXIT_BY_KIND = {"input": 2, "domain": 3, "numeric": 3, "convergence": 4}


class CommandError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class ServiceClient:
    """Thin wrapper over the HTTP API, in-process unless --server is given."""

    def __init__(self, server: str | None = None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=120.0)
        else:
            from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code == 200:
            return response.json()
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        if isinstance(detail, dict):
            kind = detail.get("kind", "input")
            raise CommandError(detail.get("message", str(detail)), _EXIT_BY_KIND.get(kind, 2))
        # pydantic validation errors arrive as a list of issues
        raise CommandError(f"invalid request: {detail}", 2)


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}", 2) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path} is not valid JSON: {exc}", 2) from exc


def _read_knots(path: str) -> dict:
    if path.endswith(".csv"):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc}", 2) from exc
        from .errors import InputError

        try:
            return knots_csv_to_obj(text)
        except InputError as exc:
            raise CommandError(str(exc), 2) from exc
    return _read_json(path)


def _parse_values(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise CommandError(f"{what} must be comma-separated numbers: {exc}", 2) from exc


def _write_output(text: str, output: str | None) -> None:
    # Written only after the computation succeeded, so failures leave no file.
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_interp(client: ServiceClient, args) -> int:
    payload = dict(_read_knots(args.knots))
    payload.update(split=args.split, ramped=args.ramped)
    if args.dt is not None:
        payload["dt"] = args.dt
    else:
        payload["samples"] = args.samples
    response = client.post("/interp", payload)
    _write_output(samples_to_csv(response["samples"]), args.output)
    return 0


def _cmd_slerp(client: ServiceClient, args) -> int:
    payload = {
        "pose1": _read_json(args.pose1),
        "pose2": _read_json(args.pose2),
        "samples": args.samples,
        "shortest": args.shortest,
    }
    response = client.post("/slerp", payload)
    _write_output(samples_to_csv(response["samples"]), args.output)
    return 0


def _cmd_exp(client: ServiceClient, args) -> int:
    response = client.post("/screw/exp", {"screw": _read_json(args.screw)})
    _write_output(dumps(response) + "\n", args.output)
    return 0


def _cmd_log(client: ServiceClient, args) -> int:
    response = client.post("/screw/log", {"pose": _read_json(args.pose)})
    _write_output(dumps(response["screw"]) + "\n", args.output)
    return 0


def _cmd_fk(client: ServiceClient, args) -> int:
    payload = {"chain": _read_json(args.chain), "joint_values": _parse_values(args.values, "--values")}
    response = client.post("/chain/fk", payload)
    _write_output(dumps(response) + "\n", args.output)
    return 0


def _cmd_ik(client: ServiceClient, args) -> int:
    payload = {
        "chain": _read_json(args.chain),
        "target": _read_json(args.target),
        "tolerance": args.tol,
        "max_iterations": args.max_iter,
        "damping": args.damping,
    }
    if args.initial is not None:
        payload["initial_guess"] = _parse_values(args.initial, "--initial")
    response = client.post("/chain/ik", payload)
    print(f"iterations={response['iterations']} "
          f"residual={format_float(response['residual'])}", file=sys.stderr)
    _write_output(dumps(response) + "\n", args.output)
    return 0


def _cmd_convert(client: ServiceClient, args) -> int:
    response = client.post("/pose/convert", {"pose": _read_json(args.pose), "to": args.to})
    _write_output(dumps(response) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqkin",
        description="Dual-quaternion kinematics: trajectory interpolation, slerp, "
                    "screw exp/log, forward/inverse kinematics, pose conversion.",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interp", help="sample a spline trajectory through timed pose knots")
    p.add_argument("knots", help="knot file (.json or .csv)")
    density = p.add_mutually_exclusive_group()
    density.add_argument("--samples", type=int, default=11, metavar="N",
                         help="number of samples (default 11)")
    density.add_argument("--dt", type=float, default=None, metavar="S",
                         help="sample spacing in seconds")
    p.add_argument("--split", action="store_true",
                   help="interpolate rotation and translation separately")
    p.add_argument("--ramped", action="store_true",
                   help="hold the end poses outside [t0, tn] with low-jerk ramps")
    p.add_argument("--output", metavar="PATH", help="output CSV path (default stdout)")
    p.set_defaults(handler=_cmd_interp)

    p = sub.add_parser("slerp", help="constant-twist interpolation between two poses")
    p.add_argument("pose1")
    p.add_argument("pose2")
    p.add_argument("--samples", type=int, default=11, metavar="N")
    p.add_argument("--shortest", action="store_true",
                   help="flip signs first so the rotation takes the short way")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_slerp)

    p = sub.add_parser("exp", help="pose reached by a constant screw {w, v} after unit time")
    p.add_argument("screw", help="JSON file with 'w' and 'v' 3-vectors")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_exp)

    p = sub.add_parser("log", help="principal screw {w, v} of a pose")
    p.add_argument("pose", help="pose JSON file")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_log)

    p = sub.add_parser("fk", help="forward kinematics of a serial chain")
    p.add_argument("chain", help="chain JSON file")
    p.add_argument("--values", required=True, metavar="Q1,Q2,...",
                   help="joint values, comma separated")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_fk)

    p = sub.add_parser("ik", help="inverse kinematics toward a target pose")
    p.add_argument("chain", help="chain JSON file")
    p.add_argument("target", help="target pose JSON file")
    p.add_argument("--initial", metavar="Q1,Q2,...", default=None,
                   help="initial joint values (default zeros)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="residual tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--damping", type=float, default=1e-6,
                   help="least-squares damping (default 1e-6)")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_ik)

    p = sub.add_parser("convert", help="convert a pose between dq, (q, t) and matrix forms")
    p.add_argument("pose", help="pose JSON file")
    p.add_argument("--to", choices=("dq", "qt", "matrix"), default="dq")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_convert)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        client = ServiceClient(args.server)
        return args.handler(client, args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
