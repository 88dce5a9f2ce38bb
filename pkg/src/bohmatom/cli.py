"""Command-line surface: state info, fields, rates, trajectories,
limit sweeps and the verification suite.

Angles are radians, lengths Bohr radii, rates radians per atomic time
unit (--si converts to rad/s).  Exit codes: 0 success, 1 domain/usage
errors (the violated invariant is named on stderr), 2 verification
failure.  Output is deterministic for a fixed seed; BOHMATOM_QUIET=1
suppresses progress chatter.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, report, states, trajectories
from . import verify as verify_mod
from .dynamics import RateSource
from .errors import BohmAtomError, DegenerateFit
from .params import ATOMIC_TIME_SI, ModelParams
from .report import FieldSlice
from .states import QuantumNumbers, SphericalPoint

_SOURCES = {s.value: s for s in RateSource}


@dataclass(frozen=True)
class RunSpec:
    """One fully-validated CLI invocation."""

    command: str
    qn: QuantumNumbers | None
    alpha: float
    fmt: str
    output: str | None
    figure: str | None
    seed: int
    si: bool
    params: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors on exit code 1 (2 is verification failure)."""

    def error(self, message):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: usage error: {message}\n")


def _parse_half(token: str) -> float:
    token = token.strip()
    if "/" in token:
        num, den = token.split("/", 1)
        return float(num) / float(den)
    return float(token)


def _resolve_state(args) -> QuantumNumbers:
    if getattr(args, "state", None):
        parts = [t for t in args.state.split(",") if t.strip()]
        if len(parts) != 4:
            raise BohmAtomError(
                "invariant violated: --state must be 'n,l,j,m' (4 comma-separated values)"
            )
        n, l = int(parts[0]), int(parts[1])
        j, m = _parse_half(parts[2]), _parse_half(parts[3])
        return states.validate_qn(n, l, j, m)
    if args.n is None or args.l is None or args.j is None or args.m is None:
        raise BohmAtomError(
            "invariant violated: a state is required (--state n,l,j,m or --n/--l/--j/--m)"
        )
    return states.validate_qn(args.n, args.l, _parse_half(args.j), _parse_half(args.m))


def _point(args) -> SphericalPoint:
    return SphericalPoint(r=args.r, theta=args.theta, phi=getattr(args, "phi", 0.0) or 0.0)


def _add_state_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", help="quantum numbers as 'n,l,j,m' (j, m accept 3/2 style)")
    p.add_argument("--n", type=int, help="principal quantum number")
    p.add_argument("--l", type=int, help="orbital quantum number")
    p.add_argument("--j", help="total angular momentum (half-integer)")
    p.add_argument("--m", help="M_z eigenvalue (half-integer)")


def _add_common_opts(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--alpha", type=float, default=None, help="fine-structure constant override")
    p.add_argument("--format", choices=formats, default=formats[0], dest="fmt")
    p.add_argument("--output", help="output file (default: stdout)")


def build_parser() -> _Parser:
    parser = _Parser(prog="bohmatom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state-info", help="validated label and pointwise state values")
    _add_state_opts(p)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--phi", type=float, default=0.0)
    _add_common_opts(p, ("json", "csv"))

    p = sub.add_parser("rates", help="rotation rate at a point from selected sources")
    _add_state_opts(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--source", choices=sorted(_SOURCES), default=RateSource.PAULI_ASSEMBLED.value)
    p.add_argument("--all-sources", action="store_true")
    p.add_argument("--si", action="store_true", help="also report rad/s")
    _add_common_opts(p, ("json", "csv"))

    p = sub.add_parser("field", help="rate along a radial or meridional slice")
    _add_state_opts(p)
    p.add_argument("--slice", choices=("theta", "r"), default="theta")
    p.add_argument("--r", type=float, default=1.0, help="fixed radius for a theta slice")
    p.add_argument("--theta", type=float, default=math.pi / 2.0, help="fixed angle for an r slice")
    p.add_argument("--min", type=float, default=None, dest="lo")
    p.add_argument("--max", type=float, default=None, dest="hi")
    p.add_argument("--points", type=int, default=181)
    p.add_argument("--source", choices=sorted(_SOURCES), default=RateSource.PAULI_ASSEMBLED.value)
    p.add_argument("--figure", help="also render a PNG figure to this path")
    _add_common_opts(p, ("csv", "json", "svg"))

    p = sub.add_parser("trajectory", help="integrate a Bohm trajectory (RK4)")
    _add_state_opts(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--revs", type=float, default=1.0)
    p.add_argument("--steps-per-rev", type=int, default=1024, dest="steps_per_rev")
    p.add_argument("--duration", type=float, default=None, help="override duration (atomic time)")
    p.add_argument("--source", choices=sorted(_SOURCES), default=RateSource.PAULI_ASSEMBLED.value)
    p.add_argument("--figure", help="also render a PNG figure to this path")
    _add_common_opts(p, ("csv", "json", "svg"))

    p = sub.add_parser("limit-sweep", help="exact-vs-limit gap over an alpha ladder")
    _add_state_opts(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--halvings", type=int, default=3, help="ladder alpha0 / 2^k, k = 0..halvings")
    p.add_argument("--figure", help="also render a PNG figure to this path")
    _add_common_opts(p, ("json", "csv"))

    p = sub.add_parser("verify", help="run the full cross-check suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--fd-step", type=float, default=1e-5, dest="fd_step")
    _add_common_opts(p, ("text", "json"))

    return parser


def spec_from_args(args) -> RunSpec:
    qn = None
    if args.command != "verify":
        qn = _resolve_state(args)
    alpha = getattr(args, "alpha", None)
    return RunSpec(
        command=args.command,
        qn=qn,
        alpha=alpha if alpha is not None else ModelParams().alpha,
        fmt=args.fmt,
        output=getattr(args, "output", None),
        figure=getattr(args, "figure", None),
        seed=getattr(args, "seed", 42),
        si=getattr(args, "si", False),
        params={
            k: v
            for k, v in vars(args).items()
            if k
            not in {"command", "state", "n", "l", "j", "m", "alpha", "fmt", "output", "figure", "seed", "si"}
        },
    )


def _emit(spec: RunSpec, text: str) -> None:
    if spec.output:
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quiet() -> bool:
    return bool(os.environ.get("BOHMATOM_QUIET"))


def _state_spec_dict(spec: RunSpec) -> dict:
    qn = spec.qn
    return {
        "state": {"n": qn.n, "l": qn.l, "j": qn.j, "m": qn.m, "coupling": qn.coupling.value},
        "alpha": spec.alpha,
    }


def run(spec: RunSpec) -> int:
    """Execute a validated RunSpec; returns the process exit code."""
    handler = {
        "state-info": _run_state_info,
        "rates": _run_rates,
        "field": _run_field,
        "trajectory": _run_trajectory,
        "limit-sweep": _run_limit_sweep,
        "verify": _run_verify,
    }[spec.command]
    return handler(spec)


def _run_state_info(spec: RunSpec) -> int:
    qn = spec.qn
    model = ModelParams(alpha=spec.alpha)
    info = {
        "n": qn.n,
        "l": qn.l,
        "j": qn.j,
        "m": qn.m,
        "coupling": qn.coupling.value,
        "spin_eigenstate": states.is_spin_eigenstate(qn),
    }
    r = spec.params.get("r")
    theta = spec.params.get("theta")
    if r is not None and theta is not None:
        p = SphericalPoint(r=r, theta=theta, phi=spec.params.get("phi", 0.0))
        s2 = states.pauli_eval(qn, p)
        info["point"] = {"r": p.r, "theta": p.theta, "phi": p.phi}
        info["pauli_density"] = s2.norm_sq
        info["dirac_relative_density"] = dynamics.dirac_density(qn, p, model)
        info["delta_ratio"] = states.delta_ratio(qn, p.r, model)
    if spec.fmt == "csv":
        keys = [k for k, v in info.items() if isinstance(v, (int, float, bool))]
        text = ",".join(keys) + "\n" + ",".join(
            report.fmt(float(info[k])) if not isinstance(info[k], bool) else str(info[k]).lower()
            for k in keys
        ) + "\n"
    else:
        text = report.json_document("state-info", {"alpha": spec.alpha}, info)
    _emit(spec, text)
    return 0


def _run_rates(spec: RunSpec) -> int:
    qn = spec.qn
    model = ModelParams(alpha=spec.alpha)
    p = SphericalPoint(r=spec.params["r"], theta=spec.params["theta"], phi=spec.params.get("phi", 0.0))
    if spec.params.get("all_sources"):
        sources = list(RateSource)
    else:
        sources = [_SOURCES[spec.params["source"]]]
    results = []
    for source in sources:
        rep = dynamics.rate(qn, p, model, source)
        row = {"source": source.value, "rate": rep.rate}
        if spec.si:
            row["rate_rad_per_s"] = rep.rate / ATOMIC_TIME_SI
        results.append(row)
    if spec.fmt == "csv":
        header = ["source", "rate"] + (["rate_rad_per_s"] if spec.si else [])
        lines = [",".join(header)]
        for row in results:
            cells = [row["source"], report.fmt(row["rate"])]
            if spec.si:
                cells.append(report.fmt(row["rate_rad_per_s"]))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
    else:
        doc_spec = _state_spec_dict(spec)
        doc_spec["point"] = {"r": p.r, "theta": p.theta, "phi": p.phi}
        text = report.json_document("rates", doc_spec, results)
    _emit(spec, text)
    return 0


def _field_slice(spec: RunSpec) -> FieldSlice:
    qn = spec.qn
    model = ModelParams(alpha=spec.alpha)
    source = _SOURCES[spec.params["source"]]
    kind = spec.params["slice"]
    if kind == "theta":
        lo = spec.params.get("lo") or 0.15
        hi = spec.params.get("hi") or math.pi - 0.15
        xs = np.linspace(lo, hi, spec.params["points"])
        pts = [SphericalPoint(r=spec.params["r"], theta=float(t), phi=0.0) for t in xs]
        xlabel = "theta (rad)"
        label = f"rate at r={spec.params['r']:g}"
    else:
        lo = spec.params.get("lo") or 0.3
        hi = spec.params.get("hi") or 8.0
        xs = np.linspace(lo, hi, spec.params["points"])
        pts = [SphericalPoint(r=float(r), theta=spec.params["theta"], phi=0.0) for r in xs]
        xlabel = "r (a)"
        label = f"rate at theta={spec.params['theta']:g}"
    ys = [dynamics.rate(qn, p, model, source).rate for p in pts]
    return FieldSlice(
        label=f"{label} [{source.value}] n={qn.n} l={qn.l} j={qn.j:g} m={qn.m:g}",
        xlabel=xlabel,
        ylabel="dphi/dt (rad / atomic time)",
        x=tuple(float(v) for v in xs),
        y=tuple(ys),
    )


def _run_field(spec: RunSpec) -> int:
    sl = _field_slice(spec)
    if spec.fmt == "svg":
        text = report.emit_svg(sl)
    elif spec.fmt == "json":
        doc_spec = _state_spec_dict(spec)
        doc_spec.update({"slice": spec.params["slice"], "source": spec.params["source"]})
        text = report.json_document(
            "field", doc_spec, [{"x": x, "rate": y} for x, y in zip(sl.x, sl.y)]
        )
    else:
        text = report.simple_csv(("x", "rate"), zip(sl.x, sl.y))
    _emit(spec, text)
    if spec.figure:
        from . import figures

        figures.field_figure(sl, spec.figure)
    return 0


def _run_trajectory(spec: RunSpec) -> int:
    qn = spec.qn
    model = ModelParams(alpha=spec.alpha)
    p = SphericalPoint(r=spec.params["r"], theta=spec.params["theta"], phi=spec.params.get("phi", 0.0))
    source = _SOURCES[spec.params["source"]]
    omega = dynamics.rate(qn, p, model, source).rate
    duration = spec.params.get("duration")
    if duration is None:
        if omega == 0.0:
            raise BohmAtomError(
                "invariant violated: rate vanishes at the start point; pass --duration explicitly"
            )
        duration = spec.params["revs"] * 2.0 * math.pi / abs(omega)
    steps = max(int(round(spec.params["revs"] * spec.params["steps_per_rev"])), 1)
    traj = trajectories.integrate(qn, model, p, duration, steps, source=source)
    if spec.fmt == "svg":
        text = report.emit_svg(traj)
    elif spec.fmt == "json":
        doc_spec = _state_spec_dict(spec)
        doc_spec.update({"source": source.value, "steps": steps, "duration": duration})
        rows = []
        for s in traj.samples:
            x, y, z = s.position.to_cartesian()
            vx, vy, vz = s.velocity.components
            rows.append({"t": s.t, "x": x, "y": y, "z": z, "vx": vx, "vy": vy, "vz": vz})
        text = report.json_document("trajectory", doc_spec, rows)
    else:
        text = report.trajectory_csv(traj)
    _emit(spec, text)
    if spec.figure:
        from . import figures

        figures.trajectory_figure(traj, spec.figure)
    return 0


def _run_limit_sweep(spec: RunSpec) -> int:
    qn = spec.qn
    p = SphericalPoint(r=spec.params["r"], theta=spec.params["theta"], phi=spec.params.get("phi", 0.0))
    ladder = [spec.alpha / 2.0**k for k in range(spec.params["halvings"] + 1)]
    limit = dynamics.dirac_rate_nonrel_limit(qn, p).rate
    rows = []
    gaps = []
    for alpha in ladder:
        exact = dynamics.dirac_rate(qn, p, ModelParams(alpha=alpha)).rate
        gap = abs(exact - limit) / abs(limit)
        gaps.append(gap)
        rows.append({"alpha": alpha, "exact": exact, "limit": limit, "relative_gap": gap})
    cfg = verify_mod.OracleConfig(alpha_ladder=tuple(ladder), seed=spec.seed)
    try:
        slope, intercept = verify_mod.limit_convergence(qn, p, cfg)
        fit = {"slope": slope, "intercept": intercept, "degenerate": False}
    except DegenerateFit as exc:
        fit = {"slope": None, "intercept": None, "degenerate": True, "reason": str(exc)}
    if spec.fmt == "csv":
        text = report.simple_csv(
            ("alpha", "exact", "limit", "relative_gap"),
            [(r["alpha"], r["exact"], r["limit"], r["relative_gap"]) for r in rows],
        )
    else:
        doc_spec = _state_spec_dict(spec)
        doc_spec["point"] = {"r": p.r, "theta": p.theta, "phi": p.phi}
        text = report.json_document("limit-sweep", doc_spec, {"ladder": rows, "fit": fit})
    _emit(spec, text)
    if spec.figure:
        from . import figures

        figures.sweep_figure(ladder, gaps, str(qn), spec.figure)
    return 0


def _run_verify(spec: RunSpec) -> int:
    cfg = verify_mod.OracleConfig(seed=spec.seed, fd_step=spec.params.get("fd_step", 1e-5))
    model = ModelParams(alpha=spec.alpha)
    progress = None if _quiet() else (lambda name: print(f"[verify] {name}", file=sys.stderr))
    results = verify_mod.run_all(cfg, model, progress=progress)
    failed = [r for r in results if not r.passed]
    if spec.fmt == "json":
        payload = [
            {
                "name": r.name,
                "passed": r.passed,
                "measured": r.measured,
                "allowed": r.allowed,
                "detail": r.detail,
            }
            for r in results
        ]
        text = report.json_document(
            "verify", {"seed": spec.seed, "alpha": spec.alpha}, payload
        )
    else:
        width = max(len(r.name) for r in results)
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(
                f"{r.name:<{width}}  {status}  measured={r.measured:.3e} "
                f"allowed={r.allowed:.3e}  {r.detail}"
            )
        lines.append(
            f"{len(results) - len(failed)}/{len(results)} checks passed"
        )
        text = "\n".join(lines) + "\n"
    _emit(spec, text)
    return 2 if failed else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        return run(spec)
    except BohmAtomError as exc:
        print(f"bohmatom: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
