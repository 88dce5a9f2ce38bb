"""Matplotlib figure rendering for the CLI's report path.

Each renderer writes a static figure file next to the delimited output;
the deterministic SVG writer in `report` remains the machine-readable
plot format.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .report import FieldSlice
from .trajectories import Trajectory

__all__ = ["trajectory_figure", "field_figure", "sweep_figure"]


def _state_label(qn) -> str:
    return f"n={qn.n} l={qn.l} j={qn.j:g} m={qn.m:g}"


def trajectory_figure(traj: Trajectory, path: str) -> None:
    """Orbit in the (x, y) plane, equal aspect."""
    pts = [s.position.to_cartesian() for s in traj.samples]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.plot(xs, ys, lw=1.2, label=_state_label(traj.qn))
    ax.plot([xs[0]], [ys[0]], "o", ms=4, color="k")
    ax.set_xlabel("x (a)")
    ax.set_ylabel("y (a)")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def field_figure(sl: FieldSlice, path: str) -> None:
    """Sampled field slice with a zero line for sign changes."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(sl.x, sl.y, lw=1.2, label=sl.label)
    ax.axhline(0.0, color="k", lw=0.6, alpha=0.5)
    ax.set_xlabel(sl.xlabel)
    ax.set_ylabel(sl.ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def sweep_figure(alphas, gaps, label: str, path: str) -> None:
    """Relative gap vs alpha on log-log axes, with an alpha^2 guide line."""
    alphas = np.asarray(alphas, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    positive = gaps > 0.0
    if positive.any():
        ax.loglog(alphas[positive], gaps[positive], "o-", lw=1.2, label=label)
        ref = gaps[positive][0] * (alphas / alphas[positive][0]) ** 2
        ax.loglog(alphas, ref, "--", lw=0.8, color="gray", label="slope 2 guide")
    else:
        ax.semilogx(alphas, gaps, "o-", lw=1.2, label=f"{label} (gap at rounding level)")
    ax.set_xlabel("alpha")
    ax.set_ylabel("|exact - limit| / |limit|")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
