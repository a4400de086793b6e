"""Report figures: joint-angle and trajectory series with segment marks."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import kinematics, tempseg, trajectory
from .model import JointSequence, SmdConfig

_KIND_COLOR = {
    tempseg.INCREASES: "tab:red",
    tempseg.DECREASES: "tab:blue",
    tempseg.HOLDS: "0.6",
    tempseg.REPEATS: "tab:orange",
}


def _plot_series(ax, t, values, segments, title, unit):
    ax.plot(t, values, lw=1.0, color="k")
    for seg in segments:
        ax.axvspan(seg.t_start, seg.t_end, alpha=0.15,
                   color=_KIND_COLOR[seg.kind])
        ax.axvline(seg.t_start, lw=0.4, color="0.4")
    ax.set_title(title, fontsize=8)
    ax.set_ylabel(unit, fontsize=7)
    ax.tick_params(labelsize=6)


def plot_joint_angles(seq: JointSequence, cfg: SmdConfig, path) -> None:
    """Grid of the selected angle series with their segmentation."""
    from . import assembly

    angles = kinematics.compute_joint_angles(seq)
    if cfg.top_k is not None:
        angles = assembly.select_top_k(angles, cfg.top_k, cfg.smooth_window)
    w = min(cfg.smooth_window, assembly._largest_odd(seq.n_frames))
    t = np.arange(seq.n_frames) / seq.fps
    ncols = 3
    nrows = (len(angles) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(11, 1.8 * nrows),
                             sharex=True, squeeze=False)
    for ax in axes.flat:
        ax.set_visible(False)
    for ax, series in zip(axes.flat, angles):
        ax.set_visible(True)
        smoothed = tempseg.smooth(series.values, w)
        segments = tempseg.segment_extrema(smoothed, seq.fps, cfg.delta_deg)
        segments = tempseg.detect_cycles(segments, smoothed, seq.fps,
                                         cfg.cycle_consistency)
        _plot_series(ax, t, smoothed, segments,
                     series.definition.display_phrase, "deg")
    for ax in axes[-1]:
        ax.set_xlabel("time [s]", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_trajectory(seq: JointSequence, cfg: SmdConfig, path) -> None:
    mode = cfg.trajectory_mode if cfg.trajectory_mode != "none" else "absolute"
    series_list = trajectory.extract_trajectory(seq, mode)
    t = np.arange(seq.n_frames) / seq.fps
    fig, axes = plt.subplots(4, 1, figsize=(8, 7), sharex=True)
    for ax, series in zip(axes, series_list):
        segments = trajectory.segment_trajectory(series, cfg)
        unit = "deg" if series.axis == trajectory.YAW else "m"
        _plot_series(ax, t, series.values, segments, series.axis, unit)
    axes[-1].set_xlabel("time [s]", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
