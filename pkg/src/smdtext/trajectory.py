"""Pelvis global-trajectory signals and their segmentation.

World axis assignment defaults to Z-forward / X-lateral under a Y up axis
(and X-forward / Y-lateral under Z up). Values are raw world coordinates,
so frame 0 reads its true world value. Positive lateral renders as
"moves left" and positive yaw as "turns left".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kinematics, tempseg
from .model import JointSequence, SmdConfig

FORWARD = "Forward Position"
LATERAL = "Lateral Position"
HEIGHT = "Height"
YAW = "Body Rotation"

AXIS_ORDER = (FORWARD, LATERAL, HEIGHT, YAW)


@dataclass(frozen=True)
class TrajectorySeries:
    axis: str  # one of AXIS_ORDER
    values: np.ndarray  # meters, or unwrapped degrees for yaw
    fps: float
    mode: str  # "absolute" or "egocentric"


@dataclass(frozen=True)
class TrajectorySummary:
    overall_displacement_m: float
    height_change_m: float
    average_height_m: float


def extract_trajectory(seq: JointSequence, mode: str = "absolute"):
    """The four pelvis trajectory series (forward, lateral, height, yaw)."""
    pelvis = seq.joint("pelvis")
    fwd_w, lat_w, up_w = kinematics.world_axes(seq.up_axis)
    body = kinematics.body_local_frame(
        pelvis, seq.joint("left_hip"), seq.joint("right_hip"),
        kinematics.up_vector(seq.up_axis),
    )
    yaw = kinematics.heading_degrees(body.e_z, seq.up_axis)
    height = pelvis @ up_w

    if mode == "egocentric":
        disp = pelvis - pelvis[0]
        forward = disp @ body.e_z[0]
        lateral = disp @ body.e_x[0]
    else:
        forward = pelvis @ fwd_w
        lateral = pelvis @ lat_w

    return [
        TrajectorySeries(FORWARD, forward, seq.fps, mode),
        TrajectorySeries(LATERAL, lateral, seq.fps, mode),
        TrajectorySeries(HEIGHT, height, seq.fps, mode),
        TrajectorySeries(YAW, yaw, seq.fps, mode),
    ]


def segment_trajectory(series: TrajectorySeries, cfg: SmdConfig):
    """Smooth and segment one trajectory axis; no cycle merging here."""
    threshold = (cfg.yaw_threshold_deg if series.axis == YAW
                 else cfg.pos_threshold_m)
    w = min(cfg.smooth_window, _largest_odd(len(series.values)))
    smoothed = tempseg.smooth(series.values, w)
    return tempseg.segment_extrema(smoothed, series.fps, threshold)


def summarize_trajectory(seq: JointSequence) -> TrajectorySummary:
    pelvis = seq.joint("pelvis")
    up_w = kinematics.up_vector(seq.up_axis)
    height = pelvis @ up_w
    horizontal = pelvis - height[:, None] * up_w
    return TrajectorySummary(
        overall_displacement_m=float(np.linalg.norm(horizontal[-1] - horizontal[0])),
        height_change_m=float(height[-1] - height[0]),
        average_height_m=float(height.mean()),
    )


def _largest_odd(n: int) -> int:
    return n if n % 2 == 1 else n - 1
