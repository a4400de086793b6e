"""Document assembly and rendering of the final text.

The rendered grammar is frozen and guarded by golden files, because the
output feeds byte-sensitive LLM prompts:

* meta line ``Motion: {D}s ({N} frames at {F} FPS)``
* ``Global Trajectory:`` block: an ``Overall:`` summary line, then one
  line per axis segment using the direction verbs
* ``Joint Angles:`` block: ``[{Group}]`` headers and one line per angle,
  segments joined with ", "

Rounding: degrees to the nearest integer, meters to 2 decimals, seconds
to 1 decimal. The arrow is U+2192 and ranges use an en dash.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kinematics, tempseg, trajectory
from .kinematics import GROUP_ORDER
from .model import JointSequence, SmdConfig
from .tempseg import DECREASES, HOLDS, INCREASES, REPEATS, Segment
from .trajectory import AXIS_ORDER, HEIGHT, LATERAL, YAW, TrajectorySummary

ARROW = "→"
DASH = "–"
DEG = "°"

# positive / negative direction verbs per trajectory axis
TRAJECTORY_VERBS = {
    trajectory.HEIGHT: ("rises", "lowers"),
    trajectory.FORWARD: ("moves forward", "moves backward"),
    trajectory.LATERAL: ("moves left", "moves right"),
    trajectory.YAW: ("turns left", "turns right"),
}


@dataclass(frozen=True)
class SmdDocument:
    duration_s: float
    frame_count: int
    fps: float
    summary: TrajectorySummary | None
    trajectory_blocks: list  # [(axis, [Segment, ...]), ...], empty if mode none
    joint_blocks: list  # [(group, [(display_phrase, [Segment, ...]), ...]), ...]


def select_top_k(angles, k: int, smooth_window: int = 7):
    """The k most active angle series, by range of the smoothed series.

    Ties break toward the canonical ordering; the result preserves the
    canonical group order.
    """
    scores = []
    for i, series in enumerate(angles):
        w = min(smooth_window, _largest_odd(len(series.values)))
        smoothed = tempseg.smooth(series.values, w)
        scores.append((-(smoothed.max() - smoothed.min()), i))
    keep = sorted(i for _, i in sorted(scores)[:k])
    return [angles[i] for i in keep]


def build_document(seq: JointSequence, cfg: SmdConfig) -> SmdDocument:
    """Run the full pipeline up to (but not including) rendering."""
    angles = kinematics.compute_joint_angles(seq)
    if cfg.top_k is not None:
        angles = select_top_k(angles, cfg.top_k, cfg.smooth_window)

    w = min(cfg.smooth_window, _largest_odd(seq.n_frames))
    joint_blocks = []
    for group in GROUP_ORDER:
        entries = []
        for series in angles:
            if series.definition.group != group:
                continue
            smoothed = tempseg.smooth(series.values, w)
            segments = tempseg.segment_extrema(smoothed, seq.fps, cfg.delta_deg)
            segments = tempseg.detect_cycles(segments, smoothed, seq.fps,
                                             cfg.cycle_consistency)
            entries.append((series.definition.display_phrase, segments))
        if entries:
            joint_blocks.append((group, entries))

    if cfg.trajectory_mode == "none":
        summary = None
        trajectory_blocks = []
    else:
        summary = trajectory.summarize_trajectory(seq)
        trajectory_blocks = []
        for series in trajectory.extract_trajectory(seq, cfg.trajectory_mode):
            trajectory_blocks.append(
                (series.axis, trajectory.segment_trajectory(series, cfg))
            )

    return SmdDocument(
        duration_s=seq.duration,
        frame_count=seq.n_frames,
        fps=seq.fps,
        summary=summary,
        trajectory_blocks=trajectory_blocks,
        joint_blocks=joint_blocks,
    )


def render_smd(doc: SmdDocument, cfg: SmdConfig | None = None) -> str:
    lines = [
        f"Motion: {_secs(doc.duration_s)} ({doc.frame_count} frames "
        f"at {_fps(doc.fps)} FPS)"
    ]
    if doc.summary is not None:
        lines.append("")
        lines.append("Global Trajectory:")
        s = doc.summary
        lines.append(
            f"Overall: displacement {_meters(s.overall_displacement_m)}, "
            f"height change {_meters(s.height_change_m)}, "
            f"average height {_meters(s.average_height_m)}"
        )
        for axis, segments in doc.trajectory_blocks:
            unit = _degrees if axis == YAW else _meters
            for seg in segments:
                lines.append(f"{axis}: {_trajectory_segment(axis, seg, unit)}")
    lines.append("")
    lines.append("Joint Angles:")
    for group, entries in doc.joint_blocks:
        lines.append(f"[{group}]")
        for phrase, segments in entries:
            rendered = ", ".join(_joint_segment(s) for s in segments)
            lines.append(f"{phrase}: {rendered}")
    return "\n".join(lines) + "\n"


def estimate_tokens(text: str) -> int:
    """Rough subword-token count: ceil(bytes / 4) + half the word count."""
    if not text:
        return 0
    return math.ceil(len(text.encode("utf-8")) / 4) + len(text.split()) // 2


def convert(seq: JointSequence, cfg: SmdConfig | None = None) -> str:
    """Full deterministic motion-to-text conversion."""
    cfg = cfg or SmdConfig()
    return render_smd(build_document(seq, cfg), cfg)


# --- formatting helpers --------------------------------------------------


def _round_half_away(x: float) -> float:
    return math.floor(abs(x) + 0.5) * (1 if x >= 0 else -1)


def _degrees(v: float) -> str:
    return f"{int(_round_half_away(v))}{DEG}"


def _meters(v: float) -> str:
    return f"{round(v, 2) + 0.0:.2f}m"


def _secs(t: float) -> str:
    return f"{round(t, 1) + 0.0:.1f}s"


def _fps(f: float) -> str:
    return str(int(f)) if f == int(f) else f"{f:g}"


def _span(seg: Segment) -> str:
    return f"[{_secs(seg.t_start)}{DASH}{_secs(seg.t_end)}]"


def _joint_segment(seg: Segment) -> str:
    if seg.kind == HOLDS:
        return f"holds at {_degrees(seg.v_start)} {_span(seg)}"
    if seg.kind == REPEATS:
        return (f"repeats {seg.n} cycles "
                f"{_degrees(seg.v_start)}{DASH}{_degrees(seg.v_end)} {_span(seg)}")
    return (f"{seg.kind} {_degrees(seg.v_start)} {ARROW} "
            f"{_degrees(seg.v_end)} {_span(seg)}")


def _trajectory_segment(axis: str, seg: Segment, unit) -> str:
    if seg.kind == HOLDS:
        return f"holds at {unit(seg.v_start)} {_span(seg)}"
    positive, negative = TRAJECTORY_VERBS[axis]
    verb = positive if seg.kind == INCREASES else negative
    return f"{verb} {unit(seg.v_start)} {ARROW} {unit(seg.v_end)} {_span(seg)}"


def _largest_odd(n: int) -> int:
    return n if n % 2 == 1 else n - 1
