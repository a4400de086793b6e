"""Core data types, the SMPL-22 skeleton layout, validation, and file I/O.

Two on-disk formats are supported:

* JSON: ``{"fps": 20, "layout": "smpl22", "up_axis": "y", "frames": [[[x,y,z], ...22], ...T]}``
* Binary: little-endian, magic ``SMD1``, u32 version=1, u32 T, u32 J=22,
  u8 up_axis (0=Y, 1=Z), f32 fps, then T*22*3 f32 values in frame-major,
  joint-major, xyz order.
"""

from __future__ import annotations

import io
import json
import logging
import struct
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import BadConfig, MalformedInput, NonFiniteValue, UnsupportedLayout

log = logging.getLogger("smd")

SMPL22_JOINT_NAMES = (
    "pelvis",
    "left_hip",
    "right_hip",
    "spine1",
    "left_knee",
    "right_knee",
    "spine2",
    "left_ankle",
    "right_ankle",
    "spine3",
    "left_foot",
    "right_foot",
    "neck",
    "left_collar",
    "right_collar",
    "head",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
)

_BINARY_MAGIC = b"SMD1"
_BINARY_VERSION = 1


@dataclass(frozen=True)
class SkeletonLayout:
    """Mapping from anatomical joint names to array indices."""

    name: str
    index_of: dict

    def __getitem__(self, joint: str) -> int:
        return self.index_of[joint]


SMPL22 = SkeletonLayout(
    name="smpl22",
    index_of={name: i for i, name in enumerate(SMPL22_JOINT_NAMES)},
)

_LAYOUTS = {"smpl22": SMPL22}


def layout_by_name(name: str) -> SkeletonLayout:
    try:
        return _LAYOUTS[name]
    except KeyError:
        raise UnsupportedLayout(f"unsupported skeleton layout: {name!r}") from None


@dataclass(frozen=True)
class JointSequence:
    """A validated T x 22 x 3 joint-position sequence in meters."""

    frames: np.ndarray  # (T, 22, 3) float64
    fps: float = 20.0
    up_axis: str = "y"  # "y" or "z"
    layout: SkeletonLayout = SMPL22

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        object.__setattr__(self, "frames", frames)
        _validate_arrays(frames, self.fps, self.up_axis)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def duration(self) -> float:
        return (self.n_frames - 1) / self.fps

    def joint(self, name: str) -> np.ndarray:
        """Positions of one named joint over time, shape (T, 3)."""
        return self.frames[:, self.layout[name], :]


def _validate_arrays(frames: np.ndarray, fps: float, up_axis: str) -> None:
    if frames.ndim != 3 or frames.shape[1:] != (22, 3):
        raise MalformedInput(
            f"expected positions of shape (T, 22, 3), got {frames.shape}"
        )
    if frames.shape[0] < 2:
        raise MalformedInput(f"need at least 2 frames, got {frames.shape[0]}")
    if not np.isfinite(frames).all():
        bad = np.argwhere(~np.isfinite(frames))[0]
        raise NonFiniteValue(
            f"non-finite coordinate at frame {bad[0]}, joint {bad[1]}, axis {bad[2]}"
        )
    if not (np.isfinite(fps) and fps > 0):
        raise MalformedInput(f"fps must be a positive number, got {fps}")
    if up_axis not in ("y", "z"):
        raise MalformedInput(f"up_axis must be 'y' or 'z', got {up_axis!r}")


def validate(seq: JointSequence) -> list:
    """Re-check all invariants and return a list of non-fatal warnings.

    Raises on invariant violations; a pelvis jump larger than 1 m between
    consecutive frames is reported as a warning only (likely corrupt capture).
    """
    _validate_arrays(seq.frames, seq.fps, seq.up_axis)
    warnings = []
    pelvis = seq.joint("pelvis")
    step = np.linalg.norm(np.diff(pelvis, axis=0), axis=1)
    jumps = np.nonzero(step > 1.0)[0]
    for i in jumps:
        msg = f"pelvis moved {step[i]:.2f} m between frames {i} and {i + 1}"
        warnings.append(msg)
        log.warning(msg)
    return warnings


# --- JSON format ---------------------------------------------------------


def to_json(seq: JointSequence) -> str:
    doc = {
        "fps": seq.fps,
        "layout": seq.layout.name,
        "up_axis": seq.up_axis,
        "frames": seq.frames.tolist(),
    }
    return json.dumps(doc)


def from_json(text) -> JointSequence:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("top-level JSON value must be an object")
    for key in ("fps", "frames"):
        if key not in doc:
            raise MalformedInput(f"missing key {key!r}")
    layout = layout_by_name(doc.get("layout", "smpl22"))
    frames = doc["frames"]
    try:
        arr = np.asarray(frames, dtype=np.float64)
    except (ValueError, TypeError):
        raise MalformedInput("frames must be a T x 22 x 3 numeric array") from None
    if arr.ndim != 3 or arr.shape[1:] != (22, 3):
        raise MalformedInput(
            f"frames must have shape (T, 22, 3), got {arr.shape}"
        )
    return JointSequence(
        frames=arr,
        fps=float(doc["fps"]),
        up_axis=str(doc.get("up_axis", "y")).lower(),
        layout=layout,
    )


# --- Binary format -------------------------------------------------------


def to_binary(seq: JointSequence) -> bytes:
    header = struct.pack(
        "<4sIIIBf",
        _BINARY_MAGIC,
        _BINARY_VERSION,
        seq.n_frames,
        22,
        0 if seq.up_axis == "y" else 1,
        seq.fps,
    )
    body = seq.frames.astype("<f4").tobytes()
    return header + body


def from_binary(data: bytes) -> JointSequence:
    header_size = struct.calcsize("<4sIIIBf")
    if len(data) < header_size:
        raise MalformedInput("binary stream truncated before header end")
    magic, version, n_frames, n_joints, up_code, fps = struct.unpack(
        "<4sIIIBf", data[:header_size]
    )
    if magic != _BINARY_MAGIC:
        raise MalformedInput(f"bad magic bytes {magic!r}")
    if version != _BINARY_VERSION:
        raise MalformedInput(f"unsupported binary version {version}")
    if n_joints != 22:
        raise UnsupportedLayout(f"binary file declares {n_joints} joints, expected 22")
    if up_code not in (0, 1):
        raise MalformedInput(f"bad up_axis code {up_code}")
    expected = n_frames * 22 * 3 * 4
    body = data[header_size:]
    if len(body) != expected:
        raise MalformedInput(
            f"binary payload has {len(body)} bytes, expected {expected} "
            f"for {n_frames} frames"
        )
    arr = np.frombuffer(body, dtype="<f4").reshape(n_frames, 22, 3)
    return JointSequence(
        frames=arr.astype(np.float64),
        fps=float(np.float32(fps)),
        up_axis="y" if up_code == 0 else "z",
    )


def load_joint_sequence(source, format: str = "json") -> JointSequence:
    """Load a sequence from a path, byte string, or binary file object."""
    if hasattr(source, "read"):
        data = source.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        with open(source, "rb") as f:
            data = f.read()
    if format == "json":
        return from_json(data)
    if format == "binary":
        return from_binary(data)
    raise MalformedInput(f"unknown format {format!r}")


def save_joint_sequence(seq: JointSequence, path, format: str = "json") -> None:
    data = to_json(seq).encode("utf-8") if format == "json" else to_binary(seq)
    with open(path, "wb") as f:
        f.write(data)


# --- Configuration -------------------------------------------------------


@dataclass(frozen=True)
class SmdConfig:
    """Rule parameters for the conversion.

    Defaults: minimum angular change 5 deg, smoothing window 7 frames,
    position threshold 0.03 m, yaw threshold 15 deg, cycle consistency 0.6,
    all 26 joints, absolute trajectory.
    """

    delta_deg: float = 5.0
    smooth_window: int = 7
    pos_threshold_m: float = 0.03
    yaw_threshold_deg: float = 15.0
    cycle_consistency: float = 0.6
    top_k: int | None = None  # None means all 26 joints
    trajectory_mode: str = "absolute"  # "none", "egocentric", "absolute"

    def __post_init__(self):
        if not self.delta_deg > 0:
            raise BadConfig("delta_deg must be positive")
        if self.smooth_window < 1 or self.smooth_window % 2 == 0:
            raise BadConfig("smooth_window must be odd and >= 1")
        if not self.pos_threshold_m > 0:
            raise BadConfig("pos_threshold_m must be positive")
        if not self.yaw_threshold_deg > 0:
            raise BadConfig("yaw_threshold_deg must be positive")
        if not 0 < self.cycle_consistency <= 1:
            raise BadConfig("cycle_consistency must be in (0, 1]")
        if self.top_k is not None and not 1 <= self.top_k <= 26:
            raise BadConfig("top_k must be between 1 and 26")
        if self.trajectory_mode not in ("none", "egocentric", "absolute"):
            raise BadConfig(f"unknown trajectory_mode {self.trajectory_mode!r}")

    def with_overrides(self, **kwargs) -> "SmdConfig":
        return replace(self, **kwargs)
