"""Deterministic synthetic motions used by tests and the synth command.

All fixtures are built by rotating limbs of a neutral standing pose
(Y up, meters). Named fixtures: kick, gait, turn, static, sine-joint.
"""

from __future__ import annotations

import numpy as np

from .errors import UnknownFixture
from .model import SMPL22, JointSequence

FIXTURE_NAMES = ("kick", "gait", "turn", "static", "sine-joint")

_THIGH = 0.40
_SHIN = 0.40
_FOOT = 0.15
_UPPER_ARM = 0.30
_FOREARM = 0.25

_J = SMPL22.index_of


def neutral_pose() -> np.ndarray:
    """A (22, 3) neutral standing pose with all flexion angles at zero."""
    p = np.zeros((22, 3))

    def put(name, x, y, z):
        p[_J[name]] = (x, y, z)

    put("pelvis", 0.0, 0.90, 0.0)
    put("left_hip", 0.10, 0.85, 0.0)
    put("right_hip", -0.10, 0.85, 0.0)
    put("spine1", 0.0, 1.00, 0.0)
    put("spine2", 0.0, 1.10, 0.0)
    put("spine3", 0.0, 1.20, 0.0)
    put("neck", 0.0, 1.45, 0.0)
    put("head", 0.0, 1.60, 0.0)
    put("left_collar", 0.07, 1.40, 0.0)
    put("right_collar", -0.07, 1.40, 0.0)
    for side, s in (("left", 1.0), ("right", -1.0)):
        hip = np.array([s * 0.10, 0.85, 0.0])
        p[_J[f"{side}_knee"]] = hip + [0, -_THIGH, 0]
        p[_J[f"{side}_ankle"]] = hip + [0, -_THIGH - _SHIN, 0]
        p[_J[f"{side}_foot"]] = hip + [0, -_THIGH - _SHIN, _FOOT]
        shoulder = np.array([s * 0.18, 1.40, 0.0])
        p[_J[f"{side}_shoulder"]] = shoulder
        p[_J[f"{side}_elbow"]] = shoulder + [0, -_UPPER_ARM, 0]
        p[_J[f"{side}_wrist"]] = shoulder + [0, -_UPPER_ARM - _FOREARM, 0]
    return p


def base_frames(n: int) -> np.ndarray:
    """(n, 22, 3) stack of neutral poses, writable."""
    return np.repeat(neutral_pose()[None], n, axis=0)


def _sagittal_dir(angle_deg):
    """Unit direction tilted forward from straight down, shape (T, 3)."""
    a = np.radians(np.asarray(angle_deg, dtype=np.float64))
    return np.stack([np.zeros_like(a), -np.cos(a), np.sin(a)], axis=-1)


def apply_leg(frames, side, hip_flex_deg, knee_flex_deg=0.0):
    """Pose one leg in the sagittal plane, vectorized over frames."""
    n = frames.shape[0]
    hip_flex = np.broadcast_to(np.asarray(hip_flex_deg, dtype=float), (n,))
    knee_flex = np.broadcast_to(np.asarray(knee_flex_deg, dtype=float), (n,))
    hip = frames[:, _J[f"{side}_hip"]]
    thigh = _sagittal_dir(hip_flex)
    knee = hip + _THIGH * thigh
    shin = _sagittal_dir(hip_flex - knee_flex)
    ankle = knee + _SHIN * shin
    b = np.radians(hip_flex - knee_flex)
    foot_dir = np.stack([np.zeros(n), np.sin(b), np.cos(b)], axis=-1)
    frames[:, _J[f"{side}_knee"]] = knee
    frames[:, _J[f"{side}_ankle"]] = ankle
    frames[:, _J[f"{side}_foot"]] = ankle + _FOOT * foot_dir


def apply_arm(frames, side, shoulder_flex_deg, elbow_flex_deg=0.0):
    n = frames.shape[0]
    shoulder_flex = np.broadcast_to(np.asarray(shoulder_flex_deg, dtype=float), (n,))
    elbow_flex = np.broadcast_to(np.asarray(elbow_flex_deg, dtype=float), (n,))
    shoulder = frames[:, _J[f"{side}_shoulder"]]
    elbow = shoulder + _UPPER_ARM * _sagittal_dir(shoulder_flex)
    wrist = elbow + _FOREARM * _sagittal_dir(shoulder_flex + elbow_flex)
    frames[:, _J[f"{side}_elbow"]] = elbow
    frames[:, _J[f"{side}_wrist"]] = wrist


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def kick(fps: float = 20.0) -> JointSequence:
    """Left leg kick: hip flexion rises fast, falls back, then holds low."""
    n = 116  # 5.8 s at 20 fps
    t = np.arange(n) / fps
    flex = np.full(n, 3.0)
    rise = t <= 0.9
    flex[rise] = 2.0 + 78.0 * _smoothstep(t[rise] / 0.9)
    fall = (t > 0.9) & (t <= 2.0)
    flex[fall] = 80.0 - 77.0 * _smoothstep((t[fall] - 0.9) / 1.1)
    knee = np.zeros(n)
    knee[rise] = 30.0 * _smoothstep(t[rise] / 0.9)
    knee[fall] = 30.0 - 30.0 * _smoothstep((t[fall] - 0.9) / 1.1)
    frames = base_frames(n)
    apply_leg(frames, "left", flex, knee)
    return JointSequence(frames=frames, fps=fps, up_axis="y")


def gait(cycles: int = 4, fps: float = 20.0, speed: float = 1.0) -> JointSequence:
    """Forward walk with sinusoidal hip/knee flexion, one cycle per second."""
    n = int(round(cycles * fps)) + 1
    t = np.arange(n) / fps
    frames = base_frames(n)
    apply_leg(frames, "left", 28.0 * np.sin(2 * np.pi * t),
              25.0 - 25.0 * np.cos(2 * np.pi * t))
    apply_leg(frames, "right", 28.0 * np.sin(2 * np.pi * t + np.pi),
              25.0 - 25.0 * np.cos(2 * np.pi * t + np.pi))
    apply_arm(frames, "left", 15.0 * np.sin(2 * np.pi * t + np.pi))
    apply_arm(frames, "right", 15.0 * np.sin(2 * np.pi * t))
    frames[:, :, 2] += (speed * t)[:, None]
    return JointSequence(frames=frames, fps=fps, up_axis="y")


def turn(angle_deg: float = 90.0, fps: float = 20.0) -> JointSequence:
    """In-place left turn by angle_deg over 2 s, then hold for 1 s."""
    n = int(round(3.0 * fps)) + 1
    t = np.arange(n) / fps
    yaw = np.radians(angle_deg) * _smoothstep(t / 2.0)
    base = neutral_pose()
    pivot = base[_J["pelvis"]].copy()
    c, s = np.cos(yaw), np.sin(yaw)
    zero, one = np.zeros(n), np.ones(n)
    rot = np.stack([
        np.stack([c, zero, s], axis=-1),
        np.stack([zero, one, zero], axis=-1),
        np.stack([-s, zero, c], axis=-1),
    ], axis=1)  # (n, 3, 3)
    frames = np.einsum("nij,kj->nki", rot, base - pivot) + pivot
    return JointSequence(frames=frames, fps=fps, up_axis="y")


def static(n_frames: int = 60, fps: float = 20.0) -> JointSequence:
    return JointSequence(frames=base_frames(n_frames), fps=fps, up_axis="y")


def sine_joint(amplitude_deg: float = 40.0, periods: int = 4,
               fps: float = 20.0, duration_s: float | None = None) -> JointSequence:
    """Left hip flexion oscillating sinusoidally around amplitude_deg."""
    duration = duration_s if duration_s is not None else float(periods)
    n = int(round(duration * fps)) + 1
    t = np.arange(n) / fps
    flex = amplitude_deg + amplitude_deg * np.sin(2 * np.pi * periods * t / duration)
    frames = base_frames(n)
    apply_leg(frames, "left", flex)
    return JointSequence(frames=frames, fps=fps, up_axis="y")


def make(name: str, **params) -> JointSequence:
    builders = {
        "kick": kick,
        "gait": gait,
        "turn": turn,
        "static": static,
        "sine-joint": sine_joint,
    }
    try:
        builder = builders[name]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}"
        ) from None
    return builder(**params)
