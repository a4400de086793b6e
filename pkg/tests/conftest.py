"""Shared generators: randomized motions, rigid transforms, random signals."""

from __future__ import annotations

import numpy as np
import pytest

from smdtext import fixtures
from smdtext.model import JointSequence


def random_signal(rng, n, lo, hi):
    """Smooth band-limited signal within [lo, hi], shape (n,)."""
    t = np.linspace(0.0, 1.0, n)
    x = np.zeros(n)
    for _ in range(rng.integers(1, 4)):
        amp = rng.uniform(0.2, 1.0)
        freq = rng.uniform(0.3, 3.0)
        x += amp * np.sin(2 * np.pi * freq * t + rng.uniform(0, 2 * np.pi))
    x = (x - x.min()) / max(x.max() - x.min(), 1e-12)
    return lo + (hi - lo) * x


def random_motion(rng, n_frames=80, fps=20.0) -> JointSequence:
    """A plausible random human motion built from smooth joint-angle signals."""
    frames = fixtures.base_frames(n_frames)
    for side in ("left", "right"):
        fixtures.apply_leg(frames, side,
                           random_signal(rng, n_frames, -20.0, 70.0),
                           random_signal(rng, n_frames, 0.0, 80.0))
        fixtures.apply_arm(frames, side,
                           random_signal(rng, n_frames, -30.0, 60.0),
                           random_signal(rng, n_frames, 0.0, 90.0))
    drift = np.stack([
        random_signal(rng, n_frames, -0.5, 0.5),
        np.zeros(n_frames),
        random_signal(rng, n_frames, 0.0, 2.0),
    ], axis=-1)
    frames += drift[:, None, :]
    return JointSequence(frames=frames, fps=fps, up_axis="y")


def random_piecewise_linear(rng, max_len=64):
    """Random piecewise-linear signal with occasional plateaus."""
    n = int(rng.integers(4, max_len + 1))
    n_knots = int(rng.integers(2, 8))
    knots = np.sort(rng.choice(np.arange(n), size=min(n_knots, n), replace=False))
    if knots[0] != 0:
        knots = np.concatenate(([0], knots))
    if knots[-1] != n - 1:
        knots = np.concatenate((knots, [n - 1]))
    levels = rng.uniform(-30.0, 30.0, size=len(knots))
    if rng.random() < 0.5:  # force some exact plateaus
        i = rng.integers(0, len(levels) - 1)
        levels[i + 1] = levels[i]
    return np.interp(np.arange(n), knots, levels)


def rot_y(phi_deg):
    """Right-handed rotation about world +Y by phi degrees."""
    a = np.radians(phi_deg)
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_axis(axis, angle_deg):
    """Rodrigues rotation matrix about an arbitrary unit axis."""
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    a = np.radians(angle_deg)
    k = np.array([[0, -axis[2], axis[1]],
                  [axis[2], 0, -axis[0]],
                  [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(a) * k + (1 - np.cos(a)) * (k @ k)


def transform_seq(seq: JointSequence, rot=None, translation=None) -> JointSequence:
    frames = seq.frames
    if rot is not None:
        frames = frames @ np.asarray(rot).T
    if translation is not None:
        frames = frames + np.asarray(translation)
    return JointSequence(frames=frames, fps=seq.fps, up_axis=seq.up_axis)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
