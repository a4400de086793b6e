"""Body-local frames, the kinematic chain, and the 26 joint-angle series.

Conventions (frozen here, since only the angle names are standardized):

* The body-local frame is built per frame from pelvis, left hip and right
  hip: ``e_x`` points from the right hip to the left hip, ``e_z`` is the
  unit normal of the landmark plane with its sign chosen so that
  ``e_y = e_z x e_x`` points toward the world up axis, and the origin is
  the pelvis. ``e_z`` is the anterior (forward) direction.
* Flexion is measured from the downward direction of the parent frame in
  the sagittal plane via atan2, so a neutral standing pose reads 0 for
  every flexion angle; flexion is positive, extension negative.
* Adduction (movement toward the midline) is positive for both sides.
* Twist angles (hip/shoulder rotation) are the signed angle of a distal
  reference direction about the bone axis relative to the parent forward
  direction, with internal rotation positive on both sides. The distal
  reference is the foot vector for the hip and the forearm for the
  shoulder; when the reference is parallel to the bone axis the twist is
  undefined and the last defined value is carried forward (0 before any).
* Ankle dorsi/plantarflexion uses the ankle-to-foot vector in the tibia
  frame; dorsiflexion (toes up) is positive.

Angles that can cross the +/-180 deg seam (pelvis rotation, hip rotation,
shoulder rotation) are unwrapped before being returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateLandmarks
from .model import JointSequence

_EPS_AREA = 1e-9  # minimum landmark triangle area, m^2
_EPS_DIR = 1e-8  # minimum norm for a projected direction

GROUP_ORDER = (
    "Pelvis",
    "Lumbar Spine",
    "Neck",
    "Right Hip",
    "Right Knee",
    "Right Ankle",
    "Left Hip",
    "Left Knee",
    "Left Ankle",
    "Right Shoulder",
    "Right Elbow",
    "Left Shoulder",
    "Left Elbow",
)


@dataclass(frozen=True)
class AngleDefinition:
    id: str
    group: str
    display_phrase: str
    parent_frame: str
    bone: tuple  # ordered joint pair the angle is computed from
    plane: str  # "sagittal", "coronal", "transverse", "none"
    signed: bool
    wrappable: bool = False


ANGLE_DEFINITIONS = (
    AngleDefinition("pelvis_tilt", "Pelvis", "Pelvis Tilt (forward/backward lean)",
                    "global", ("pelvis", "pelvis"), "sagittal", True),
    AngleDefinition("pelvis_list", "Pelvis", "Pelvis List (lateral tilt)",
                    "global", ("pelvis", "pelvis"), "coronal", True),
    AngleDefinition("pelvis_rotation", "Pelvis", "Pelvis Rotation (turning)",
                    "global", ("pelvis", "pelvis"), "transverse", True, True),
    AngleDefinition("lumbar_extension", "Lumbar Spine",
                    "Lumbar Extension (bending forward/backward)",
                    "pelvis", ("spine1", "spine3"), "sagittal", True),
    AngleDefinition("lumbar_lateral", "Lumbar Spine",
                    "Lumbar Lateral Bending (side bend)",
                    "pelvis", ("spine1", "spine3"), "coronal", True),
    AngleDefinition("lumbar_rotation", "Lumbar Spine", "Lumbar Rotation (twisting)",
                    "pelvis", ("right_collar", "left_collar"), "transverse", True),
    AngleDefinition("neck_flexion", "Neck", "Neck Flexion (nodding)",
                    "lumbar", ("neck", "head"), "sagittal", True),
    AngleDefinition("neck_lateral", "Neck", "Neck Lateral Tilt (tilting head sideways)",
                    "lumbar", ("neck", "head"), "coronal", True),
    AngleDefinition("right_hip_flexion", "Right Hip", "Right Hip Flexion (raising thigh)",
                    "pelvis", ("right_hip", "right_knee"), "sagittal", True),
    AngleDefinition("right_hip_adduction", "Right Hip",
                    "Right Hip Adduction (moving leg inward)",
                    "pelvis", ("right_hip", "right_knee"), "coronal", True),
    AngleDefinition("right_hip_rotation", "Right Hip", "Right Hip Rotation",
                    "pelvis", ("right_ankle", "right_foot"), "transverse", True, True),
    AngleDefinition("right_knee", "Right Knee", "Right Knee Angle (bending)",
                    "hip", ("right_knee", "right_ankle"), "none", False),
    AngleDefinition("right_ankle", "Right Ankle", "Right Ankle Angle (dorsi/plantarflexion)",
                    "knee", ("right_ankle", "right_foot"), "sagittal", True),
    AngleDefinition("left_hip_flexion", "Left Hip", "Left Hip Flexion (raising thigh)",
                    "pelvis", ("left_hip", "left_knee"), "sagittal", True),
    AngleDefinition("left_hip_adduction", "Left Hip",
                    "Left Hip Adduction (moving leg inward)",
                    "pelvis", ("left_hip", "left_knee"), "coronal", True),
    AngleDefinition("left_hip_rotation", "Left Hip", "Left Hip Rotation",
                    "pelvis", ("left_ankle", "left_foot"), "transverse", True, True),
    AngleDefinition("left_knee", "Left Knee", "Left Knee Angle (bending)",
                    "hip", ("left_knee", "left_ankle"), "none", False),
    AngleDefinition("left_ankle", "Left Ankle", "Left Ankle Angle (dorsi/plantarflexion)",
                    "knee", ("left_ankle", "left_foot"), "sagittal", True),
    AngleDefinition("right_shoulder_flexion", "Right Shoulder",
                    "Right Shoulder Flexion (raising arm forward)",
                    "lumbar", ("right_shoulder", "right_elbow"), "sagittal", True),
    AngleDefinition("right_shoulder_adduction", "Right Shoulder",
                    "Right Shoulder Adduction (moving arm inward)",
                    "lumbar", ("right_shoulder", "right_elbow"), "coronal", True),
    AngleDefinition("right_shoulder_rotation", "Right Shoulder", "Right Shoulder Rotation",
                    "lumbar", ("right_elbow", "right_wrist"), "transverse", True, True),
    AngleDefinition("right_elbow", "Right Elbow", "Right Elbow Flexion (bending arm)",
                    "shoulder", ("right_elbow", "right_wrist"), "none", False),
    AngleDefinition("left_shoulder_flexion", "Left Shoulder",
                    "Left Shoulder Flexion (raising arm forward)",
                    "lumbar", ("left_shoulder", "left_elbow"), "sagittal", True),
    AngleDefinition("left_shoulder_adduction", "Left Shoulder",
                    "Left Shoulder Adduction (moving arm inward)",
                    "lumbar", ("left_shoulder", "left_elbow"), "coronal", True),
    AngleDefinition("left_shoulder_rotation", "Left Shoulder", "Left Shoulder Rotation",
                    "lumbar", ("left_elbow", "left_wrist"), "transverse", True, True),
    AngleDefinition("left_elbow", "Left Elbow", "Left Elbow Flexion (bending arm)",
                    "shoulder", ("left_elbow", "left_wrist"), "none", False),
)

DEFINITION_BY_ID = {d.id: d for d in ANGLE_DEFINITIONS}

WRAPPABLE_IDS = tuple(d.id for d in ANGLE_DEFINITIONS if d.wrappable)

assert len(ANGLE_DEFINITIONS) == 26
assert len(set(d.group for d in ANGLE_DEFINITIONS)) == 13


@dataclass(frozen=True)
class AngleSeries:
    definition: AngleDefinition
    values: np.ndarray  # (T,) degrees
    fps: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


def definitions_json() -> str:
    """Machine-readable dump of the angle definition table."""
    rows = [
        {
            "id": d.id,
            "group": d.group,
            "display_phrase": d.display_phrase,
            "parent_frame": d.parent_frame,
            "bone": list(d.bone),
            "plane": d.plane,
            "signed": d.signed,
            "wrappable": d.wrappable,
        }
        for d in ANGLE_DEFINITIONS
    ]
    return json.dumps(rows, indent=2)


# --- vector helpers (arrays of shape (T, 3)) -----------------------------


def _norm(v):
    return np.linalg.norm(v, axis=-1)


def _unit(v):
    return v / _norm(v)[..., None]


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _project_out(v, axis):
    """Remove the component of v along the unit vector(s) axis."""
    return v - _dot(v, axis)[..., None] * axis


def _signed_angle_deg(a, b, axis):
    """Signed angle from a to b about axis (all (T,3)), in degrees."""
    return np.degrees(np.arctan2(_dot(np.cross(a, b), axis), _dot(a, b)))


def up_vector(up_axis: str) -> np.ndarray:
    return np.array([0.0, 1.0, 0.0]) if up_axis == "y" else np.array([0.0, 0.0, 1.0])


def world_axes(up_axis: str):
    """(forward, lateral, up) world directions for the given vertical axis."""
    if up_axis == "y":
        return (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]),
                np.array([0.0, 1.0, 0.0]))
    return (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]),
            np.array([0.0, 0.0, 1.0]))


@dataclass(frozen=True)
class CoordinateFrame:
    """Right-handed orthonormal frame; used for single poses and series."""

    origin: np.ndarray
    e_x: np.ndarray
    e_y: np.ndarray
    e_z: np.ndarray


def body_local_frame(pelvis, left_hip, right_hip, up_hint) -> CoordinateFrame:
    """Root frame from the three pelvic landmarks.

    Accepts single points (3,) or stacked series (T, 3); raises
    DegenerateLandmarks when the landmarks are collinear or coincident.
    """
    pelvis = np.asarray(pelvis, dtype=np.float64)
    left_hip = np.asarray(left_hip, dtype=np.float64)
    right_hip = np.asarray(right_hip, dtype=np.float64)
    up_hint = np.asarray(up_hint, dtype=np.float64)

    hip_line = left_hip - right_hip
    normal = np.cross(left_hip - pelvis, right_hip - pelvis)
    # |normal| is twice the triangle area
    area2 = _norm(normal)
    bad = area2 <= 2 * _EPS_AREA
    if np.any(bad):
        frame = int(np.argmax(bad)) if normal.ndim == 2 else None
        raise DegenerateLandmarks("pelvic landmarks are collinear or coincident",
                                  frame=frame)
    e_x = _unit(hip_line)
    e_z = _unit(normal)
    e_y = np.cross(e_z, e_x)
    flip = _dot(e_y, up_hint) < 0
    sign = np.where(flip, -1.0, 1.0)[..., None]
    e_z = e_z * sign
    e_y = e_y * sign
    return CoordinateFrame(origin=pelvis, e_x=e_x, e_y=e_y, e_z=e_z)


def _frame_from_y(y_dir, fwd_ref, lat_ref):
    """Child frame with its y axis along y_dir and forward from the parent.

    Forward comes from Gram-Schmidt of fwd_ref against y; when the bone is
    parallel to the parent forward, the parent lateral axis disambiguates.
    """
    e_y = _unit(y_dir)
    e_z = _project_out(fwd_ref, e_y)
    nz = _norm(e_z)
    degenerate = nz < _EPS_DIR
    if np.any(degenerate):
        # fall back to building forward from the parent lateral axis
        e_x_alt = _project_out(lat_ref, e_y)
        e_z_alt = np.cross(e_x_alt, e_y)
        e_z = np.where(degenerate[..., None], e_z_alt, e_z)
        nz = _norm(e_z)
    e_z = e_z / nz[..., None]
    e_x = np.cross(e_y, e_z)
    return e_x, e_y, e_z


def _in_frame(v, e_x, e_y, e_z):
    """Coordinates of vector(s) v in the frame spanned by the given axes."""
    return _dot(v, e_x), _dot(v, e_y), _dot(v, e_z)


def _twist_deg(axis_dir, distal_ref, fwd_ref):
    """Signed twist of distal_ref about axis_dir relative to fwd_ref.

    Frames where either projected direction vanishes hold the last defined
    value (0 before the first defined frame).
    """
    axis = _unit(axis_dir)
    ref = _project_out(fwd_ref, axis)
    tgt = _project_out(distal_ref, axis)
    ok = (_norm(ref) >= _EPS_DIR) & (_norm(tgt) >= _EPS_DIR)
    angle = np.zeros(axis.shape[0])
    if np.any(ok):
        angle[ok] = _signed_angle_deg(ref[ok], tgt[ok], axis[ok])
    # forward-fill undefined frames
    if not np.all(ok):
        idx = np.where(ok, np.arange(len(ok)), -1)
        idx = np.maximum.accumulate(idx)
        filled = np.where(idx >= 0, angle[np.maximum(idx, 0)], 0.0)
        angle = np.where(ok, angle, filled)
    return angle


def _unsigned_angle_deg(a, b):
    return np.degrees(np.arctan2(_norm(np.cross(a, b)), _dot(a, b)))


def unwrap(series: AngleSeries) -> AngleSeries:
    """Remove +/-360 deg jumps; the first frame is left unchanged."""
    values = unwrap_degrees(series.values)
    return replace(series, values=values)


def unwrap_degrees(values: np.ndarray) -> np.ndarray:
    return np.unwrap(np.asarray(values, dtype=np.float64), period=360.0)


def heading_degrees(e_z, up_axis: str) -> np.ndarray:
    """Yaw of the body forward direction, unwrapped, positive = left turn."""
    fwd, _, up = world_axes(up_axis)
    left = np.cross(up, fwd)
    yaw = np.degrees(np.arctan2(_dot(e_z, left), _dot(e_z, fwd)))
    return unwrap_degrees(yaw)


def compute_joint_angles(seq: JointSequence) -> list:
    """All 26 angle series for a sequence, in canonical group order."""
    j = seq.joint
    up = up_vector(seq.up_axis)

    body = body_local_frame(j("pelvis"), j("left_hip"), j("right_hip"), up)
    px, py, pz = body.e_x, body.e_y, body.e_z

    out = {}

    # pelvis, against the global frame
    up_row = np.broadcast_to(up, px.shape)
    out["pelvis_tilt"] = np.degrees(np.arctan2(-_dot(pz, up_row), _dot(py, up_row)))
    out["pelvis_list"] = np.degrees(np.arctan2(-_dot(px, up_row), _dot(py, up_row)))
    out["pelvis_rotation"] = heading_degrees(pz, seq.up_axis)

    # lumbar spine, in the pelvis frame
    spine = j("spine3") - j("spine1")
    sx, sy, sz = _in_frame(spine, px, py, pz)
    out["lumbar_extension"] = np.degrees(np.arctan2(sz, sy))
    out["lumbar_lateral"] = np.degrees(np.arctan2(sx, sy))
    lumbar_axis = _unit(spine)
    collar_line = j("left_collar") - j("right_collar")
    # torso twist: collar line against the pelvis lateral axis, about the spine
    out["lumbar_rotation"] = _twist_deg(lumbar_axis, collar_line, px)
    lx, ly, lz = _frame_from_y(spine, pz, px)

    # neck, in the lumbar frame
    neck_v = j("head") - j("neck")
    nx, ny, nz = _in_frame(neck_v, lx, ly, lz)
    out["neck_flexion"] = np.degrees(np.arctan2(nz, ny))
    out["neck_lateral"] = np.degrees(np.arctan2(nx, ny))

    for side, sgn in (("right", -1.0), ("left", 1.0)):
        hip = j(f"{side}_hip")
        knee = j(f"{side}_knee")
        ankle = j(f"{side}_ankle")
        foot = j(f"{side}_foot")
        femur = knee - hip
        tibia = ankle - knee
        fx, fy, fz = _in_frame(femur, px, py, pz)
        out[f"{side}_hip_flexion"] = np.degrees(np.arctan2(fz, -fy))
        # adduction positive toward the midline on both sides
        out[f"{side}_hip_adduction"] = np.degrees(np.arctan2(-sgn * fx, -fy))
        # internal rotation positive on both sides
        raw = _twist_deg(hip - knee, foot - ankle, pz)
        out[f"{side}_hip_rotation"] = unwrap_degrees(-sgn * raw)
        out[f"{side}_knee"] = _unsigned_angle_deg(femur, tibia)
        # ankle in the tibia (knee) frame
        hx, hy, hz = _frame_from_y(hip - knee, pz, px)
        kx, ky, kz = _frame_from_y(knee - ankle, hz, hx)
        ax, ay, az = _in_frame(foot - ankle, kx, ky, kz)
        out[f"{side}_ankle"] = np.degrees(np.arctan2(ay, az))

        shoulder = j(f"{side}_shoulder")
        elbow = j(f"{side}_elbow")
        wrist = j(f"{side}_wrist")
        upper = elbow - shoulder
        ux, uy, uz = _in_frame(upper, lx, ly, lz)
        out[f"{side}_shoulder_flexion"] = np.degrees(np.arctan2(uz, -uy))
        out[f"{side}_shoulder_adduction"] = np.degrees(np.arctan2(-sgn * ux, -uy))
        raw = _twist_deg(shoulder - elbow, wrist - elbow, lz)
        out[f"{side}_shoulder_rotation"] = unwrap_degrees(-sgn * raw)
        out[f"{side}_elbow"] = _unsigned_angle_deg(upper, wrist - elbow)

    out["pelvis_rotation"] = unwrap_degrees(out["pelvis_rotation"])

    return [
        AngleSeries(definition=d, values=out[d.id], fps=seq.fps)
        for d in ANGLE_DEFINITIONS
    ]
