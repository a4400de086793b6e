import re
from pathlib import Path

import numpy as np
import pytest

from smdtext import fixtures
from smdtext.assembly import (_degrees, _meters, _round_half_away, _secs,
                              build_document, convert, estimate_tokens,
                              render_smd, select_top_k)
from smdtext.kinematics import (ANGLE_DEFINITIONS, GROUP_ORDER,
                                compute_joint_angles)
from smdtext.model import JointSequence, SmdConfig

from conftest import random_motion

GOLDEN_DIR = Path(__file__).parent / "goldens"

NUM = r"-?\d+"
SPAN = r"\[\d+\.\ds–\d+\.\ds\]"
JOINT_SEG = (rf"(?:increases {NUM}° → {NUM}° {SPAN}"
             rf"|decreases {NUM}° → {NUM}° {SPAN}"
             rf"|holds at {NUM}° {SPAN}"
             rf"|repeats \d+ cycles {NUM}°–{NUM}° {SPAN})")
TRAJ_VAL = r"-?\d+(?:\.\d\d)?[m°]"
TRAJ_SEG = (rf"(?:(?:rises|lowers|moves forward|moves backward|moves left"
            rf"|moves right|turns left|turns right) {TRAJ_VAL} → {TRAJ_VAL} {SPAN}"
            rf"|holds at {TRAJ_VAL} {SPAN})")
PHRASES = [d.display_phrase for d in ANGLE_DEFINITIONS]

LINE_PATTERNS = [
    r"Motion: \d+\.\ds \(\d+ frames at \d+(?:\.\d+)? FPS\)",
    r"",
    r"Global Trajectory:",
    (r"Overall: displacement \d+\.\d\dm, height change -?\d+\.\d\dm, "
     r"average height -?\d+\.\d\dm"),
    rf"(?:Forward Position|Lateral Position|Height|Body Rotation): {TRAJ_SEG}",
    r"Joint Angles:",
    rf"\[(?:{'|'.join(re.escape(g) for g in GROUP_ORDER)})\]",
    rf"(?:{'|'.join(re.escape(p) for p in PHRASES)}): {JOINT_SEG}(?:, {JOINT_SEG})*",
]


def assert_vocabulary_closed(text):
    for line in text.split("\n")[:-1]:
        assert any(re.fullmatch(p, line) for p in LINE_PATTERNS), \
            f"line outside frozen vocabulary: {line!r}"


# --- goldens -------------------------------------------------------------


@pytest.mark.parametrize("name", ["kick", "gait", "turn", "static"])
def test_fixture_matches_golden(name):
    text = convert(fixtures.make(name), SmdConfig())
    golden = (GOLDEN_DIR / f"{name}.smd.txt").read_text(encoding="utf-8")
    assert text == golden


@pytest.mark.parametrize("name", ["kick", "gait", "turn", "static"])
def test_golden_vocabulary_closed(name):
    assert_vocabulary_closed((GOLDEN_DIR / f"{name}.smd.txt").read_text("utf-8"))


def test_vocabulary_closed_on_random_corpus(rng):
    for _ in range(10):
        assert_vocabulary_closed(convert(random_motion(rng), SmdConfig()))


# --- rendering -----------------------------------------------------------


def test_meta_line_kick():
    text = convert(fixtures.kick(), SmdConfig())
    assert text.startswith("Motion: 5.8s (116 frames at 20 FPS)\n")


def test_kick_hip_line_pattern():
    text = convert(fixtures.kick(), SmdConfig())
    line = next(l for l in text.splitlines()
                if l.startswith("Left Hip Flexion"))
    assert re.fullmatch(
        r"Left Hip Flexion \(raising thigh\): "
        rf"increases {NUM}° → {NUM}° {SPAN}, "
        rf"decreases {NUM}° → {NUM}° {SPAN}, "
        rf"holds at {NUM}° {SPAN}", line)


def test_trajectory_none_omits_block():
    text = convert(fixtures.static(), SmdConfig(trajectory_mode="none"))
    assert "Global Trajectory" not in text
    assert text.startswith("Motion: ")
    assert "Joint Angles:" in text


def test_static_is_all_holds():
    text = convert(fixtures.static(), SmdConfig())
    for line in text.splitlines():
        if ": " in line and not line.startswith(("Motion", "Overall")):
            assert "holds at" in line, line


def test_group_headers_in_canonical_order():
    text = convert(fixtures.static(), SmdConfig())
    headers = [l[1:-1] for l in text.splitlines()
               if l.startswith("[") and l.endswith("]")]
    assert headers == list(GROUP_ORDER)


def test_determinism_byte_identical(rng):
    seq = random_motion(rng)
    assert convert(seq, SmdConfig()) == convert(seq, SmdConfig())


def test_timestamps_ordered_and_in_range(rng):
    seq = random_motion(rng)
    doc = build_document(seq, SmdConfig())
    for _, entries in doc.joint_blocks:
        for _, segments in entries:
            assert segments[0].t_start == 0.0
            assert segments[-1].t_end == pytest.approx(seq.duration)
            for a, b in zip(segments[:-1], segments[1:]):
                assert a.t_end == b.t_start


def test_render_round_trips_segments(rng):
    seq = random_motion(rng)
    cfg = SmdConfig()
    doc = build_document(seq, cfg)
    text = render_smd(doc, cfg)
    by_phrase = {phrase: segments
                 for _, entries in doc.joint_blocks
                 for phrase, segments in entries}
    seg_re = re.compile(
        rf"(increases|decreases|holds at|repeats) (?:(\d+) cycles )?"
        rf"({NUM})°(?: → | at |–)?(?:({NUM})°)? \[(\d+\.\d)s–(\d+\.\d)s\]")
    for line in text.splitlines():
        phrase, _, rest = line.partition(": ")
        if phrase not in by_phrase:
            continue
        parsed = seg_re.findall(rest)
        segments = by_phrase[phrase]
        assert len(parsed) == len(segments)
        for (kind, n, v0, v1, t0, t1), seg in zip(parsed, segments):
            assert kind.startswith(seg.kind[:5])
            assert float(t0) == pytest.approx(seg.t_start, abs=0.051)
            assert float(t1) == pytest.approx(seg.t_end, abs=0.051)
            assert float(v0) == pytest.approx(seg.v_start, abs=0.501)
            if n:
                assert int(n) == seg.n


# --- select_top_k --------------------------------------------------------


def test_top_k_dominant_joint_selected():
    seq = fixtures.sine_joint(amplitude_deg=20.0, periods=1)
    angles = compute_joint_angles(seq)
    picked = {s.definition.id for s in select_top_k(angles, 3)}
    assert "left_hip_flexion" in picked
    assert len(picked) == 3


def test_top_k_identity_at_26(rng):
    angles = compute_joint_angles(random_motion(rng))
    assert select_top_k(angles, 26) == angles


def test_top_k_score_order():
    frames = fixtures.base_frames(40)
    ramp = np.linspace(0.0, 1.0, 40)
    fixtures.apply_leg(frames, "left", 80.0 * ramp)
    fixtures.apply_leg(frames, "right", 50.0 * ramp)
    fixtures.apply_arm(frames, "left", 0.0, 20.0 * ramp)
    seq = JointSequence(frames=frames)
    picked = [s.definition.id for s in
              select_top_k(compute_joint_angles(seq), 2)]
    assert set(picked) == {"left_hip_flexion", "right_hip_flexion"}


def test_top_k_preserves_canonical_order(rng):
    angles = compute_joint_angles(random_motion(rng))
    picked = select_top_k(angles, 7)
    order = [a.definition.id for a in angles]
    indices = [order.index(s.definition.id) for s in picked]
    assert indices == sorted(indices)


def test_monotone_verbosity_in_k(rng):
    seq = random_motion(rng)
    lengths, tokens = [], []
    for k in (3, 5, 10, 20, None):
        text = convert(seq, SmdConfig(top_k=k))
        lengths.append(len(text))
        tokens.append(estimate_tokens(text))
    assert lengths == sorted(lengths)
    assert tokens == sorted(tokens)
    assert lengths[0] < lengths[-1]


# --- estimate_tokens and number formatting -------------------------------


def test_estimate_tokens_empty():
    assert estimate_tokens("") == 0


def test_estimate_tokens_hand_value():
    assert estimate_tokens("ab cd") == 3  # ceil(5/4) + 2 // 2


def test_estimate_tokens_scale_on_smd():
    text = convert(fixtures.kick(), SmdConfig())
    tokens = estimate_tokens(text)
    assert tokens == pytest.approx(len(text.encode()) / 4, rel=0.5)


def test_degree_rounding_half_away_from_zero():
    assert _round_half_away(2.5) == 3
    assert _round_half_away(-2.5) == -3
    assert _degrees(-0.4) == "0°"
    assert _degrees(-67.2) == "-67°"
    assert _degrees(80.5) == "81°"


def test_meter_and_second_formatting():
    assert _meters(1.234) == "1.23m"
    assert _meters(-0.0001) == "0.00m"
    assert _secs(5.75) == "5.8s"
    assert _secs(0.0) == "0.0s"
