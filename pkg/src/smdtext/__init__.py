"""Deterministic conversion of joint-position sequences to structured text."""

from .assembly import (SmdDocument, build_document, convert, estimate_tokens,
                       render_smd, select_top_k)
from .kinematics import (ANGLE_DEFINITIONS, AngleDefinition, AngleSeries,
                         body_local_frame, compute_joint_angles, unwrap)
from .model import (SMPL22, JointSequence, SkeletonLayout, SmdConfig,
                    load_joint_sequence, save_joint_sequence, validate)
from .prompting import (PromptRecord, build_caption_prompt, build_qa_prompt,
                        caption_record, export_records, qa_record,
                        read_records, subsample_options)
from .tempseg import Segment, detect_cycles, segment_extrema, smooth
from .trajectory import (TrajectorySeries, TrajectorySummary,
                         extract_trajectory, segment_trajectory,
                         summarize_trajectory)

__version__ = "0.1.0"
