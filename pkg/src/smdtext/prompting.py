"""Prompt construction and loss-masked training-record export.

Prompt wording is an artifact of this package (frozen by golden tests);
reproducing published accuracy numbers may require different instruction
text. Records export as JSONL with keys "task", "prompt", "target" and
"mask_boundary", where the boundary is the character offset at which the
target begins in the prompt+target concatenation.
"""

from __future__ import annotations

import io
import json
import random
from dataclasses import dataclass

from .errors import BadOptions

QA_INSTRUCTION = (
    "You are a motion analysis assistant. Read the structured motion "
    "description below and answer the question about the motion."
)
CAPTION_INSTRUCTION = (
    "You are a motion analysis assistant. Read the structured motion "
    "description below and write a short caption describing the motion."
)

MAX_OPTIONS = 20


@dataclass(frozen=True)
class PromptRecord:
    task: str  # "qa" or "caption"
    prompt_text: str
    target_text: str

    @property
    def mask_boundary(self) -> int:
        return len(self.prompt_text)


def build_qa_prompt(smd: str, question: str, options=None) -> str:
    """QA prompt: instruction, SMD, question, and an optional options block.

    Omitting options yields the open-ended variant.
    """
    if not smd:
        raise BadOptions("smd must be non-empty")
    if not question:
        raise BadOptions("question must be non-empty")
    parts = [QA_INSTRUCTION, "", smd.rstrip("\n"), "", f"Question: {question}"]
    if options is not None:
        _check_options(options)
        parts.append("Options:")
        parts.extend(f"- {opt}" for opt in options)
    return "\n".join(parts) + "\n"


def build_caption_prompt(smd: str) -> str:
    if not smd:
        raise BadOptions("smd must be non-empty")
    return "\n".join([CAPTION_INSTRUCTION, "", smd.rstrip("\n")]) + "\n"


def _check_options(options) -> None:
    if not 2 <= len(options) <= MAX_OPTIONS:
        raise BadOptions(f"need 2..{MAX_OPTIONS} options, got {len(options)}")
    if len(set(options)) != len(options):
        raise BadOptions("duplicate options")
    if any(not opt for opt in options):
        raise BadOptions("empty option text")


def subsample_options(options, answer: str, k: int = 10, seed: int = 0):
    """Reduce an option list to k entries, always keeping the answer.

    Distractors are sampled with the given seed so that exports are
    reproducible; the caller should record the seed alongside the output.
    """
    if answer not in options:
        raise BadOptions("answer must be among the options")
    if len(options) <= k:
        return list(options)
    rng = random.Random(seed)
    distractors = [opt for opt in options if opt != answer]
    chosen = rng.sample(distractors, k - 1) + [answer]
    # keep the original ordering so the answer position carries no signal
    return [opt for opt in options if opt in set(chosen)]


def qa_record(smd: str, question: str, options, answer: str) -> PromptRecord:
    if answer not in options:
        raise BadOptions("answer must be among the options")
    return PromptRecord("qa", build_qa_prompt(smd, question, options), answer)


def caption_record(smd: str, caption: str = "") -> PromptRecord:
    return PromptRecord("caption", build_caption_prompt(smd), caption)


def export_records(records, sink, extra=None) -> None:
    """Write records as UTF-8 JSONL, one object per line, order preserved.

    ``extra`` is an optional dict of additional keys written into every
    record (e.g. a subsampling seed).
    """
    own = False
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        sink = open(sink, "wb")
        own = True
    try:
        for rec in records:
            obj = {
                "task": rec.task,
                "prompt": rec.prompt_text,
                "target": rec.target_text,
                "mask_boundary": rec.mask_boundary,
            }
            if extra:
                obj.update(extra)
            line = json.dumps(obj, ensure_ascii=False) + "\n"
            sink.write(line.encode("utf-8"))
    finally:
        if own:
            sink.close()


def read_records(source):
    """Parse a JSONL export back into PromptRecord objects."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "rb") as f:
            data = f.read()
    else:
        data = source.read()
    records = []
    for line in io.BytesIO(data).read().decode("utf-8").splitlines():
        if not line:
            continue
        obj = json.loads(line)
        records.append(PromptRecord(obj["task"], obj["prompt"], obj["target"]))
    return records
