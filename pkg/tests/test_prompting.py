import io
import json

import pytest

from smdtext import fixtures
from smdtext.assembly import convert
from smdtext.errors import BadOptions
from smdtext.model import SmdConfig
from smdtext.prompting import (CAPTION_INSTRUCTION, QA_INSTRUCTION,
                               build_caption_prompt, build_qa_prompt,
                               caption_record, export_records, qa_record,
                               read_records, subsample_options)

SMD = convert(fixtures.static(), SmdConfig())
OPTIONS = [f"option {i}" for i in range(10)]
QUESTION = "What body part does the person use?"


def test_qa_prompt_component_order():
    prompt = build_qa_prompt(SMD, QUESTION, OPTIONS)
    positions = [prompt.index(QA_INSTRUCTION), prompt.index(SMD.rstrip("\n")),
                 prompt.index(f"Question: {QUESTION}"), prompt.index("Options:")]
    assert positions == sorted(positions)
    for opt in OPTIONS:
        assert f"\n- {opt}\n" in prompt


def test_qa_prompt_contains_smd_verbatim():
    assert SMD.rstrip("\n") in build_qa_prompt(SMD, QUESTION, OPTIONS)


def test_qa_open_ended_mode():
    prompt = build_qa_prompt(SMD, QUESTION)
    assert "Options:" not in prompt
    assert f"Question: {QUESTION}" in prompt


@pytest.mark.parametrize("options", [
    [],
    ["only one"],
    ["dup", "dup"],
    ["a", ""],
    [f"o{i}" for i in range(21)],
])
def test_qa_bad_options(options):
    with pytest.raises(BadOptions):
        build_qa_prompt(SMD, QUESTION, options)


def test_caption_prompt_structure():
    prompt = build_caption_prompt(SMD)
    assert prompt == CAPTION_INSTRUCTION + "\n\n" + SMD.rstrip("\n") + "\n"


def test_caption_empty_smd_rejected():
    with pytest.raises(BadOptions):
        build_caption_prompt("")


def test_prompts_deterministic():
    assert build_caption_prompt(SMD) == build_caption_prompt(SMD)
    assert build_qa_prompt(SMD, QUESTION, OPTIONS) == \
        build_qa_prompt(SMD, QUESTION, OPTIONS)


def test_prompt_injective_in_inputs():
    prompts = {
        build_qa_prompt(SMD, QUESTION, OPTIONS),
        build_qa_prompt(SMD, "Another question?", OPTIONS),
        build_qa_prompt(SMD, QUESTION, OPTIONS[:5]),
        build_qa_prompt(SMD + "extra line\n", QUESTION, OPTIONS),
    }
    assert len(prompts) == 4


def test_mask_boundary_is_prompt_length():
    rec = qa_record(SMD, QUESTION, OPTIONS, OPTIONS[3])
    assert rec.mask_boundary == len(rec.prompt_text)
    assert rec.target_text == OPTIONS[3]


def test_qa_record_answer_must_be_option():
    with pytest.raises(BadOptions):
        qa_record(SMD, QUESTION, OPTIONS, "not an option")


def test_export_jsonl_shape():
    sink = io.BytesIO()
    export_records([qa_record(SMD, QUESTION, OPTIONS, OPTIONS[0])], sink)
    lines = sink.getvalue().decode("utf-8").splitlines()
    assert len(lines) == 1
    obj = json.loads(lines[0])
    assert set(obj) == {"task", "prompt", "target", "mask_boundary"}
    assert obj["mask_boundary"] == len(obj["prompt"])


def test_export_round_trip(tmp_path):
    records = [
        qa_record(SMD, QUESTION, OPTIONS, OPTIONS[7]),
        caption_record(SMD, "a person stands still"),
    ]
    path = tmp_path / "records.jsonl"
    export_records(records, path)
    assert read_records(path) == records


def test_export_extra_keys(tmp_path):
    path = tmp_path / "records.jsonl"
    export_records([caption_record(SMD)], path, extra={"seed": 7})
    obj = json.loads(path.read_text(encoding="utf-8"))
    assert obj["seed"] == 7


def test_subsample_keeps_answer_and_order():
    options = [f"o{i}" for i in range(25)]
    out = subsample_options(options, "o13", k=10, seed=5)
    assert len(out) == 10
    assert "o13" in out
    assert out == [o for o in options if o in set(out)]


def test_subsample_deterministic_per_seed():
    options = [f"o{i}" for i in range(25)]
    assert subsample_options(options, "o3", seed=1) == \
        subsample_options(options, "o3", seed=1)
    assert subsample_options(options, "o3", seed=1) != \
        subsample_options(options, "o3", seed=2)


def test_subsample_small_list_untouched():
    assert subsample_options(OPTIONS, OPTIONS[0]) == OPTIONS


def test_subsample_answer_not_in_options():
    with pytest.raises(BadOptions):
        subsample_options(OPTIONS, "missing")
