"""Command-line surface: convert, prompts, synth, report, angles.

Defaults mirror the library defaults (delta 5 deg, window 7, position
threshold 0.03 m, yaw threshold 15 deg, consistency 0.6, all 26 joints,
absolute trajectory). SMD_LOG controls diagnostic verbosity.
"""

from __future__ import annotations

import concurrent.futures
import glob
import json
import logging
import os
import sys
from pathlib import Path

import click

from . import assembly, fixtures, kinematics, prompting
from .errors import MissingMotion, SmdError, UnknownFixture
from .model import SmdConfig, load_joint_sequence, save_joint_sequence

log = logging.getLogger("smd")


def _setup_logging():
    level = os.environ.get("SMD_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(message)s")


def _config_options(f):
    opts = [
        click.option("--joints", default="all26", show_default=True,
                     help="all26 or topK (e.g. top3)"),
        click.option("--trajectory", default="absolute", show_default=True,
                     type=click.Choice(["none", "egocentric", "absolute"])),
        click.option("--delta", default=5.0, show_default=True,
                     help="minimum angular change in degrees"),
        click.option("--window", default=7, show_default=True,
                     help="smoothing window in frames (odd)"),
        click.option("--pos-threshold", default=0.03, show_default=True,
                     help="trajectory position threshold in meters"),
        click.option("--yaw-threshold", default=15.0, show_default=True,
                     help="yaw threshold in degrees"),
        click.option("--consistency", default=0.6, show_default=True,
                     help="cycle consistency threshold"),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _build_config(joints, trajectory, delta, window, pos_threshold,
                  yaw_threshold, consistency) -> SmdConfig:
    joints = joints.lower()
    if joints == "all26":
        top_k = None
    elif joints.startswith("top"):
        try:
            top_k = int(joints[3:])
        except ValueError:
            raise click.BadParameter(f"bad --joints value {joints!r}")
    else:
        raise click.BadParameter(f"bad --joints value {joints!r}")
    return SmdConfig(
        delta_deg=delta,
        smooth_window=window,
        pos_threshold_m=pos_threshold,
        yaw_threshold_deg=yaw_threshold,
        cycle_consistency=consistency,
        top_k=top_k,
        trajectory_mode=trajectory,
    )


def _expand_inputs(inputs):
    paths = []
    for pattern in inputs:
        hits = sorted(glob.glob(pattern))
        paths.extend(hits if hits else [pattern])
    return paths


def _convert_one(path, format, cfg):
    seq = load_joint_sequence(path, format=format)
    return assembly.convert(seq, cfg)


@click.group()
def main():
    """Convert 3D joint-position motions to structured motion description text."""
    _setup_logging()


@main.command()
@click.option("--input", "inputs", multiple=True, required=True,
              help="input motion file or glob (repeatable)")
@click.option("--output", default=None, help="output file (stdout if omitted)")
@click.option("--format", default="json", show_default=True,
              type=click.Choice(["json", "binary"]))
@click.option("--jobs", default=1, show_default=True, help="parallel workers")
@click.option("--strict", is_flag=True, help="abort the batch on first error")
@_config_options
def convert(inputs, output, format, jobs, strict, **cfg_kwargs):
    """Convert motions to SMD text (single) or JSONL (batch)."""
    cfg = _build_config(**cfg_kwargs)
    paths = _expand_inputs(inputs)

    results = [None] * len(paths)
    errors = []

    def work(i_path):
        i, path = i_path
        return i, _convert_one(path, format, cfg)

    if jobs > 1 and len(paths) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(work, (i, p)): (i, p)
                       for i, p in enumerate(paths)}
            for fut in concurrent.futures.as_completed(futures):
                i, path = futures[fut]
                try:
                    _, results[i] = fut.result()
                except SmdError as e:
                    errors.append((path, str(e)))
                    if strict:
                        for other in futures:
                            other.cancel()
                        break
    else:
        for i, path in enumerate(paths):
            try:
                _, results[i] = work((i, path))
            except SmdError as e:
                errors.append((path, str(e)))
                if strict:
                    break

    for path, msg in errors:
        log.error("%s: %s", path, msg)
        click.echo(f"error: {path}: {msg}", err=True)
    if strict and errors:
        sys.exit(1)

    if len(paths) == 1 and results[0] is not None and (
            output is None or not output.endswith(".jsonl")):
        text = results[0]
        if output:
            Path(output).write_text(text, encoding="utf-8")
        else:
            click.echo(text, nl=False)
    else:
        lines = []
        for path, smd in zip(paths, results):
            if smd is None:
                continue
            lines.append(json.dumps({
                "id": Path(path).stem,
                "smd": smd,
                "token_estimate": assembly.estimate_tokens(smd),
            }, ensure_ascii=False))
        body = "\n".join(lines) + ("\n" if lines else "")
        if output:
            Path(output).write_text(body, encoding="utf-8")
        else:
            click.echo(body, nl=False)
    sys.exit(1 if errors else 0)


@main.command()
@click.option("--input", "inputs", multiple=True, required=True)
@click.option("--output", default=None, help="output JSONL (stdout if omitted)")
@click.option("--format", default="json", show_default=True,
              type=click.Choice(["json", "binary"]))
@click.option("--task", default="qa", show_default=True,
              type=click.Choice(["qa", "caption"]))
@click.option("--questions", default=None,
              help="JSONL of {motion_id, question, options, answer}")
@click.option("--captions", default=None, help="JSONL of {motion_id, caption}")
@click.option("--seed", default=0, show_default=True,
              help="seed for 10-option subsampling")
@_config_options
def prompts(inputs, output, format, task, questions, captions, seed, **cfg_kwargs):
    """Build prompt/target training records joined to motions by id."""
    cfg = _build_config(**cfg_kwargs)
    paths = _expand_inputs(inputs)
    smds = {}
    for path in paths:
        smds[Path(path).stem] = _convert_one(path, format, cfg)

    records = []
    subsampled = False
    if task == "qa":
        if not questions:
            raise click.UsageError("--questions is required for qa task")
        for line in Path(questions).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            q = json.loads(line)
            motion_id = q["motion_id"]
            if motion_id not in smds:
                raise MissingMotion(f"question references unknown motion {motion_id!r}")
            options = q["options"]
            if len(options) > 10:
                options = prompting.subsample_options(options, q["answer"],
                                                      k=10, seed=seed)
                subsampled = True
            records.append(prompting.qa_record(smds[motion_id], q["question"],
                                               options, q["answer"]))
    else:
        caption_by_id = {}
        if captions:
            for line in Path(captions).read_text(encoding="utf-8").splitlines():
                if line.strip():
                    c = json.loads(line)
                    caption_by_id[c["motion_id"]] = c["caption"]
        for path in paths:
            motion_id = Path(path).stem
            records.append(prompting.caption_record(
                smds[motion_id], caption_by_id.get(motion_id, "")))

    extra = {"seed": seed} if subsampled else None
    if output:
        prompting.export_records(records, output, extra=extra)
    else:
        prompting.export_records(records, click.get_binary_stream("stdout"),
                                 extra=extra)


@main.command()
@click.argument("name")
@click.option("--output", required=True, help="output motion file")
@click.option("--format", default="json", show_default=True,
              type=click.Choice(["json", "binary"]))
@click.option("--cycles", default=4, show_default=True, help="gait cycles")
@click.option("--periods", default=4, show_default=True, help="sine periods")
@click.option("--amplitude", default=40.0, show_default=True,
              help="sine amplitude in degrees")
@click.option("--frames", default=60, show_default=True, help="static frames")
@click.option("--angle", default=90.0, show_default=True, help="turn angle")
def synth(name, output, format, cycles, periods, amplitude, frames, angle):
    """Write a deterministic synthetic motion fixture."""
    params = {
        "kick": {},
        "gait": {"cycles": cycles},
        "turn": {"angle_deg": angle},
        "static": {"n_frames": frames},
        "sine-joint": {"amplitude_deg": amplitude, "periods": periods},
    }
    if name not in params:
        raise UnknownFixture(
            f"unknown fixture {name!r}; known: {', '.join(fixtures.FIXTURE_NAMES)}")
    seq = fixtures.make(name, **params[name])
    save_joint_sequence(seq, output, format=format)
    click.echo(f"wrote {output} ({seq.n_frames} frames at {seq.fps:g} fps)")


@main.command()
@click.option("--input", "inputs", multiple=True, required=True)
@click.option("--output-dir", required=True)
@click.option("--format", default="json", show_default=True,
              type=click.Choice(["json", "binary"]))
@_config_options
def report(inputs, output_dir, format, **cfg_kwargs):
    """Render SMD text, a segments CSV, and figures for each motion."""
    from . import plotting, tempseg, trajectory

    cfg = _build_config(**cfg_kwargs)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for path in _expand_inputs(inputs):
        motion_id = Path(path).stem
        seq = load_joint_sequence(path, format=format)
        doc = assembly.build_document(seq, cfg)
        (out / f"{motion_id}.smd.txt").write_text(
            assembly.render_smd(doc, cfg), encoding="utf-8")

        rows = ["motion_id,block,name,kind,t_start,t_end,v_start,v_end,n"]
        for axis, segments in doc.trajectory_blocks:
            for s in segments:
                rows.append(f"{motion_id},trajectory,{axis},{s.kind},"
                            f"{s.t_start:.3f},{s.t_end:.3f},"
                            f"{s.v_start:.4f},{s.v_end:.4f},{s.n or ''}")
        for group, entries in doc.joint_blocks:
            for phrase, segments in entries:
                for s in segments:
                    rows.append(f"{motion_id},joint,\"{phrase}\",{s.kind},"
                                f"{s.t_start:.3f},{s.t_end:.3f},"
                                f"{s.v_start:.4f},{s.v_end:.4f},{s.n or ''}")
        (out / f"{motion_id}.segments.csv").write_text(
            "\n".join(rows) + "\n", encoding="utf-8")

        plotting.plot_joint_angles(seq, cfg, out / f"{motion_id}.angles.png")
        if cfg.trajectory_mode != "none":
            plotting.plot_trajectory(seq, cfg, out / f"{motion_id}.trajectory.png")
        click.echo(f"report written for {motion_id}")


@main.command()
def angles():
    """Print the 26 angle definitions as JSON."""
    click.echo(kinematics.definitions_json())


if __name__ == "__main__":
    main()
