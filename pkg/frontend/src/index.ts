/**
 * TypeScript client for the smd converter. Conversion shells out to the
 * `smd` CLI over the documented binary motion format, so its output is
 * byte-identical to the command line. Prompt templates mirror the
 * converter's frozen wording, guarded by parity tests against `smd prompts`.
 */

import {
  SmdOptions,
  configFlags,
  runSmd,
  withScratchDir,
  writeScratchFile,
} from "./cli";
import { MotionArray, UpAxis, encodeBinary } from "./motion";

export { SmdOptions } from "./cli";
export { MotionArray, UpAxis, encodeBinary, encodeJson, validateShape } from "./motion";

export const QA_INSTRUCTION =
  "You are a motion analysis assistant. Read the structured motion " +
  "description below and answer the question about the motion.";
export const CAPTION_INSTRUCTION =
  "You are a motion analysis assistant. Read the structured motion " +
  "description below and write a short caption describing the motion.";

/** Convert one T x 22 x 3 motion array to SMD text via the CLI. */
export async function convertArray(
  positions: MotionArray,
  fps: number,
  upAxis: UpAxis = "y",
  options: SmdOptions = {},
): Promise<string> {
  const data = encodeBinary(positions, fps, upAxis);
  return withScratchDir(async (dir) => {
    const path = await writeScratchFile(dir, "motion.smd1", data);
    return runSmd([
      "convert",
      "--input",
      path,
      "--format",
      "binary",
      ...configFlags(options),
    ]);
  });
}

export type BatchResult = string | { error: string };

/**
 * Convert many motions; the result preserves input order and holds an
 * error object (not a rejection) for each item that failed.
 */
export async function convertBatch(
  motions: MotionArray[],
  fps: number,
  options: SmdOptions = {},
  parallel = false,
): Promise<BatchResult[]> {
  const one = (m: MotionArray): Promise<BatchResult> =>
    convertArray(m, fps, "y", options).catch((e: Error) => ({
      error: e.message,
    }));
  if (parallel) {
    return Promise.all(motions.map(one));
  }
  const results: BatchResult[] = [];
  for (const m of motions) {
    results.push(await one(m));
  }
  return results;
}

function stripTrailingNewlines(text: string): string {
  return text.replace(/\n+$/, "");
}

/** QA prompt: instruction, SMD, question, optional "- " option lines. */
export function buildQaPrompt(
  smd: string,
  question: string,
  options?: string[],
): string {
  if (!smd) throw new Error("smd must be non-empty");
  if (!question) throw new Error("question must be non-empty");
  const parts = [
    QA_INSTRUCTION,
    "",
    stripTrailingNewlines(smd),
    "",
    `Question: ${question}`,
  ];
  if (options !== undefined) {
    if (options.length < 2 || options.length > 20) {
      throw new Error(`need 2..20 options, got ${options.length}`);
    }
    if (new Set(options).size !== options.length) {
      throw new Error("duplicate options");
    }
    if (options.some((o) => !o)) {
      throw new Error("empty option text");
    }
    parts.push("Options:");
    for (const opt of options) parts.push(`- ${opt}`);
  }
  return parts.join("\n") + "\n";
}

/** Captioning prompt: instruction then the SMD. */
export function buildCaptionPrompt(smd: string): string {
  if (!smd) throw new Error("smd must be non-empty");
  return [CAPTION_INSTRUCTION, "", stripTrailingNewlines(smd)].join("\n") + "\n";
}
