/** Thin wrapper around the installed `smd` command-line tool. */

import { execFile } from "child_process";
import { mkdtemp, rm, writeFile } from "fs/promises";
import { tmpdir } from "os";
import { join } from "path";

export interface SmdOptions {
  /** "all26" (default) or a top-K selection like "top3". */
  joints?: string;
  trajectory?: "none" | "egocentric" | "absolute";
  deltaDeg?: number;
  smoothWindow?: number;
  posThresholdM?: number;
  yawThresholdDeg?: number;
  cycleConsistency?: number;
}

export const SMD_BIN = process.env.SMD_BIN ?? "smd";

export function configFlags(options: SmdOptions = {}): string[] {
  const flags: string[] = [];
  if (options.joints !== undefined) flags.push("--joints", options.joints);
  if (options.trajectory !== undefined) flags.push("--trajectory", options.trajectory);
  if (options.deltaDeg !== undefined) flags.push("--delta", String(options.deltaDeg));
  if (options.smoothWindow !== undefined) flags.push("--window", String(options.smoothWindow));
  if (options.posThresholdM !== undefined) flags.push("--pos-threshold", String(options.posThresholdM));
  if (options.yawThresholdDeg !== undefined) flags.push("--yaw-threshold", String(options.yawThresholdDeg));
  if (options.cycleConsistency !== undefined) flags.push("--consistency", String(options.cycleConsistency));
  return flags;
}

export function runSmd(args: string[]): Promise<string> {
  return new Promise((resolve, reject) => {
    execFile(
      SMD_BIN,
      args,
      { encoding: "utf-8", maxBuffer: 64 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (error) {
          reject(new Error(stderr.trim() || error.message));
        } else {
          resolve(stdout);
        }
      },
    );
  });
}

/** Run a function with a throwaway scratch directory. */
export async function withScratchDir<T>(
  fn: (dir: string) => Promise<T>,
): Promise<T> {
  const dir = await mkdtemp(join(tmpdir(), "smdtext-"));
  try {
    return await fn(dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

export async function writeScratchFile(
  dir: string,
  name: string,
  data: Buffer | string,
): Promise<string> {
  const path = join(dir, name);
  await writeFile(path, data);
  return path;
}
