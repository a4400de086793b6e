import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

import { runSmd } from "../src/cli";
import { MotionArray } from "../src/motion";

export function makeScratch(): { dir: string; cleanup: () => void } {
  const dir = mkdtempSync(join(tmpdir(), "smdtest-"));
  return { dir, cleanup: () => rmSync(dir, { recursive: true, force: true }) };
}

/** Generate a fixture with `smd synth` and return its frames. */
export async function synthFixture(
  dir: string,
  name: string,
  extraFlags: string[] = [],
): Promise<{ path: string; frames: MotionArray; fps: number }> {
  const path = join(dir, `${name}.json`);
  await runSmd(["synth", name, "--output", path, ...extraFlags]);
  const doc = JSON.parse(readFileSync(path, "utf-8"));
  return { path, frames: doc.frames, fps: doc.fps };
}

/** Deterministic pseudo-random numbers (mulberry32). */
export function makeRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Derive a distinct valid motion: rotate about Y, drift, crop frames. */
export function deriveMotion(
  base: MotionArray,
  rng: () => number,
): MotionArray {
  const t0 = Math.floor(rng() * (base.length - 30));
  const length = 30 + Math.floor(rng() * (base.length - t0 - 30));
  const angle = rng() * 2 * Math.PI;
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  const drift = [rng() * 4 - 2, rng() * 0.2, rng() * 4 - 2];
  const wobble = rng() * 0.3;
  const frames: MotionArray = [];
  for (let i = t0; i < t0 + length; i++) {
    const phase = (i - t0) / length;
    const dz = wobble * Math.sin(2 * Math.PI * phase);
    frames.push(
      base[i].map(([x, y, z]) => [
        c * x + s * z + drift[0] * phase,
        y + drift[1] * phase,
        -s * x + c * z + drift[2] * phase + dz,
      ]),
    );
  }
  return frames;
}

export function writeJsonl(dir: string, name: string, rows: object[]): string {
  const path = join(dir, name);
  writeFileSync(path, rows.map((r) => JSON.stringify(r)).join("\n") + "\n");
  return path;
}
