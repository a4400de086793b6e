/**
 * Motion file encoding for the smd CLI: the SMD1 binary format and the
 * JSON format, as documented by the converter package.
 */

export type UpAxis = "y" | "z";

/** T x 22 x 3 joint positions in meters. */
export type MotionArray = number[][][];

const MAGIC = "SMD1";
const VERSION = 1;
const JOINTS = 22;

export function validateShape(positions: MotionArray): void {
  if (!Array.isArray(positions) || positions.length < 2) {
    throw new Error(
      `expected positions of shape (T, 22, 3) with T >= 2, got T=${positions.length}`,
    );
  }
  for (const frame of positions) {
    if (!Array.isArray(frame) || frame.length !== JOINTS) {
      throw new Error(
        `expected 22 joints per frame, got ${Array.isArray(frame) ? frame.length : typeof frame}`,
      );
    }
    for (const joint of frame) {
      if (!Array.isArray(joint) || joint.length !== 3) {
        throw new Error("expected [x, y, z] per joint");
      }
      for (const v of joint) {
        if (typeof v !== "number" || !Number.isFinite(v)) {
          throw new Error(`non-finite coordinate: ${v}`);
        }
      }
    }
  }
}

/** Encode a motion as an SMD1 binary buffer (little-endian, f32 payload). */
export function encodeBinary(
  positions: MotionArray,
  fps: number,
  upAxis: UpAxis = "y",
): Buffer {
  validateShape(positions);
  const t = positions.length;
  const header = Buffer.alloc(4 + 4 + 4 + 4 + 1 + 4);
  header.write(MAGIC, 0, "ascii");
  header.writeUInt32LE(VERSION, 4);
  header.writeUInt32LE(t, 8);
  header.writeUInt32LE(JOINTS, 12);
  header.writeUInt8(upAxis === "y" ? 0 : 1, 16);
  header.writeFloatLE(fps, 17);

  const body = Buffer.alloc(t * JOINTS * 3 * 4);
  let offset = 0;
  for (const frame of positions) {
    for (const joint of frame) {
      for (const v of joint) {
        body.writeFloatLE(v, offset);
        offset += 4;
      }
    }
  }
  return Buffer.concat([header, body]);
}

/** Encode a motion as the JSON motion document. */
export function encodeJson(
  positions: MotionArray,
  fps: number,
  upAxis: UpAxis = "y",
): string {
  validateShape(positions);
  return JSON.stringify({
    fps,
    layout: "smpl22",
    up_axis: upAxis,
    frames: positions,
  });
}
