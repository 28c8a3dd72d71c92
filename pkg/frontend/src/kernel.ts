/**
 * The fast Taylor-frame kernel, ported with a pinned operation order.
 *
 * All math runs in float64 and mirrors the core pipeline exactly: forward
 * differences first frame by frame, then per term a running Hadamard
 * power, a left-to-right mean over the block's frames, and per-channel
 * `diff[k + offset] / k! * meanPower` accumulation in term order.
 * Factorials come from exact BigInt products converted once. Because
 * every float64 operation is IEEE-defined and the order matches, results
 * agree with the CLI bit for bit after the final float32 downcast.
 */

import {
  InsufficientFrames,
  InvalidConfig,
  InvalidInput,
  SequenceTooShort,
  ShapeMismatch,
  VideoTooShort,
} from "./errors.js";

export const MAX_TERMS = 20;
export const MIN_BLOCK_LEN = 4;

export interface TaylorOptions {
  block_len?: number;
  n_terms?: number;
  step?: number;
  gray_augment?: boolean;
}

export interface BoundArray {
  /** Contiguous float32 buffer in [frame][channel][row][col] order. */
  data: Float32Array;
  shape: [number, number, number, number];
}

const FACTORIALS: number[] = (() => {
  const out = [1];
  let acc = 1n;
  for (let k = 1; k <= MAX_TERMS + 2; k++) {
    acc *= BigInt(k);
    out.push(Number(acc));
  }
  return out;
})();

export function resolveOptions(options: TaylorOptions = {}): Required<TaylorOptions> {
  const resolved = {
    block_len: options.block_len ?? 4,
    n_terms: options.n_terms ?? 1,
    step: options.step ?? 1,
    gray_augment: options.gray_augment ?? false,
  };
  if (!Number.isInteger(resolved.step) || resolved.step < 1) {
    throw new InvalidConfig(`step must be at least 1 (got ${resolved.step})`);
  }
  if (!Number.isInteger(resolved.n_terms) || resolved.n_terms < 1) {
    throw new InvalidConfig(`terms must be at least 1 (got ${resolved.n_terms})`);
  }
  if (resolved.n_terms > MAX_TERMS) {
    throw new InvalidConfig(`terms capped at ${MAX_TERMS} (got ${resolved.n_terms})`);
  }
  if (!Number.isInteger(resolved.block_len) || resolved.block_len < MIN_BLOCK_LEN) {
    throw new InvalidConfig(
      `window must be at least ${MIN_BLOCK_LEN} frames (got ${resolved.block_len})`,
    );
  }
  if (resolved.block_len < resolved.n_terms + 3) {
    const limit = resolved.block_len - 3;
    throw new InvalidConfig(
      `window ${resolved.block_len} supports at most ${limit} ` +
        `term${limit === 1 ? "" : "s"} (got ${resolved.n_terms})`,
    );
  }
  return resolved;
}

export function numOutputFrames(total: number, blockLen: number, step: number): number {
  return Math.floor((total - blockLen) / step) + 1;
}

/** First map of each difference order 1..nTerms+2, flattened per frame. */
function differenceStack(frames: Float64Array[], nTerms: number): Float64Array[] {
  const orders = nTerms + 2;
  if (frames.length < nTerms + 3) {
    throw new InsufficientFrames(
      `block of ${frames.length} frames cannot supply difference order ${orders}; ` +
        `need at least ${nTerms + 3} frames for ${nTerms} term${nTerms === 1 ? "" : "s"}`,
    );
  }
  const pixels = frames[0].length;
  const stack: Float64Array[] = [];
  let current = frames;
  for (let j = 0; j < orders; j++) {
    const next: Float64Array[] = [];
    for (let t = 0; t < current.length - 1; t++) {
      const diff = new Float64Array(pixels);
      for (let i = 0; i < pixels; i++) diff[i] = current[t + 1][i] - current[t][i];
      next.push(diff);
    }
    stack.push(next[0]);
    current = next;
  }
  return stack;
}

function meanOverFrames(stack: Float64Array[]): Float64Array {
  const pixels = stack[0].length;
  const acc = stack[0].slice();
  for (let t = 1; t < stack.length; t++) {
    for (let i = 0; i < pixels; i++) acc[i] += stack[t][i];
  }
  for (let i = 0; i < pixels; i++) acc[i] /= stack.length;
  return acc;
}

/** One (3, pixels) float64 Taylor frame from a block of flat gray frames. */
export function taylorFrame(frames: Float64Array[], nTerms: number): Float64Array[] {
  const diffs = differenceStack(frames, nTerms);
  const pixels = frames[0].length;
  const first = frames[0];
  const deltas = frames.map((frame) => {
    const delta = new Float64Array(pixels);
    for (let i = 0; i < pixels; i++) delta[i] = frame[i] - first[i];
    return delta;
  });
  const out = [new Float64Array(pixels), new Float64Array(pixels), new Float64Array(pixels)];
  let powers: Float64Array[] | null = null;
  for (let k = 0; k < nTerms; k++) {
    let meanPower: Float64Array | null = null; // null stands for the all-ones k=0 power
    if (k > 0) {
      if (powers === null) {
        powers = deltas.map((delta) => delta.slice());
      } else {
        for (let t = 0; t < powers.length; t++) {
          for (let i = 0; i < pixels; i++) powers[t][i] *= deltas[t][i];
        }
      }
      meanPower = meanOverFrames(powers);
    }
    const fact = FACTORIALS[k];
    for (let channel = 0; channel < 3; channel++) {
      const diff = diffs[k + channel];
      const target = out[channel];
      if (meanPower === null) {
        for (let i = 0; i < pixels; i++) target[i] += (diff[i] / fact) * 1.0;
      } else {
        for (let i = 0; i < pixels; i++) target[i] += (diff[i] / fact) * meanPower[i];
      }
    }
  }
  return out;
}

type Gray3d = ArrayLike<ArrayLike<ArrayLike<number>>>;
type Rgb4d = ArrayLike<ArrayLike<ArrayLike<ArrayLike<number>>>>;

/** BT.601 luma, evaluated so R == G == B passes through exactly. */
export function lumaPixel(r: number, g: number, b: number): number {
  return b + 0.299 * (r - b) + 0.587 * (g - b);
}

function flattenFrames(frames: Gray3d | Rgb4d): {
  flat: Float64Array[];
  height: number;
  width: number;
} {
  const total = frames.length;
  if (total < 1) throw new ShapeMismatch("video must contain at least one frame");
  const firstRow = frames[0][0] as ArrayLike<number> | ArrayLike<ArrayLike<number>>;
  const height = frames[0].length;
  const width = firstRow.length;
  const rgb = typeof (firstRow as ArrayLike<ArrayLike<number>>)[0] === "object";
  const flat: Float64Array[] = [];
  for (let t = 0; t < total; t++) {
    const frame = new Float64Array(height * width);
    for (let y = 0; y < height; y++) {
      const row = frames[t][y];
      if (row.length !== width) {
        throw new ShapeMismatch(`frame ${t} row ${y} has ${row.length} values, expected ${width}`);
      }
      for (let x = 0; x < width; x++) {
        if (rgb) {
          const px = (row as ArrayLike<ArrayLike<number>>)[x];
          frame[y * width + x] = lumaPixel(px[0], px[1], px[2]);
        } else {
          frame[y * width + x] = (row as ArrayLike<number>)[x];
        }
      }
    }
    flat.push(frame);
  }
  return { flat, height, width };
}

/**
 * Transform grayscale `[T][H][W]` (or RGB `[T][H][W][3]`) frames into a
 * Taylor video: a float32 `[N][3][H][W]` tensor matching what the CLI
 * writes into a TLV1 payload, bit for bit.
 */
export function convert_video(frames: Gray3d | Rgb4d, options: TaylorOptions = {}): BoundArray {
  const opts = resolveOptions(options);
  const { flat, height, width } = flattenFrames(frames);
  for (const frame of flat) {
    for (let i = 0; i < frame.length; i++) {
      const v = frame[i];
      if (!Number.isFinite(v)) throw new InvalidInput("video contains non-finite values");
      if (v < 0 || v > 1) {
        throw new InvalidInput(`grayscale values must lie in [0, 1], got ${v}`);
      }
    }
  }
  if (flat.length < opts.block_len) {
    throw new VideoTooShort(
      `video has ${flat.length} frame${flat.length === 1 ? "" : "s"} but the window ` +
        `needs ${opts.block_len}`,
    );
  }
  const pixels = height * width;
  const n = numOutputFrames(flat.length, opts.block_len, opts.step);
  const data = new Float32Array(n * 3 * pixels);
  for (let blockIndex = 0; blockIndex < n; blockIndex++) {
    const start = blockIndex * opts.step;
    const block = flat.slice(start, start + opts.block_len);
    const channels = taylorFrame(block, opts.n_terms);
    for (let channel = 0; channel < 3; channel++) {
      const map = channels[channel];
      const base = (blockIndex * 3 + channel) * pixels;
      if (opts.gray_augment) {
        const gray = block[0];
        for (let i = 0; i < pixels; i++) data[base + i] = Math.fround(map[i] + gray[i]);
      } else {
        for (let i = 0; i < pixels; i++) data[base + i] = Math.fround(map[i]);
      }
    }
  }
  return { data, shape: [n, 3, height, width] };
}

export interface SkeletonArray {
  /** Float32 displacement (or other concept) values, [frame][joint][axis]. */
  data: Float32Array;
  shape: [number, number, number];
}

const CONCEPTS = ["displacement", "velocity", "acceleration"] as const;
export type Concept = (typeof CONCEPTS)[number];

export interface SkeletonOptions extends TaylorOptions {
  concept?: Concept;
}

/**
 * Taylor-transform a `[T][J][C]` coordinate sequence; coordinates are
 * consumed raw, exactly as the CLI's skeleton path does.
 */
export function skeleton_taylor(coords: Gray3d, options: SkeletonOptions = {}): SkeletonArray {
  const concept = options.concept ?? "displacement";
  const channel = CONCEPTS.indexOf(concept);
  if (channel < 0) {
    throw new InvalidInput(`concept must be one of ${CONCEPTS.join(", ")}, got ${concept}`);
  }
  const opts = resolveOptions(options);
  const { flat, height: joints, width: axes } = flattenFrames(coords);
  if (flat.length < opts.block_len) {
    throw new SequenceTooShort(
      `sequence has ${flat.length} frame${flat.length === 1 ? "" : "s"} but the ` +
        `window needs ${opts.block_len}`,
    );
  }
  const pixels = joints * axes;
  const n = numOutputFrames(flat.length, opts.block_len, opts.step);
  const data = new Float32Array(n * pixels);
  for (let blockIndex = 0; blockIndex < n; blockIndex++) {
    const start = blockIndex * opts.step;
    const block = flat.slice(start, start + opts.block_len);
    const map = taylorFrame(block, opts.n_terms)[channel];
    for (let i = 0; i < pixels; i++) data[blockIndex * pixels + i] = Math.fround(map[i]);
  }
  return { data, shape: [n, joints, axes] };
}
