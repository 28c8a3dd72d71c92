/**
 * taylorvideo-loader: in-process Taylor-video bindings for dataset loaders.
 *
 * `convert_video` turns raw frames into a dense float32 [N][3][H][W]
 * motion tensor, `load_tlv`/`save_tlv` move TLV1 files in and out, and
 * `skeleton_taylor` transforms joint-coordinate sequences. Outputs are
 * bit-identical (at float32) to the Python CLI pipeline on the same
 * input.
 *
 * ```ts
 * import { convert_video, load_tlv } from "taylorvideo-loader";
 *
 * const tensor = convert_video(frames, { block_len: 4, n_terms: 1 });
 * const fromDisk = load_tlv("clip.tlv");
 * ```
 */

export {
  convert_video,
  skeleton_taylor,
  lumaPixel,
  numOutputFrames,
  MAX_TERMS,
  MIN_BLOCK_LEN,
} from "./kernel.js";
export type { BoundArray, SkeletonArray, TaylorOptions, SkeletonOptions, Concept } from "./kernel.js";
export { load_tlv, save_tlv, save_tgry } from "./tlv.js";
export type { TlvFile, TlvMeta } from "./tlv.js";
export {
  BadMagic,
  InsufficientFrames,
  InvalidConfig,
  InvalidInput,
  SequenceTooShort,
  ShapeMismatch,
  TruncatedPayload,
  UnsupportedDtype,
  VideoTooShort,
} from "./errors.js";

/** Mirrors the core package version. */
export const version = "0.1.0";
