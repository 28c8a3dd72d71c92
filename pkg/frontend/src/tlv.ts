/**
 * TLV1 / TGRY container support (little-endian, matching the CLI's files).
 *
 * TLV1: magic "TLV1"; u32 height, width, channels, frames; u8 dtype
 * (0 = float32 LE); u8 flags (bit 0 = gray-augmented); u16 reserved;
 * u32 block_len, n_terms, step; float32 payload in
 * [frame][channel][row][col] order.
 *
 * TGRY: magic "TGRY"; u32 height, width, frames; u8 dtype (0 = u8,
 * 1 = float32 LE); frame-major row-major payload.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { BadMagic, TruncatedPayload, UnsupportedDtype } from "./errors.js";

const TLV_MAGIC = "TLV1";
const TGRY_MAGIC = "TGRY";
const TLV_HEADER_BYTES = 36;
const TGRY_HEADER_BYTES = 17;

export interface TlvMeta {
  block_len: number;
  n_terms: number;
  step: number;
  gray_augment: boolean;
}

export interface TlvFile {
  data: Float32Array;
  shape: [number, number, number, number];
  meta: TlvMeta;
}

function magicOf(view: DataView): string {
  return String.fromCharCode(
    view.getUint8(0),
    view.getUint8(1),
    view.getUint8(2),
    view.getUint8(3),
  );
}

export function load_tlv(path: string): TlvFile {
  const raw = readFileSync(path);
  if (raw.byteLength < TLV_HEADER_BYTES) {
    throw new TruncatedPayload(
      `TLV1 header: expected ${TLV_HEADER_BYTES} bytes, got ${raw.byteLength}`,
    );
  }
  const view = new DataView(raw.buffer, raw.byteOffset, raw.byteLength);
  const magic = magicOf(view);
  if (magic !== TLV_MAGIC) {
    throw new BadMagic(`expected magic ${TLV_MAGIC}, got ${JSON.stringify(magic)}`);
  }
  const height = view.getUint32(4, true);
  const width = view.getUint32(8, true);
  const channels = view.getUint32(12, true);
  const frames = view.getUint32(16, true);
  const dtype = view.getUint8(20);
  const flags = view.getUint8(21);
  const blockLen = view.getUint32(24, true);
  const nTerms = view.getUint32(28, true);
  const step = view.getUint32(32, true);
  if (dtype !== 0) {
    throw new UnsupportedDtype(`TLV1 dtype code ${dtype} not supported`);
  }
  const count = frames * channels * height * width;
  if (raw.byteLength < TLV_HEADER_BYTES + count * 4) {
    throw new TruncatedPayload(
      `TLV1 payload: expected ${count * 4} bytes, got ${raw.byteLength - TLV_HEADER_BYTES}`,
    );
  }
  const data = new Float32Array(count);
  for (let i = 0; i < count; i++) {
    data[i] = view.getFloat32(TLV_HEADER_BYTES + i * 4, true);
  }
  return {
    data,
    shape: [frames, channels, height, width],
    meta: {
      block_len: blockLen,
      n_terms: nTerms,
      step,
      gray_augment: (flags & 1) === 1,
    },
  };
}

export function save_tlv(
  path: string,
  data: Float32Array,
  shape: [number, number, number, number],
  meta: TlvMeta,
): void {
  const [frames, channels, height, width] = shape;
  const count = frames * channels * height * width;
  if (data.length !== count) {
    throw new TruncatedPayload(`payload has ${data.length} values, shape needs ${count}`);
  }
  const buffer = new ArrayBuffer(TLV_HEADER_BYTES + count * 4);
  const view = new DataView(buffer);
  for (let i = 0; i < 4; i++) view.setUint8(i, TLV_MAGIC.charCodeAt(i));
  view.setUint32(4, height, true);
  view.setUint32(8, width, true);
  view.setUint32(12, channels, true);
  view.setUint32(16, frames, true);
  view.setUint8(20, 0);
  view.setUint8(21, meta.gray_augment ? 1 : 0);
  view.setUint16(22, 0, true);
  view.setUint32(24, meta.block_len, true);
  view.setUint32(28, meta.n_terms, true);
  view.setUint32(32, meta.step, true);
  for (let i = 0; i < count; i++) {
    view.setFloat32(TLV_HEADER_BYTES + i * 4, data[i], true);
  }
  writeFileSync(path, new Uint8Array(buffer));
}

/** Write a TGRY raw-gray stream; values as u8 bytes or float32. */
export function save_tgry(
  path: string,
  frames: number,
  height: number,
  width: number,
  payload: Uint8Array | Float32Array,
): void {
  const count = frames * height * width;
  if (payload.length !== count) {
    throw new TruncatedPayload(`payload has ${payload.length} samples, shape needs ${count}`);
  }
  const isU8 = payload instanceof Uint8Array;
  const buffer = new ArrayBuffer(TGRY_HEADER_BYTES + count * (isU8 ? 1 : 4));
  const view = new DataView(buffer);
  for (let i = 0; i < 4; i++) view.setUint8(i, TGRY_MAGIC.charCodeAt(i));
  view.setUint32(4, height, true);
  view.setUint32(8, width, true);
  view.setUint32(12, frames, true);
  view.setUint8(16, isU8 ? 0 : 1);
  if (isU8) {
    for (let i = 0; i < count; i++) view.setUint8(TGRY_HEADER_BYTES + i, payload[i]);
  } else {
    for (let i = 0; i < count; i++) {
      view.setFloat32(TGRY_HEADER_BYTES + i * 4, payload[i], true);
    }
  }
  writeFileSync(path, new Uint8Array(buffer));
}
