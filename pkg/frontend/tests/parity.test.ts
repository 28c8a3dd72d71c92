/**
 * Cross-implementation parity: everything here drives the Python CLI
 * through its public surfaces (TGRY/CSV in, TLV1 out) and checks that the
 * in-process kernel reproduces the CLI's float32 payloads bit for bit.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import {
  convert_video,
  load_tlv,
  save_tgry,
  skeleton_taylor,
} from "../src/index.js";

function runCli(args: string[]): void {
  const result = spawnSync("python3", ["-m", "taylorvideo", ...args], {
    encoding: "utf8",
  });
  if (result.status !== 0) {
    throw new Error(
      `CLI failed (${result.status}): ${result.stderr || result.stdout}`,
    );
  }
}

/** Deterministic 32-bit generator so fixtures match across runs. */
function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

function expectBitEqual(actual: Float32Array, expected: Float32Array): void {
  expect(actual.length).toBe(expected.length);
  for (let i = 0; i < actual.length; i++) {
    if (!Object.is(actual[i], expected[i])) {
      expect.fail(`payload differs at ${i}: ${actual[i]} vs ${expected[i]}`);
    }
  }
}

let workDir: string;

beforeAll(() => {
  workDir = mkdtempSync(join(tmpdir(), "taylor-parity-"));
  const probe = spawnSync("python3", ["-m", "taylorvideo", "--version"]);
  if (probe.status !== 0) {
    throw new Error("python3 -m taylorvideo is not runnable; install the core package");
  }
});

function u8Fixture(frames: number, height: number, width: number, seed: number) {
  const next = lcg(seed);
  const bytes = new Uint8Array(frames * height * width);
  for (let i = 0; i < bytes.length; i++) bytes[i] = Math.floor(next() * 256);
  const nested = Array.from({ length: frames }, (_, t) =>
    Array.from({ length: height }, (_, y) =>
      Array.from({ length: width }, (_, x) => bytes[(t * height + y) * width + x] / 255.0),
    ),
  );
  return { bytes, nested };
}

describe("convert_video parity with the CLI", () => {
  it.each([
    { name: "window 5, 2 terms", window: 5, terms: 2, step: 1, gray: false },
    { name: "minimal window", window: 4, terms: 1, step: 1, gray: false },
    { name: "step 2", window: 5, terms: 2, step: 2, gray: false },
    { name: "gray-augmented", window: 5, terms: 2, step: 1, gray: true },
  ])("matches TLV1 payload bits: $name", ({ window, terms, step, gray }) => {
    const { bytes, nested } = u8Fixture(12, 9, 7, 0xbeef);
    const tgry = join(workDir, `in-${window}-${terms}-${step}-${gray}.tgry`);
    const tlv = join(workDir, `out-${window}-${terms}-${step}-${gray}.tlv`);
    save_tgry(tgry, 12, 9, 7, bytes);
    const args = [
      "convert", "--input", tgry, "--window", String(window), "--terms",
      String(terms), "--step", String(step), "--output", tlv,
    ];
    if (gray) args.push("--gray-augment");
    runCli(args);

    const fromCli = load_tlv(tlv);
    const local = convert_video(nested, {
      block_len: window,
      n_terms: terms,
      step,
      gray_augment: gray,
    });
    expect(fromCli.shape).toEqual(local.shape);
    expect(fromCli.meta.gray_augment).toBe(gray);
    expectBitEqual(local.data, fromCli.data);
  });

  it("matches on float32 TGRY input", () => {
    const next = lcg(0x5eed);
    const samples = new Float32Array(10 * 6 * 5);
    for (let i = 0; i < samples.length; i++) samples[i] = Math.fround(next());
    const nested = Array.from({ length: 10 }, (_, t) =>
      Array.from({ length: 6 }, (_, y) =>
        Array.from({ length: 5 }, (_, x) => samples[(t * 6 + y) * 5 + x]),
      ),
    );
    const tgry = join(workDir, "float.tgry");
    const tlv = join(workDir, "float.tlv");
    save_tgry(tgry, 10, 6, 5, samples);
    runCli(["convert", "--input", tgry, "--window", "6", "--terms", "3", "--output", tlv]);
    const local = convert_video(nested, { block_len: 6, n_terms: 3 });
    expectBitEqual(local.data, load_tlv(tlv).data);
  });

  it("matches regardless of CLI thread count", () => {
    const { bytes, nested } = u8Fixture(16, 5, 5, 0xcafe);
    const tgry = join(workDir, "threads.tgry");
    save_tgry(tgry, 16, 5, 5, bytes);
    const local = convert_video(nested, { block_len: 4, n_terms: 1 });
    for (const threads of ["1", "4"]) {
      const tlv = join(workDir, `threads-${threads}.tlv`);
      runCli([
        "convert", "--input", tgry, "--window", "4", "--terms", "1",
        "--threads", threads, "--output", tlv,
      ]);
      expectBitEqual(local.data, load_tlv(tlv).data);
    }
  });
});

describe("skeleton parity with the CLI", () => {
  it("matches the skeleton TLV payload bits", () => {
    const frames = 11;
    const joints = 4;
    const axes = 3;
    const next = lcg(0xfeed);
    const coords = Array.from({ length: frames }, () =>
      Array.from({ length: joints }, () =>
        Array.from({ length: axes }, () => next() * 10 - 5),
      ),
    );
    const lines = [`J=${joints},C=${axes}`];
    for (const frame of coords) {
      lines.push(frame.flat().map((v) => String(v)).join(","));
    }
    const csv = join(workDir, "skel.csv");
    const tlv = join(workDir, "skel.tlv");
    writeFileSync(csv, lines.join("\n") + "\n");
    runCli(["skeleton", "--input", csv, "--output", tlv]);

    const fromCli = load_tlv(tlv);
    expect(fromCli.shape).toEqual([frames - 3, 1, joints, axes]);
    const local = skeleton_taylor(coords);
    expect(local.shape).toEqual([frames - 3, joints, axes]);
    expectBitEqual(local.data, fromCli.data);
  });
});
