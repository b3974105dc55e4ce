/**
 * TypeScript bindings for the fastkassim syntactic-similarity toolkit.
 *
 * The core stays in its own process: every call shells out to the CLI,
 * passing parse trees over files or argv and reading the JSON it prints.
 * Calls are fully asynchronous, so the host event loop stays free while
 * kernels run, and nothing is shared between calls.
 *
 * Errors raised by the core surface as {@link FastkassimCliError} with the
 * core's stable error code (for example "UnbalancedParens" or
 * "EmptyDocument") preserved on `.code`.
 */

import { execFile } from "node:child_process";
import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface ScoreOptions {
  /** Kernel decay factor in (0, 1]; maps to --lambda. Default 0.4. */
  lambda?: number;
  /** 0 counts only full subtrees, 1 also counts subset trees. Default 1. */
  sigma?: 0 | 1;
  /** Document similarity method. Default "fastkassim". */
  method?: "fastkassim" | "cassim";
  /** Kernel-method score denominator. Default "longer_doc". */
  denominator?: "longer_doc" | "pairings";
}

export interface ScoreRecord {
  doc1: string;
  doc2: string;
  method: string;
  score: number;
  pairs: Array<[number, number, number]>;
  config: Record<string, unknown>;
}

/** An error reported by the core CLI, with its stable error code. */
export class FastkassimCliError extends Error {
  readonly code: string;
  readonly exitCode: number;

  constructor(code: string, message: string, exitCode: number) {
    super(message);
    this.name = "FastkassimCliError";
    this.code = code;
    this.exitCode = exitCode;
  }
}

const STDERR_PATTERN = /^fastkassim: (\w+): ([\s\S]*)$/m;

/** The CLI command, overridable via $FASTKASSIM_CLI. */
export function cliCommand(): string[] {
  const override = process.env.FASTKASSIM_CLI;
  if (override && override.trim()) {
    return override.trim().split(/\s+/);
  }
  return ["python3", "-m", "fastkassim.cli"];
}

/** Run the core CLI and return its stdout; core errors become typed. */
export function runCli(args: string[]): Promise<string> {
  const [cmd, ...base] = cliCommand();
  return new Promise((resolve, reject) => {
    execFile(
      cmd,
      [...base, ...args],
      { maxBuffer: 64 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (!error) {
          resolve(stdout);
          return;
        }
        const exitCode = typeof error.code === "number" ? error.code : -1;
        const match = STDERR_PATTERN.exec(stderr);
        if (match) {
          reject(new FastkassimCliError(match[1], match[2].trim(), exitCode));
        } else {
          reject(
            new FastkassimCliError(
              "CliFailure",
              `fastkassim CLI failed (${error.message}): ${stderr.trim()}`,
              exitCode,
            ),
          );
        }
      },
    );
  });
}

function optionFlags(options: ScoreOptions): string[] {
  const flags: string[] = [];
  if (options.lambda !== undefined) flags.push("--lambda", String(options.lambda));
  if (options.sigma !== undefined) flags.push("--sigma", String(options.sigma));
  if (options.method !== undefined) flags.push("--method", options.method);
  if (options.denominator !== undefined)
    flags.push("--denominator", options.denominator);
  return flags;
}

async function withTempDir<T>(body: (dir: string) => Promise<T>): Promise<T> {
  const dir = await mkdtemp(join(tmpdir(), "fastkassim-"));
  try {
    return await body(dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}

function treeFile(trees: string[]): string {
  return trees.map((t) => t + "\n").join("");
}

/** Full scoring record for two documents given as bracketed tree texts. */
export async function scoreRecord(
  doc1: string[],
  doc2: string[],
  options: ScoreOptions = {},
): Promise<ScoreRecord> {
  return withTempDir(async (dir) => {
    const f1 = join(dir, "doc1.trees");
    const f2 = join(dir, "doc2.trees");
    await writeFile(f1, treeFile(doc1), "utf-8");
    await writeFile(f2, treeFile(doc2), "utf-8");
    const stdout = await runCli(["score", ...optionFlags(options), f1, f2]);
    return JSON.parse(stdout) as ScoreRecord;
  });
}

/** Document similarity in [0, 1]; equals the CLI's score bit for bit. */
export async function score(
  doc1: string[],
  doc2: string[],
  options: ScoreOptions = {},
): Promise<number> {
  return (await scoreRecord(doc1, doc2, options)).score;
}

/** Normalized tree kernel between two single sentences. */
export async function ltk(
  tree1: string,
  tree2: string,
  lambda?: number,
  sigma?: 0 | 1,
): Promise<number> {
  const stdout = await runCli([
    "score",
    ...optionFlags({ lambda, sigma }),
    tree1,
    tree2,
  ]);
  return (JSON.parse(stdout) as ScoreRecord).score;
}

/**
 * Syntax feature vector: [min, max, mean, population std] of the target's
 * similarity against a seeded sample of each reference set, concatenated.
 * Each reference set is an array of documents, each an array of tree texts.
 */
export async function features(
  target: string[],
  referenceSets: string[][][],
  sampleSize: number,
  seed: number,
  options: ScoreOptions = {},
): Promise<number[]> {
  return withTempDir(async (dir) => {
    const targetFile = join(dir, "target.trees");
    await writeFile(targetFile, treeFile(target), "utf-8");
    const refFiles: string[] = [];
    for (let s = 0; s < referenceSets.length; s++) {
      const lines = referenceSets[s].map((trees, d) =>
        JSON.stringify({ id: `set${s}-doc${d}`, trees }),
      );
      const path = join(dir, `refs${s}.jsonl`);
      await writeFile(path, lines.map((l) => l + "\n").join(""), "utf-8");
      refFiles.push(path);
    }
    const stdout = await runCli([
      "features",
      targetFile,
      ...refFiles,
      "--sample-size",
      String(sampleSize),
      "--seed",
      String(seed),
      ...optionFlags(options),
    ]);
    return (JSON.parse(stdout) as { features: number[] }).features;
  });
}
